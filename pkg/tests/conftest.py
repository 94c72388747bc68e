def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(mod.VERDICTS):
        lines = mod.VERDICTS[number]
        status = "PASS" if all(ok for ok, _ in lines) else "FAIL"
        tr.write_line(f"criterion {number}: {status} | " + " | ".join(text for _, text in lines))
