"""Young diagrams, standard tableaux, standard schemes and formal tensors.

A tableau's box holding ``k`` marks word position ``k``; a scheme's box holds a
letter in ``1..R``.  Placing a scheme into a tableau gives a word, and the
Young symmetrizer of the tableau turns that word into a :class:`FormalTensor`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .exactalg import GaussianRational, ONE, exact_rank, same_span
from .report import Report

Word = tuple[int, ...]
MAX_N = 12


class YoungDiagram(tuple):
    """Weakly decreasing tuple of positive row lengths."""

    def __new__(cls, rows: Iterable[int]):
        rows = tuple(int(r) for r in rows)
        if not rows:
            raise ValueError("a diagram needs at least one box")
        if any(r <= 0 for r in rows):
            raise ValueError("row lengths must be positive")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must not increase downward: {rows}")
        return super().__new__(cls, rows)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def boxes(self) -> list[tuple[int, int]]:
        return [(i, j) for i, length in enumerate(self) for j in range(length)]

    def column_lengths(self) -> list[int]:
        return [sum(1 for r in self if r > j) for j in range(self[0])]

    def __repr__(self):
        return f"YoungDiagram{tuple(self)}"


Filling = tuple[tuple[int, ...], ...]


def enumerate_diagrams(n: int) -> list[YoungDiagram]:
    """All partitions of n, lexicographically decreasing."""
    if not (1 <= n <= MAX_N):
        raise ValueError(f"n must lie in 1..{MAX_N}")
    out: list[YoungDiagram] = []

    def rec(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            out.append(YoungDiagram(prefix))
            return
        for first in range(min(remaining, cap), 0, -1):
            rec(remaining - first, first, prefix + [first])

    rec(n, n, [])
    return out


def standard_tableaux(d: YoungDiagram) -> list[Filling]:
    """Fillings by 1..n increasing along rows and down columns (backtracking)."""
    result: list[Filling] = []
    rows: list[list[int]] = [[] for _ in d]

    def place(k: int):
        if k > d.n:
            result.append(tuple(tuple(r) for r in rows))
            return
        for i, length in enumerate(d):
            if len(rows[i]) < length and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                place(k + 1)
                rows[i].pop()

    place(1)
    return result


def count_standard_tableaux(d: YoungDiagram) -> int:
    return len(standard_tableaux(d))


def hook_length_count(d: YoungDiagram) -> int:
    """n! / prod(hook lengths); independent of the enumeration above."""
    cols = d.column_lengths()
    prod = 1
    for i, j in d.boxes:
        prod *= (d[i] - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(d.n) // prod


def verify_sum_squares(n: int) -> Report:
    if not (1 <= n <= 8):
        raise ValueError("n must lie in 1..8")
    report = Report(f"sum f^2 = n! (n={n})")
    counts = {}
    for d in enumerate_diagrams(n):
        f = count_standard_tableaux(d)
        counts[str(tuple(d))] = f
        report.add(f"hook{tuple(d)}", f == hook_length_count(d), f"f={f}")
    total = sum(f * f for f in counts.values())
    report.add("sum_squares", total == math.factorial(n), f"{total} vs {math.factorial(n)}")
    report.extra["f"] = counts
    return report


def enumerate_schemes(d: YoungDiagram, R: int) -> list[Filling]:
    """Fillings by 1..R weakly increasing along rows, strictly down columns."""
    if R < 1:
        raise ValueError("R must be >= 1")
    boxes = d.boxes
    grid: dict[tuple[int, int], int] = {}
    result: list[Filling] = []

    def rec(k: int):
        if k == len(boxes):
            result.append(tuple(tuple(grid[(i, j)] for j in range(d[i])) for i in range(len(d))))
            return
        i, j = boxes[k]
        lo = 1
        if j > 0:
            lo = max(lo, grid[(i, j - 1)])
        if i > 0:
            lo = max(lo, grid[(i - 1, j)] + 1)
        for v in range(lo, R + 1):
            grid[(i, j)] = v
            rec(k + 1)
        grid.pop((i, j), None)

    rec(0)
    return result


def gl_dimension(d: YoungDiagram, R: int) -> int:
    """Hook-content formula for the GL(R) irrep labelled by d."""
    cols = d.column_lengths()
    num = den = 1
    for i, j in d.boxes:
        num *= R + j - i
        den *= (d[i] - j - 1) + (cols[j] - i - 1) + 1
    return num // den if num > 0 else 0


# ---------------------------------------------------------------------------
# formal tensors


class FormalTensor:
    """Exact linear combination of equal-length words.

    Construction does not rescale; :meth:`canonical` gives the representative
    with coprime integer coefficients and a positive coefficient on the
    lexicographically first word.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[Word, GaussianRational] = {}
        length = None
        for w, c in (terms or {}).items():
            w = tuple(int(x) for x in w)
            if length is None:
                length = len(w)
            elif len(w) != length:
                raise ValueError("all words in a tensor must have the same length")
            c = GaussianRational.coerce(c)
            s = clean.get(w)
            c = c if s is None else s + c
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.terms = clean

    @classmethod
    def word(cls, w: Sequence[int]) -> "FormalTensor":
        return cls({tuple(w): 1})

    def __add__(self, other: "FormalTensor") -> "FormalTensor":
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, GaussianRational(0)) + c
        return FormalTensor(merged)

    def __neg__(self):
        return FormalTensor({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FormalTensor":
        c = GaussianRational.coerce(c)
        return FormalTensor({w: x * c for w, x in self.terms.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    def relabel(self, mapping: Mapping[int, int]) -> "FormalTensor":
        """Apply a letter substitution (e.g. the sort swap 1<->2) to every word."""
        return FormalTensor({tuple(mapping.get(x, x) for x in w): c for w, c in self.terms.items()})

    def canonical(self) -> "FormalTensor":
        if not self.terms:
            return self
        first = min(self.terms)
        t = self.scale(ONE / self.terms[first])
        den = 1
        for c in t.terms.values():
            den = math.lcm(den, c.re.denominator, c.im.denominator)
        t = t.scale(den)
        g = 0
        for c in t.terms.values():
            g = math.gcd(g, c.re.numerator, c.im.numerator)
        return t.scale(Fraction(1, g)) if g > 1 else t

    def __eq__(self, other):
        if not isinstance(other, FormalTensor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for w, c in sorted(self.terms.items()):
            ket = "|" + "".join(map(str, w)) + ">"
            neg = not c.im and c.re < 0
            mag = -c if neg else c
            coef = "" if mag == 1 else (f"({mag})" if mag.im else str(mag))
            if not out:
                out = ("-" if neg else "") + coef + ket
            else:
                out += (" - " if neg else " + ") + coef + ket
        return out

    __repr__ = __str__


def placed_word(tableau: Filling, scheme: Filling) -> Word:
    """Word whose position t(box) carries the letter s(box)."""
    if [len(r) for r in tableau] != [len(r) for r in scheme]:
        raise ValueError("tableau and scheme have different shapes")
    n = sum(len(r) for r in tableau)
    word = [0] * n
    for trow, srow in zip(tableau, scheme):
        for pos, letter in zip(trow, srow):
            word[pos - 1] = letter
    return tuple(word)


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _act_on_positions(t: FormalTensor, groups: list[list[int]], signed: bool) -> FormalTensor:
    """Sum over all permutations of positions inside each group (0-based)."""
    for group in groups:
        if len(group) < 2:
            continue
        out: dict[Word, GaussianRational] = {}
        for perm in permutations(range(len(group))):
            sgn = _perm_sign(perm) if signed else 1
            for w, c in t.terms.items():
                new = list(w)
                for a, b in enumerate(perm):
                    new[group[b]] = w[group[a]]
                key = tuple(new)
                out[key] = out.get(key, GaussianRational(0)) + c * sgn
        t = FormalTensor(out)
    return t


def young_symmetrize(word: Sequence[int], tableau: Filling, order: str = "columns_first") -> FormalTensor:
    """Young symmetrizer of ``tableau`` applied to ``word``.

    ``order="columns_first"`` antisymmetrizes the column positions and then
    symmetrizes the row positions (this reproduces the worked GL(2) tensors
    term by term); ``"rows_first"`` applies the two steps the other way round.
    """
    rows = [[k - 1 for k in r] for r in tableau]
    ncols = len(tableau[0])
    cols = [[r[j] - 1 for r in tableau if len(r) > j] for j in range(ncols)]
    t = FormalTensor.word(word)
    if order == "columns_first":
        t = _act_on_positions(t, cols, signed=True)
        t = _act_on_positions(t, rows, signed=False)
    elif order == "rows_first":
        t = _act_on_positions(t, rows, signed=False)
        t = _act_on_positions(t, cols, signed=True)
    else:
        raise ValueError("order must be 'columns_first' or 'rows_first'")
    return t


def scheme_tensor(d: YoungDiagram, tableau: Filling, scheme: Filling, order: str = "columns_first") -> FormalTensor:
    shape = [len(r) for r in tableau]
    if shape != list(d) or [len(r) for r in scheme] != list(d):
        raise ValueError("tableau and scheme must both have the shape of d")
    if sorted(k for r in tableau for k in r) != list(range(1, d.n + 1)):
        raise ValueError("tableau must contain 1..n exactly once")
    t = young_symmetrize(placed_word(tableau, scheme), tableau, order)
    if t.is_zero():
        raise ValueError("symmetrizer annihilated the scheme word")
    return t.canonical()


def _kets(spec: Mapping[str, int]) -> FormalTensor:
    return FormalTensor({tuple(int(ch) for ch in k): v for k, v in spec.items()})


# Worked GL(2) tensors on three urs.
PHI = {
    "111": _kets({"111": 1}),
    "112": _kets({"112": 1, "121": 1, "211": 1}),
    "122": _kets({"122": 1, "212": 1, "221": 1}),
    "222": _kets({"222": 1}),
}
PSI = {
    "112": _kets({"112": 2, "211": -1, "121": -1}),
    "211": _kets({"211": 2, "112": -1, "121": -1}),
    "121": _kets({"121": 2, "112": -1, "211": -1}),
    "122": _kets({"122": -2, "221": 1, "212": 1}),
    "221": _kets({"221": -2, "122": 1, "212": 1}),
    "212": _kets({"212": -2, "122": 1, "221": 1}),
}

SWAP_12 = {1: 2, 2: 1}


def formal_dependence_check() -> Report:
    report = Report("formal dependence")
    total = PSI["121"] + PSI["112"] + PSI["211"]
    report.add("psi121+psi112+psi211=0", total.is_zero(), str(total))
    report.add("psi112!=0", not PSI["112"].is_zero())
    mirrored = PSI["121"].relabel(SWAP_12) + PSI["112"].relabel(SWAP_12) + PSI["211"].relabel(SWAP_12)
    report.add("mirror: sum of swapped tensors = 0", mirrored.is_zero(), str(mirrored))
    direct = PSI["212"] + PSI["122"] + PSI["221"]
    report.add("psi212+psi122+psi221=0", direct.is_zero(), str(direct))
    return report


def _vectors(ts: Iterable[FormalTensor]):
    return [t.terms for t in ts]


def worked_tensor_report(order: str = "columns_first") -> Report:
    """Compare symmetrizer output with the worked GL(2), n=3 tensors."""
    report = Report("worked GL(2) tensors")
    sym = YoungDiagram((3,))
    (t_row,) = standard_tableaux(sym)
    for s in enumerate_schemes(sym, 2):
        key = "".join(str(x) for x in s[0])
        got = scheme_tensor(sym, t_row, s, order)
        want = PHI[key].canonical()
        report.add(f"phi{key}", got == want, f"{got}  vs  {want}")

    mixed = YoungDiagram((2, 1))
    tabs = standard_tableaux(mixed)
    targets = {
        "112": [PSI["112"], PSI["211"]],
        "122": [PSI["122"], PSI["221"]],
    }
    for s in enumerate_schemes(mixed, 2):
        content = "".join(str(x) for x in sorted(x for r in s for x in r))
        got = [scheme_tensor(mixed, t, s, order) for t in tabs]
        want = targets[content]
        span_ok = same_span(_vectors(got), _vectors(want))
        per_vector = all(any(g == w.canonical() for w in PSI.values()) for g in got)
        report.add(
            f"span{content}",
            span_ok,
            "; ".join(str(g) for g in got),
            per_vector_match=per_vector,
            rank=exact_rank(_vectors(got)),
        )
    mirror = [t.relabel(SWAP_12) for t in targets["112"]]
    report.add("span122=mirror(span112)", same_span(_vectors(targets["122"]), _vectors(mirror)))
    return report


def dimension_consistency(R: int, n: int) -> bool:
    """sum over diagrams with <= R rows of f_k * #schemes equals R**n."""
    total = 0
    for d in enumerate_diagrams(n):
        if len(d) <= R:
            total += count_standard_tableaux(d) * len(enumerate_schemes(d, R))
    return total == R**n
