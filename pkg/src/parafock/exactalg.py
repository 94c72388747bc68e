"""Exact complex-rational scalars and sparse vector/operator algebra.

Everything in this package is computed over Q(i): scalars are
:class:`GaussianRational`, vectors are :class:`SparseVec` (a dict of nonzero
coefficients), and operators are :class:`SparseOp`.

A :class:`SparseOp` is stored as two integer sparse matrices (real and
imaginary numerators) over one shared positive denominator.  Products go
through scipy's int64 sparse kernels; every product and sum is preceded by a
magnitude bound check so int64 can never wrap silently -- if the bound would
be exceeded an :class:`OverflowError` is raised instead.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

_INT64_SAFE = 2**62


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"a/b"``, ``"a/b i"`` or ``"a/b + c/d i"`` (no floats)."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar string")
        if "." in s or "e" in s.lower():
            raise ValueError(f"only exact rational input is accepted: {text!r}")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut <= 0:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:cut], body[cut:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(Fraction(re_part), Fraction(im_part))

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact; use GaussianRational")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # field operations -------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> list[str]:
        return [str(self.re), str(self.im)]


def _coerce_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def scalar_arith(x, y, kind: str) -> GaussianRational:
    """Dispatch ``add | mul | div | conj`` on exact scalars (``conj`` ignores y)."""
    x = GaussianRational.coerce(x)
    if kind == "conj":
        return x.conj()
    y = GaussianRational.coerce(y)
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise ValueError(f"unknown scalar operation {kind!r}")


# ---------------------------------------------------------------------------
# graded spaces


class GradedSpace:
    """Minimal basis description: a size and a total-number grading per index.

    :class:`parafock.fock.FockBasis` provides the same two attributes; this
    class exists so the algebra layer can be used (and tested) on its own.
    """

    def __init__(self, shells: Sequence[int]):
        self.shells = np.asarray(shells, dtype=np.int64)
        self.size = len(self.shells)

    def __eq__(self, other):
        if not isinstance(other, GradedSpace):
            return NotImplemented
        return np.array_equal(self.shells, other.shells)

    def __hash__(self):
        return hash(tuple(self.shells.tolist()))


def _same_basis(a, b) -> bool:
    return a is b or a == b


class BasisMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# vectors


class SparseVec:
    """Exact sparse vector: basis index -> nonzero GaussianRational."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis, entries: Mapping[int, GaussianRational] | None = None):
        self.basis = basis
        clean = {}
        if entries:
            for k, v in entries.items():
                v = GaussianRational.coerce(v)
                if not (0 <= k < basis.size):
                    raise IndexError(f"index {k} outside basis of size {basis.size}")
                if v:
                    clean[int(k)] = v
        self.entries = clean

    @classmethod
    def unit(cls, basis, index: int, coeff=1) -> "SparseVec":
        return cls(basis, {index: coeff})

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k: int) -> GaussianRational:
        return self.entries.get(k, ZERO)

    def items(self):
        return sorted(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def _check(self, other: "SparseVec"):
        if not _same_basis(self.basis, other.basis):
            raise BasisMismatch("vectors live on different bases")

    def __add__(self, other: "SparseVec") -> "SparseVec":
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _raw_vec(self.basis, out)

    def __neg__(self) -> "SparseVec":
        return _raw_vec(self.basis, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        return self + (-other)

    def scale(self, c) -> "SparseVec":
        c = GaussianRational.coerce(c)
        if not c:
            return _raw_vec(self.basis, {})
        return _raw_vec(self.basis, {k: v * c for k, v in self.entries.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, SparseVec):
            return NotImplemented
        return _same_basis(self.basis, other.basis) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(sorted(self.entries.items())))

    def restrict(self, indices: Iterable[int]) -> "SparseVec":
        keep = set(indices)
        return _raw_vec(self.basis, {k: v for k, v in self.entries.items() if k in keep})

    def shell_parts(self) -> dict[int, "SparseVec"]:
        """Split the vector by total ur number of each basis state."""
        parts: dict[int, dict] = {}
        shells = self.basis.shells
        for k, v in self.entries.items():
            parts.setdefault(int(shells[k]), {})[k] = v
        return {n: _raw_vec(self.basis, d) for n, d in sorted(parts.items())}

    def shell_support(self) -> frozenset[int]:
        shells = self.basis.shells
        return frozenset(int(shells[k]) for k in self.entries)

    def pairing(self, other: "SparseVec") -> GaussianRational:
        """Sum of conj(self_k) * other_k over shared indices."""
        self._check(other)
        total = ZERO
        for k, v in self.entries.items():
            w = other.entries.get(k)
            if w is not None:
                total = total + v.conj() * w
        return total

    def __repr__(self):
        return f"SparseVec({len(self.entries)} nonzero of {self.basis.size})"


def _raw_vec(basis, entries: dict) -> SparseVec:
    v = SparseVec.__new__(SparseVec)
    v.basis = basis
    v.entries = entries
    return v


def proportionality(u: SparseVec, v: SparseVec) -> GaussianRational | None:
    """Return c with ``u == c*v`` exactly, or None.  ``v`` must be nonzero."""
    if v.is_zero():
        raise ValueError("reference vector is zero")
    if set(u.entries) != set(v.entries):
        return ZERO if u.is_zero() else None
    k0 = min(v.entries)
    c = u.entries[k0] / v.entries[k0]
    for k, x in v.entries.items():
        if u.entries[k] != c * x:
            return None
    return c


# ---------------------------------------------------------------------------
# exact linear algebra on dict-vectors


def _reduce_rows(vectors: Iterable[Mapping]) -> list[tuple[object, dict]]:
    """Incremental echelon form; returns (pivot key, reduced row) pairs."""
    pivots: list[tuple[object, dict]] = []
    for vec in vectors:
        row = {k: GaussianRational.coerce(v) for k, v in vec.items() if v}
        for key, prow in pivots:
            c = row.get(key)
            if c:
                for k, x in prow.items():
                    y = row.get(k, ZERO) - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        if row:
            key = min(row, key=_sort_key)
            inv = ONE / row[key]
            pivots.append((key, {k: x * inv for k, x in row.items()}))
    return pivots


def _sort_key(k):
    return k if isinstance(k, tuple) else (k,)


def exact_rank(vectors: Iterable[Mapping | SparseVec]) -> int:
    """Exact rank over Q(i) of dict-like vectors (SparseVec or key->scalar maps)."""
    return len(_reduce_rows(v.entries if isinstance(v, SparseVec) else v for v in vectors))


def same_span(a: Sequence, b: Sequence) -> bool:
    ra, rb = exact_rank(a), exact_rank(b)
    return ra == rb == exact_rank(list(a) + list(b))


# ---------------------------------------------------------------------------
# operators


def _max_abs(m: sp.spmatrix) -> int:
    return int(np.abs(m.data).max()) if m.nnz else 0


def _gcd_data(m: sp.spmatrix) -> int:
    return int(np.gcd.reduce(np.abs(m.data))) if m.nnz else 0


class SparseOp:
    """Exact sparse linear operator on a graded basis.

    ``grading_shifts`` declares the allowed values of
    ``shell(row) - shell(col)`` for nonzero elements.  The canonical form has a
    positive denominator coprime to all numerators and no stored zeros, so
    ``==`` is structural equality.
    """

    __slots__ = ("basis", "re", "im", "den", "grading_shifts")

    def __init__(self, basis, re, im=None, den: int = 1, grading_shifts: Iterable[int] = (0,)):
        n = basis.size
        re = sp.csc_matrix(re, shape=(n, n), dtype=np.int64)
        im = sp.csc_matrix((n, n), dtype=np.int64) if im is None else sp.csc_matrix(im, shape=(n, n), dtype=np.int64)
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.basis = basis
        self.grading_shifts = frozenset(int(s) for s in grading_shifts)
        self.re, self.im, self.den = _canonical(re, im, int(den))

    # construction -------------------------------------------------------
    @classmethod
    def from_entries(cls, basis, entries: Mapping[tuple[int, int], object], grading_shifts=(0,)) -> "SparseOp":
        items = [(rc, GaussianRational.coerce(v)) for rc, v in entries.items()]
        items = [(rc, v) for rc, v in items if v]
        den = 1
        for _, v in items:
            den = math.lcm(den, v.re.denominator, v.im.denominator)
        n = basis.size
        rows = np.array([rc[0] for rc, _ in items], dtype=np.int64)
        cols = np.array([rc[1] for rc, _ in items], dtype=np.int64)
        re_vals = [int(v.re * den) for _, v in items]
        im_vals = [int(v.im * den) for _, v in items]
        if any(abs(x) >= _INT64_SAFE for x in re_vals + im_vals):
            raise OverflowError("matrix element exceeds the int64-safe range")
        re = sp.csc_matrix((np.array(re_vals, dtype=np.int64), (rows, cols)), shape=(n, n))
        im = sp.csc_matrix((np.array(im_vals, dtype=np.int64), (rows, cols)), shape=(n, n))
        return cls(basis, re, im, den, grading_shifts)

    @classmethod
    def identity(cls, basis) -> "SparseOp":
        return cls(basis, sp.identity(basis.size, dtype=np.int64, format="csc"), None, 1, (0,))

    @classmethod
    def zero(cls, basis, grading_shifts=(0,)) -> "SparseOp":
        return cls(basis, sp.csc_matrix((basis.size, basis.size), dtype=np.int64), None, 1, grading_shifts)

    # inspection -----------------------------------------------------------
    @property
    def nnz(self) -> int:
        return len(self._pattern())

    def _pattern(self) -> set[tuple[int, int]]:
        out = set()
        for m in (self.re, self.im):
            coo = m.tocoo()
            out.update(zip(coo.row.tolist(), coo.col.tolist()))
        return out

    def is_zero(self) -> bool:
        return self.re.nnz == 0 and self.im.nnz == 0

    def entries(self) -> dict[tuple[int, int], GaussianRational]:
        out: dict[tuple[int, int], list] = {}
        for part, m in enumerate((self.re, self.im)):
            coo = m.tocoo()
            for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
                out.setdefault((r, c), [0, 0])[part] = v
        return {
            rc: GaussianRational(Fraction(a, self.den), Fraction(b, self.den))
            for rc, (a, b) in sorted(out.items())
        }

    def element(self, row: int, col: int) -> GaussianRational:
        return GaussianRational(
            Fraction(int(self.re[row, col]), self.den), Fraction(int(self.im[row, col]), self.den)
        )

    def column(self, j: int) -> SparseVec:
        ent: dict[int, list] = {}
        for part, m in enumerate((self.re, self.im)):
            lo, hi = m.indptr[j], m.indptr[j + 1]
            for r, v in zip(m.indices[lo:hi].tolist(), m.data[lo:hi].tolist()):
                ent.setdefault(r, [0, 0])[part] = v
        return SparseVec(
            self.basis,
            {r: GaussianRational(Fraction(a, self.den), Fraction(b, self.den)) for r, (a, b) in ent.items()},
        )

    def columns(self) -> dict[int, SparseVec]:
        cols = sorted({c for _, c in self._pattern()})
        return {j: self.column(j) for j in cols}

    def check_grading(self) -> list[tuple[int, int]]:
        """Full scan; returns the (row, col) elements violating the declaration."""
        shells = self.basis.shells
        bad = []
        for r, c in sorted(self._pattern()):
            if int(shells[r] - shells[c]) not in self.grading_shifts:
                bad.append((r, c))
        return bad

    # algebra ----------------------------------------------------------------
    def _check(self, other: "SparseOp"):
        if not isinstance(other, SparseOp):
            raise TypeError("expected a SparseOp")
        if not _same_basis(self.basis, other.basis):
            raise BasisMismatch("operators live on different bases")

    def __add__(self, other: "SparseOp") -> "SparseOp":
        self._check(other)
        den = math.lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        _guard(max(_max_abs(self.re), _max_abs(self.im)) * fa + max(_max_abs(other.re), _max_abs(other.im)) * fb)
        return _make(
            self.basis,
            self.re * fa + other.re * fb,
            self.im * fa + other.im * fb,
            den,
            self.grading_shifts | other.grading_shifts,
        )

    def __neg__(self) -> "SparseOp":
        return _make(self.basis, -self.re, -self.im, self.den, self.grading_shifts)

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        return self + (-other)

    def scale(self, c) -> "SparseOp":
        c = GaussianRational.coerce(c)
        if not c:
            return SparseOp.zero(self.basis, self.grading_shifts)
        cd = math.lcm(c.re.denominator, c.im.denominator)
        a, b = int(c.re * cd), int(c.im * cd)
        _guard(max(_max_abs(self.re), _max_abs(self.im)) * (abs(a) + abs(b)))
        re = self.re * a - self.im * b
        im = self.re * b + self.im * a
        return _make(self.basis, re, im, self.den * cd, self.grading_shifts)

    __rmul__ = scale

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        """Composition ``self * other`` (apply ``other`` first)."""
        self._check(other)
        ma = max(_max_abs(self.re), _max_abs(self.im))
        mb = max(_max_abs(other.re), _max_abs(other.im))
        if ma and mb:
            row_nnz = int(np.diff((abs(self.re) + abs(self.im)).tocsr().indptr).max())
            _guard(2 * ma * mb * row_nnz)
        re = self.re @ other.re - self.im @ other.im
        im = self.re @ other.im + self.im @ other.re
        shifts = {a + b for a in self.grading_shifts for b in other.grading_shifts}
        return _make(self.basis, re, im, self.den * other.den, shifts)

    def restrict_columns(self, cols: Iterable[int]) -> "SparseOp":
        """Zero every column outside ``cols`` (rows are kept)."""
        mask = np.zeros(self.basis.size, dtype=np.int64)
        mask[list(cols)] = 1
        d = sp.diags(mask, format="csc", dtype=np.int64)
        return _make(self.basis, self.re @ d, self.im @ d, self.den, self.grading_shifts)

    def apply(self, v: SparseVec) -> SparseVec:
        return op_apply(self, v)

    def __eq__(self, other):
        if not isinstance(other, SparseOp):
            return NotImplemented
        if not _same_basis(self.basis, other.basis) or self.den != other.den:
            return False
        return _sp_equal(self.re, other.re) and _sp_equal(self.im, other.im)

    __hash__ = None

    def __repr__(self):
        return f"SparseOp(nnz={self.nnz}, den={self.den}, shifts={sorted(self.grading_shifts)})"


def _guard(bound: int):
    if bound >= _INT64_SAFE:
        raise OverflowError(f"exact int64 kernel bound exceeded ({bound:.3e})")


def _sp_equal(a: sp.spmatrix, b: sp.spmatrix) -> bool:
    if a.nnz != b.nnz:
        return False
    return (a != b).nnz == 0


def _canonical(re: sp.csc_matrix, im: sp.csc_matrix, den: int):
    re = re.tocsc()
    im = im.tocsc()
    re.eliminate_zeros()
    im.eliminate_zeros()
    re.sort_indices()
    im.sort_indices()
    if re.nnz == 0 and im.nnz == 0:
        return re, im, 1
    g = math.gcd(den, _gcd_data(re), _gcd_data(im))
    if g > 1:
        re = _divide(re, g)
        im = _divide(im, g)
        den //= g
    return re, im, den


def _divide(m: sp.csc_matrix, g: int) -> sp.csc_matrix:
    out = m.copy()
    out.data = out.data // g
    return out


def _make(basis, re, im, den, shifts) -> SparseOp:
    op = SparseOp.__new__(SparseOp)
    op.basis = basis
    op.grading_shifts = frozenset(int(s) for s in shifts)
    op.re, op.im, op.den = _canonical(sp.csc_matrix(re, dtype=np.int64), sp.csc_matrix(im, dtype=np.int64), int(den))
    return op


def op_apply(A: SparseOp, v: SparseVec) -> SparseVec:
    """Exact matrix-vector product; the result has no stored zeros."""
    if not _same_basis(A.basis, v.basis):
        raise BasisMismatch("operator and vector live on different bases")
    acc_re: dict[int, Fraction] = {}
    acc_im: dict[int, Fraction] = {}
    den = A.den
    for j, x in v.entries.items():
        xr, xi = x.re, x.im
        for m, is_im in ((A.re, False), (A.im, True)):
            lo, hi = m.indptr[j], m.indptr[j + 1]
            if lo == hi:
                continue
            for r, a in zip(m.indices[lo:hi].tolist(), m.data[lo:hi].tolist()):
                # (a or a*i) * (xr + xi*i)
                if is_im:
                    dr, di = -a * xi, a * xr
                else:
                    dr, di = a * xr, a * xi
                acc_re[r] = acc_re.get(r, 0) + dr
                acc_im[r] = acc_im.get(r, 0) + di
    out = {}
    for r in acc_re.keys() | acc_im.keys():
        z = GaussianRational(Fraction(acc_re.get(r, 0)) / den, Fraction(acc_im.get(r, 0)) / den)
        if z:
            out[r] = z
    return _raw_vec(A.basis, out)


def commutator(A: SparseOp, B: SparseOp, anti: bool = False, columns: Iterable[int] | None = None) -> SparseOp:
    """``AB - BA`` (or ``AB + BA``).

    With ``columns`` only those columns of the result are computed; all other
    columns are zero.
    """
    A._check(B)
    if columns is not None:
        cols = list(columns)
        Ac, Bc = A.restrict_columns(cols), B.restrict_columns(cols)
        ab, ba = A @ Bc, B @ Ac
    else:
        ab, ba = A @ B, B @ A
    return ab + ba if anti else ab - ba


# ---------------------------------------------------------------------------
# span solving


NOT_IN_SPAN = None


class SpanSolver:
    """Reusable exact solver for ``target = sum c_k ops_k`` on selected columns.

    The operator list is reduced once; each :meth:`solve` reads the candidate
    coefficients off a square pivot system and then certifies them with an
    exact residual computation.
    """

    def __init__(self, basis_ops: Sequence[SparseOp], interior: Iterable[int]):
        self.interior = sorted(set(interior))
        if not self.interior:
            raise ValueError("interior column set is empty")
        if not basis_ops:
            raise ValueError("no basis operators given")
        self.basis = basis_ops[0].basis
        for op in basis_ops:
            basis_ops[0]._check(op)
        self.ops = [op.restrict_columns(self.interior) for op in basis_ops]
        vectors = [op.entries() for op in self.ops]
        # track which original operator each pivot row came from
        tagged = []
        for k, vec in enumerate(vectors):
            row = dict(vec)
            row[("op", k)] = ONE
            tagged.append(row)
        # reduce on matrix positions only; the ("op", k) keys ride along
        self.pivots: list[tuple[tuple[int, int], dict]] = []
        for row in tagged:
            for key, prow in self.pivots:
                c = row.get(key)
                if c:
                    for k, x in prow.items():
                        y = row.get(k, ZERO) - c * x
                        if y:
                            row[k] = y
                        else:
                            row.pop(k, None)
            positions = [k for k in row if k[0] != "op"]
            if positions:
                key = min(positions)
                inv = ONE / row[key]
                self.pivots.append((key, {k: x * inv for k, x in row.items()}))
        self.rank = len(self.pivots)

    def solve(self, target: SparseOp) -> list[GaussianRational] | None:
        self.ops[0]._check(target)
        t = target.restrict_columns(self.interior)
        tvec = t.entries()
        coeffs = [ZERO] * len(self.ops)
        # back out the combination along the stored pivot rows
        remaining = dict(tvec)
        for key, prow in self.pivots:
            c = remaining.get(key)
            if not c:
                continue
            for k, x in prow.items():
                if k[0] == "op":
                    coeffs[k[1]] = coeffs[k[1]] + c * x
                    continue
                y = remaining.get(k, ZERO) - c * x
                if y:
                    remaining[k] = y
                else:
                    remaining.pop(k, None)
        # certify with the original operators
        combo = SparseOp.zero(self.basis, t.grading_shifts)
        for c, op in zip(coeffs, self.ops):
            if c:
                combo = combo + op.scale(c)
        if not (combo - t).is_zero():
            return NOT_IN_SPAN
        return coeffs


def solve_in_span(target: SparseOp, basis_ops: Sequence[SparseOp], interior: Iterable[int]):
    """Coefficients expressing ``target`` in ``span(basis_ops)`` on ``interior``.

    Returns a list of exact coefficients, or ``NOT_IN_SPAN`` (None).
    Dependent basis operators receive coefficient zero.
    """
    return SpanSolver(basis_ops, interior).solve(target)
