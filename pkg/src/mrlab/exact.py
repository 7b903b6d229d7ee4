"""Exact scalars over Q and Q(i), sparse exact matrices, and rank.

Rationals are plain :class:`fractions.Fraction`. Gaussian rationals use
:class:`GaussianRational`, a pair of fractions. Nothing in here ever touches
a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence, Union

RATIONAL = "rational"
GAUSSIAN = "gaussian"
FIELDS = (RATIONAL, GAUSSIAN)


class GaussianRational:
    """A number ``re + im*i`` with rational parts.

    Compares equal (and hashes equal) to a Fraction or int when the
    imaginary part is zero, so mixed rational/Gaussian code behaves.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    __str__ = lambda self: format_scalar(self)  # noqa: E731


Scalar = Union[Fraction, GaussianRational]


def real_part(x) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def conj(x):
    return x.conjugate() if isinstance(x, GaussianRational) else x


def sort_key(x) -> tuple[Fraction, Fraction]:
    """Total order used for canonical sorting (lexicographic on re, im)."""
    return (real_part(x), imag_part(x))


def to_field(x, field: str):
    """Coerce an int/Fraction/GaussianRational into the given field."""
    if field == RATIONAL:
        if isinstance(x, GaussianRational):
            if x.im != 0:
                raise ValueError(f"non-real value {format_scalar(x)} in rational field")
            return x.re
        return Fraction(x)
    if field == GAUSSIAN:
        return x if isinstance(x, GaussianRational) else GaussianRational(x)
    raise ValueError(f"unknown field {field!r}")


# ---------------------------------------------------------------- literals

_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?=$|[+-]))?(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i)?$"
)


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"malformed rational {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(_RAT, text.strip()):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_gaussian(text) -> GaussianRational:
    """Parse ``"a/b+c/di"``; either part may be omitted (``"3"``, ``"-i"``)."""
    if isinstance(text, bool):
        raise ValueError(f"malformed Gaussian rational {text!r}")
    if isinstance(text, int):
        return GaussianRational(text)
    if not isinstance(text, str):
        raise ValueError(f"malformed Gaussian rational {text!r}")
    s = text.replace(" ", "")
    m = _GAUSS_RE.match(s)
    if not s or m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"malformed Gaussian rational {text!r}")
    re_part = parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im")
    if im_text is None:
        im_part = Fraction(0)
    elif im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = parse_rational(im_text)
    return GaussianRational(re_part, im_part)


def parse_scalar(text, field: str = RATIONAL):
    if field == RATIONAL:
        return parse_rational(text)
    if field == GAUSSIAN:
        return parse_gaussian(text)
    raise ValueError(f"unknown field {field!r}")


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Exact string form; inverse of :func:`parse_scalar`."""
    if not isinstance(x, GaussianRational):
        return _fmt_frac(Fraction(x))
    if x.im == 0:
        return _fmt_frac(x.re)
    im = _fmt_frac(x.im) + "i"
    if x.re == 0:
        return im
    return _fmt_frac(x.re) + ("" if x.im < 0 else "+") + im


def decimal_string(q, digits: int = 6) -> str:
    """Human-readable decimal rendering of an exact rational (display only)."""
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = round(q * 10 ** digits)
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


# ------------------------------------------------------------------ matrix

class SparseExactMatrix:
    """m x n matrix stored as ``{(row, col): value}`` with no explicit zeros."""

    def __init__(self, nrows: int, ncols: int, entries=(), field: str = RATIONAL):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        if field not in FIELDS:
            raise ValueError(f"unknown field {field!r}")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if isinstance(entries, dict):
            triples = ((i, j, v) for (i, j), v in entries.items())
        else:
            triples = entries
        data: dict[tuple[int, int], Scalar] = {}
        for i, j, value in triples:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            if (i, j) in data:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            value = to_field(value, field)
            if value:
                data[(i, j)] = value
        self._data = data

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: str | None = None,
                   ncols: int | None = None) -> "SparseExactMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if field is None:
            field = infer_field(v for r in rows for v in r)
        return cls(len(rows), ncols,
                   [(i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v],
                   field=field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def zero(self):
        return Fraction(0) if self.field == RATIONAL else GaussianRational(0)

    def __getitem__(self, key):
        return self._data.get(key, self.zero())

    def items(self) -> Iterator[tuple[tuple[int, int], Scalar]]:
        return iter(sorted(self._data.items()))

    def nnz(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other):
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self):
        return f"SparseExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()}, field={self.field})"

    def transpose(self) -> "SparseExactMatrix":
        return SparseExactMatrix(self.ncols, self.nrows,
                                 [(j, i, v) for (i, j), v in self._data.items()],
                                 field=self.field)

    def to_dense(self) -> list[list]:
        zero = self.zero()
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self._data.items():
            out[i][j] = v
        return out

    def row_supports(self) -> list[set[int]]:
        sup: list[set[int]] = [set() for _ in range(self.nrows)]
        for i, j in self._data:
            sup[i].add(j)
        return sup

    def column_supports(self) -> list[set[int]]:
        sup: list[set[int]] = [set() for _ in range(self.ncols)]
        for i, j in self._data:
            sup[j].add(i)
        return sup

    def select_columns(self, cols: Sequence[int]) -> "SparseExactMatrix":
        """Submatrix keeping ``cols`` in the given order."""
        pos = {c: k for k, c in enumerate(cols)}
        return SparseExactMatrix(self.nrows, len(cols),
                                 [(i, pos[j], v) for (i, j), v in self._data.items() if j in pos],
                                 field=self.field)

    def select_rows(self, rows: Sequence[int]) -> "SparseExactMatrix":
        pos = {r: k for k, r in enumerate(rows)}
        return SparseExactMatrix(len(rows), self.ncols,
                                 [(pos[i], j, v) for (i, j), v in self._data.items() if i in pos],
                                 field=self.field)

    def __matmul__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        field = GAUSSIAN if GAUSSIAN in (self.field, other.field) else RATIONAL
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (k, j), v in other._data.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Scalar] = {}
        for (i, k), a in self._data.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return SparseExactMatrix(self.nrows, other.ncols, acc, field=field)

    def scale_row(self, i: int, c) -> "SparseExactMatrix":
        if not c:
            raise ValueError("row scale must be nonzero")
        return SparseExactMatrix(self.nrows, self.ncols,
                                 {k: (v * c if k[0] == i else v) for k, v in self._data.items()},
                                 field=GAUSSIAN if isinstance(c, GaussianRational) else self.field)

    def to_text(self) -> str:
        """Header ``m n field`` then one ``row col value`` line per nonzero."""
        lines = [f"{self.nrows} {self.ncols} {self.field}"]
        lines += [f"{i} {j} {format_scalar(v)}" for (i, j), v in self.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseExactMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        head = lines[0].split()
        if len(head) != 3:
            raise ValueError(f"bad header {lines[0]!r}")
        m, n, field = int(head[0]), int(head[1]), head[2]
        entries = []
        for lineno, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'row col value'")
            entries.append((int(parts[0]), int(parts[1]), parse_scalar(parts[2], field)))
        return cls(m, n, entries, field=field)


def infer_field(values: Iterable) -> str:
    for v in values:
        if isinstance(v, GaussianRational) and v.im != 0:
            return GAUSSIAN
    return RATIONAL


# -------------------------------------------------------------------- rank

def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integral_rows(rows: list[list], gaussian: bool) -> list[list]:
    """Scale each row by the lcm of its denominators (rank-preserving).

    Rational rows become lists of Python ints; Gaussian rows become
    GaussianRational values with integer parts.
    """
    out = []
    for r in rows:
        den = 1
        for v in r:
            if gaussian:
                den = _lcm(den, real_part(v).denominator)
                den = _lcm(den, imag_part(v).denominator)
            else:
                den = _lcm(den, real_part(v).denominator)
        if gaussian:
            out.append([GaussianRational(v) * den for v in r])
        else:
            out.append([int(real_part(v) * den) for v in r])
    return out


def _bareiss_rank(rows: list[list], ncols: int, exact_div) -> int:
    """Fraction-free elimination; every intermediate entry is a minor."""
    rows = [r for r in rows if any(r)]
    m = len(rows)
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, m):
            ri = rows[i]
            a = ri[col]
            if a:
                for j in range(col + 1, ncols):
                    ri[j] = exact_div(p * ri[j] - a * prow[j], prev)
            else:
                for j in range(col + 1, ncols):
                    if ri[j]:
                        ri[j] = exact_div(p * ri[j], prev)
            ri[col] = 0
        prev = p
        rank += 1
    return rank


def _int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0, "Bareiss division not exact"
    return q


def _gram(rows: list[list], ncols: int, gaussian: bool) -> list[list]:
    """``A^H A`` (``A^T A`` over Q): same rank as ``A``, only ncols x ncols."""
    g = [[0] * ncols for _ in range(ncols)]
    for r in rows:
        nz = [(j, v) for j, v in enumerate(r) if v]
        for a, va in nz:
            ca = conj(va) if gaussian else va
            ga = g[a]
            for b, vb in nz:
                ga[b] = ga[b] + ca * vb
    return g


def rank_dense(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Exact rank of a dense matrix of ints, Fractions or Gaussian rationals."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    gaussian = infer_field(v for r in rows for v in r) == GAUSSIAN
    rows = _integral_rows(rows, gaussian)
    m = len(rows)
    # tall or wide: reduce to the small Gram matrix; rank(A^H A) = rank(A)
    if m > 2 * ncols and ncols > 0:
        rows, ncols = _gram(rows, ncols, gaussian), ncols
    elif ncols > 2 * m:
        cols = [list(c) for c in zip(*rows)]
        rows, ncols = _gram(cols, m, gaussian), m
    if gaussian:
        return _bareiss_rank([[GaussianRational(v) for v in r] for r in rows], ncols,
                             lambda a, b: a / b)
    return _bareiss_rank(rows, ncols, _int_div)


def exact_rank(mat) -> int:
    """Rank over Q or Q(i) of a SparseExactMatrix (or dense row list)."""
    if isinstance(mat, SparseExactMatrix):
        if mat.is_zero():
            return 0
        # drop empty rows/columns before densifying
        rows_used = sorted({i for i, _ in mat._data})
        cols_used = sorted({j for _, j in mat._data})
        cpos = {c: k for k, c in enumerate(cols_used)}
        rpos = {r: k for k, r in enumerate(rows_used)}
        dense = [[0] * len(cols_used) for _ in rows_used]
        for (i, j), v in mat._data.items():
            dense[rpos[i]][cpos[j]] = v
        return rank_dense(dense, len(cols_used))
    return rank_dense(mat)


# ---------------------------------------------------------- point dimensions

def _check_points(points: Sequence[Sequence]) -> int | None:
    if not points:
        return None
    d = len(points[0])
    for k, p in enumerate(points):
        if len(p) != d:
            raise ValueError(f"point {k} has {len(p)} coordinates, expected {d}")
    return d


def linear_dim(points: Sequence[Sequence]) -> int:
    """Dimension of the linear span of the points (0 for no points)."""
    d = _check_points(points)
    if d is None:
        return 0
    return rank_dense(points, d)


def affine_dim(points: Sequence[Sequence]) -> int:
    """Dimension of the affine span; -1 for the empty set."""
    d = _check_points(points)
    if d is None:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank_dense(diffs, d) if diffs else 0
