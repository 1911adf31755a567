"""Exact dense linear algebra over the rationals.

Everything is built on :class:`fractions.Fraction`.  Matrices are immutable
:class:`QMat` values, vectors are plain tuples of fractions, and subspaces are
stored in reduced row echelon form so equal subspaces compare equal.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ``x`` to a Fraction. Floats are refused (they are not exact)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty fraction string")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def zero_vec(n: int) -> Vec:
    return (_ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    v = [_ZERO] * n
    v[i] = _ONE
    return tuple(v)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return not any(a)


def normalize_projective(a: Vec) -> Vec:
    """Scale so that the first nonzero coordinate is 1."""
    for x in a:
        if x:
            return tuple(y / x for y in a)
    raise ValueError("the zero vector has no projective class")


def same_projective_point(a: Vec, b: Vec) -> bool:
    return normalize_projective(a) == normalize_projective(b)


class QMat:
    """Immutable dense matrix of exact rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(frac(x) for x in entries)
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "QMat":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.entries = entries
        m._hash = None
        return m

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMat":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        c = len(rows[0])
        if any(len(r) != c for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), c, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMat":
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMat":
        e = [_ZERO] * (n * n)
        for i in range(n):
            e[i * n + i] = _ONE
        return cls._raw(n, n, tuple(e))

    @classmethod
    def unit(cls, n: int, i: int, j: int, cols: int | None = None) -> "QMat":
        """Matrix unit with a single 1 at (i, j), zero-based."""
        cols = n if cols is None else cols
        e = [_ZERO] * (n * cols)
        e[i * cols + j] = _ONE
        return cls._raw(n, cols, tuple(e))

    @classmethod
    def diag(cls, values: Sequence) -> "QMat":
        n = len(values)
        e = [_ZERO] * (n * n)
        for i, x in enumerate(values):
            e[i * n + i] = frac(x)
        return cls._raw(n, n, tuple(e))

    @classmethod
    def column(cls, v: Sequence) -> "QMat":
        return cls(len(v), 1, v)

    @classmethod
    def from_flat(cls, shape: tuple[int, int], v: Sequence) -> "QMat":
        return cls._raw(shape[0], shape[1], tuple(v))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["QMat"]]) -> "QMat":
        rows = []
        for brow in blocks:
            h = brow[0].rows
            for r in range(h):
                rows.append([x for b in brow for x in b.row(r)])
        return cls.from_rows(rows)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vec:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vec:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # arithmetic

    def _check_same(self, other: "QMat") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMat") -> "QMat":
        self._check_same(other)
        return QMat._raw(self.rows, self.cols,
                         tuple(a + b if b else a for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMat") -> "QMat":
        self._check_same(other)
        return QMat._raw(self.rows, self.cols,
                         tuple(a - b if b else a for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMat":
        return QMat._raw(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "QMat":
        c = frac(c)
        return QMat._raw(self.rows, self.cols, tuple(c * a if a else a for a in self.entries))

    def __mul__(self, c) -> "QMat":
        if isinstance(c, QMat):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "QMat") -> "QMat":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [_ZERO] * (n * p)
        for i in range(n):
            base = i * p
            for k in range(m):
                aik = a[i * m + k]
                if not aik:
                    continue
                kb = k * p
                for j in range(p):
                    bkj = b[kb + j]
                    if bkj:
                        out[base + j] += aik * bkj
        return QMat._raw(n, p, tuple(out))

    def apply(self, v: Sequence) -> Vec:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for i in range(self.rows):
            s = _ZERO
            r = i * self.cols
            for j, x in enumerate(v):
                if x:
                    a = self.entries[r + j]
                    if a:
                        s += a * x
            out.append(s)
        return tuple(out)

    @property
    def T(self) -> "QMat":
        return QMat._raw(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def antitranspose(self) -> "QMat":
        """Transpose across the anti-diagonal: entry (i, j) moves to (c-1-j, r-1-i)."""
        r, c = self.rows, self.cols
        return QMat._raw(c, r, tuple(self.entries[(r - 1 - j) * c + (c - 1 - i)]
                                     for i in range(c) for j in range(r)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), _ZERO)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_strictly_upper(self) -> bool:
        return all(not self.entries[i * self.cols + j]
                   for i in range(self.rows) for j in range(min(i + 1, self.cols)))

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def power(self, k: int) -> "QMat":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        out = QMat.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    # value semantics

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(frac_str(x) for x in self.row(i)) for i in range(self.rows))
        return f"QMat[{body}]"


def commutator(a: QMat, b: QMat) -> QMat:
    return a @ b - b @ a


def multiple_of(m: QMat, t: QMat) -> Fraction | None:
    """The scalar c with m = c t, or None; t must be nonzero."""
    p = next(i for i, x in enumerate(t.entries) if x)
    c = m.entries[p] / t.entries[p]
    if all((a == c * b) if b else not a for a, b in zip(m.entries, t.entries)):
        return c
    return None


def symmetric_part(m: QMat) -> QMat:
    return (m + m.T).scale(Fraction(1, 2))


def skew_part(m: QMat) -> QMat:
    return (m - m.T).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# row reduction

def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        pr = m[r]
        nz = [j for j in range(c, len(pr)) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: QMat) -> int:
    return len(rref([m.row(i) for i in range(m.rows)], m.cols)[1])


def determinant(m: QMat) -> Fraction:
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    a = m.tolist()
    n = m.rows
    det = _ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return _ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(m: QMat) -> QMat:
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.row(i)) + list(unit_vec(n, i)) for i in range(n)]
    red, piv = rref(aug, n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return QMat.from_rows([r[n:] for r in red])


def solve(m: QMat, b: Sequence) -> Vec | None:
    """Some solution x of m x = b, or None if the system is inconsistent."""
    aug = [list(m.row(i)) + [frac(b[i])] for i in range(m.rows)]
    red, piv = rref(aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [_ZERO] * m.cols
    for r, c in zip(red, piv):
        x[c] = r[m.cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """A linear subspace of Q^ambient_dim, stored canonically in RREF.

    ``shape`` is set when the vectors are flattened matrices, so the basis can
    be handed back as :class:`QMat` values.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "shape")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (),
                 shape: tuple[int, int] | None = None):
        rows = []
        for v in vectors:
            v = tuple(v)
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(v)
        red, piv = rref(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vec, ...] = tuple(tuple(r) for r in red)
        self.pivots: tuple[int, ...] = tuple(piv)
        self.shape = shape

    @classmethod
    def zero(cls, ambient_dim: int, shape=None) -> "Subspace":
        return cls(ambient_dim, (), shape)

    @classmethod
    def full(cls, ambient_dim: int, shape=None) -> "Subspace":
        return cls(ambient_dim, (unit_vec(ambient_dim, i) for i in range(ambient_dim)), shape)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def matrices(self) -> list[QMat]:
        if self.shape is None:
            raise ValueError("subspace does not hold matrices")
        return [QMat.from_flat(self.shape, b) for b in self.basis]

    def residual(self, v: Sequence) -> Vec:
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.ambient_dim):
                    y = row[j]
                    if y:
                        v[j] -= c * y
        return tuple(v)

    def contains(self, v) -> bool:
        if isinstance(v, QMat):
            v = v.entries
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return not any(self.residual(v))

    __contains__ = contains

    def coordinates(self, v) -> Vec:
        """Coefficients of ``v`` in the stored basis; raises if v is outside."""
        if isinstance(v, QMat):
            v = v.entries
        if any(self.residual(v)):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("dimension mismatch")
        return Subspace(self.ambient_dim, self.basis + other.basis, self.shape or other.shape)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("dimension mismatch")
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient_dim, self.shape)
        # a.x = b.y  <=>  [A | -B] (x, y) = 0
        k, l = self.dim, other.dim
        cols = [list(b) for b in self.basis] + [[-x for x in b] for b in other.basis]
        system = QMat(self.ambient_dim, k + l,
                      [cols[j][i] for i in range(self.ambient_dim) for j in range(k + l)])
        out = []
        for z in kernel_basis(system).basis:
            w = [_ZERO] * self.ambient_dim
            for c, b in zip(z[:k], self.basis):
                if c:
                    w = [x + c * y for x, y in zip(w, b)]
            out.append(w)
        return Subspace(self.ambient_dim, out, self.shape)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class Echelon:
    """Incrementally grown echelon basis, used where repeated RREF would be wasteful."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: dict[int, list[Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        v = list(v)
        for p in sorted(self.rows):
            c = v[p]
            if c:
                row = self.rows[p]
                for j in range(p, self.ambient_dim):
                    y = row[j]
                    if y:
                        v[j] -= c * y
        return v

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        r = self.reduce(v)
        for p, x in enumerate(r):
            if x:
                self.rows[p] = [y / x for y in r]
                return True
        return False


def span_close(vectors: Sequence) -> Subspace:
    """Canonical basis of the span of matrices (or plain vectors)."""
    vectors = list(vectors)
    if not vectors:
        return Subspace.zero(0)
    if isinstance(vectors[0], QMat):
        shape = vectors[0].shape
        for v in vectors:
            if not isinstance(v, QMat) or v.shape != shape:
                raise ValueError("all matrices must share dimensions")
        return Subspace(shape[0] * shape[1], [v.entries for v in vectors], shape)
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError("all vectors must share dimensions")
    return Subspace(n, [vec(v) for v in vectors])


def kernel_basis(m: QMat) -> Subspace:
    """Right null space of ``m``."""
    red, piv = rref([m.row(i) for i in range(m.rows)], m.cols)
    free = [c for c in range(m.cols) if c not in set(piv)]
    out = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        out.append(v)
    return Subspace(m.cols, out)


def matrix_from_columns(columns: Sequence[Sequence], nrows: int) -> QMat:
    cols = [tuple(c) for c in columns]
    return QMat._raw(nrows, len(cols), tuple(cols[j][i] for i in range(nrows) for j in range(len(cols))))


# ---------------------------------------------------------------------------
# characteristic polynomial

def char_poly(m: QMat) -> tuple[Fraction, ...]:
    """Coefficients of det(xI - m), leading coefficient first.

    Faddeev-LeVerrier recursion; the divisions by k are exact over Q.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [_ONE]
    ident = QMat.identity(n)
    aux = QMat.zeros(n)
    for k in range(1, n + 1):
        aux = m @ aux + ident.scale(coeffs[-1])
        coeffs.append(-(m @ aux).trace() / k)
    return tuple(coeffs)


def poly_at_matrix(coeffs: Sequence[Fraction], m: QMat) -> QMat:
    """Horner evaluation of a polynomial (leading coefficient first) at a matrix."""
    ident = QMat.identity(m.rows)
    acc = QMat.zeros(m.rows)
    for c in coeffs:
        acc = acc @ m + ident.scale(c)
    return acc


def poly_str(coeffs: Sequence[Fraction], var: str = "x") -> str:
    deg = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        e = deg - i
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono and c in (1, -1):
            t = ("-" if c < 0 else "") + mono
        else:
            t = frac_str(c) + ("*" + mono if mono else "")
        terms.append(t)
    return " + ".join(terms).replace("+ -", "- ") or "0"


# ---------------------------------------------------------------------------
# congruence witness search

def congruence_search(a: QMat, b: QMat, generators: Sequence[QMat], bound: int) -> QMat | None:
    """Breadth-first search over words C in ``generators`` for a = C b C^T.

    At most ``bound`` congruence images are examined. A miss proves nothing.
    """
    if a.shape != b.shape or not a.is_square:
        raise ValueError("congruence needs square matrices of equal size")
    start = QMat.identity(a.rows)
    if a == b:
        return start
    seen = {b}
    queue = deque([(b, start)])
    examined = 0
    while queue and examined < bound:
        cur, word = queue.popleft()
        for g in generators:
            nxt = g @ cur @ g.T
            if nxt in seen:
                continue
            c = g @ word
            if nxt == a:
                if c @ b @ c.T == a and determinant(c) != 0:
                    return c
            seen.add(nxt)
            queue.append((nxt, c))
            examined += 1
            if examined >= bound:
                break
    return None


def elementary_generators(n: int) -> list[QMat]:
    """Transvections I +/- E_ij, transpositions, sign flips and signed swaps."""
    gens = []
    ident = QMat.identity(n)
    for i in range(n):
        for j in range(n):
            if i != j:
                e = QMat.unit(n, i, j)
                gens.append(ident + e)
                gens.append(ident - e)
    for i in range(n):
        gens.append(ident - QMat.unit(n, i, i).scale(2))
    for i in range(n):
        for j in range(i + 1, n):
            swap = ident - QMat.unit(n, i, i) - QMat.unit(n, j, j)
            gens.append(swap + QMat.unit(n, i, j) + QMat.unit(n, j, i))
            gens.append(swap + QMat.unit(n, i, j) - QMat.unit(n, j, i))
            gens.append(swap - QMat.unit(n, i, j) + QMat.unit(n, j, i))
    return gens


def solve_congruence_candidate(a: QMat, b: QMat, bound: int = 20000) -> QMat | None:
    """Best-effort search for invertible C with a = C b C^T."""
    if a.shape != b.shape or not a.is_square:
        raise ValueError("congruence needs square matrices of equal size")
    return congruence_search(a, b, elementary_generators(a.rows), bound)


# ---------------------------------------------------------------------------
# JSON

def matrix_to_json(m: QMat) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[frac_str(x) for x in m.row(i)] for i in range(m.rows)]}


def matrix_from_json(obj: dict) -> QMat:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from None
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ValueError("matrix entries do not match rows/cols")
    return QMat(rows, cols, [_parse_entry(x) for r in entries for x in r])


def _parse_entry(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError("matrix entries must be exact (int or 'p/q' string)")
    return frac(x)


def vector_to_json(v: Sequence[Fraction]) -> list[str]:
    return [frac_str(x) for x in v]


def vector_from_json(obj: Sequence) -> Vec:
    return tuple(_parse_entry(x) for x in obj)
