"""Exact dense linear algebra over Q and GF(p).

Matrices over Q hold :class:`fractions.Fraction` entries in numpy object
arrays; matrices over GF(p) hold residues in int64 arrays and route their
elimination and products through :mod:`nilcomm._kernels`.  Nothing here ever
rounds.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import math

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, InconsistentSystem, InternalInconsistency, NotNilpotent


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The prime field of the given characteristic (0 means Q)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        if p > _kernels.MAX_PRIME:
            raise ValueError(f"primes above {_kernels.MAX_PRIME} are not supported")

    @property
    def is_rational(self):
        return self.characteristic == 0

    @property
    def dtype(self):
        return object if self.characteristic == 0 else np.int64

    @cached_property
    def zero(self):
        return self.coerce(0)

    @cached_property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        p = self.characteristic
        if p == 0:
            return x if type(x) is Fraction else Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return (x.numerator % p) * pow(den, p - 2, p) % p
        return int(x) % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(int(a), self.characteristic - 2, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self, a):
        """Exact scalar as an int or a 'num/den' string."""
        if self.characteristic == 0:
            a = Fraction(a)
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)

    def array(self, data, shape=None):
        if self.characteristic == 0:
            arr = np.array(data, dtype=object)
            if shape is not None:
                arr = arr.reshape(shape)
            flat = arr.reshape(-1)
            for k in range(flat.size):
                v = flat[k]
                if type(v) is not Fraction:
                    flat[k] = Fraction(v)
            return arr
        src = np.array(data, dtype=object)
        if shape is not None:
            src = src.reshape(shape)
        out = np.empty(src.shape, dtype=np.int64)
        fo, fs = out.reshape(-1), src.reshape(-1)
        for k in range(fs.size):
            fo[k] = self.coerce(fs[k])
        return out

    def zeros(self, shape):
        if self.characteristic == 0:
            arr = np.empty(shape, dtype=object)
            arr.fill(Fraction(0))
            return arr
        return np.zeros(shape, dtype=np.int64)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p):
    return Field(p)


class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("_a", "field")

    def __init__(self, data, field=QQ, _trusted=False):
        self.field = field
        if _trusted:
            arr = data
        else:
            arr = np.asarray(data, dtype=object) if not isinstance(data, np.ndarray) else data
            if arr.ndim != 2:
                if arr.size == 0:
                    arr = arr.reshape(0, 0)
                else:
                    raise ValueError("matrix data must be two-dimensional")
            arr = field.array(arr)
        arr.flags.writeable = False
        self._a = arr

    # -- construction ---------------------------------------------------------

    @classmethod
    def _wrap(cls, arr, field):
        if field.characteristic:
            arr = arr % field.characteristic if arr.dtype == np.int64 else field.array(arr)
        return cls(arr, field, _trusted=True)

    @classmethod
    def zeros(cls, rows, cols=None, field=QQ):
        cols = rows if cols is None else cols
        return cls(field.zeros((rows, cols)), field, _trusted=True)

    @classmethod
    def identity(cls, n, field=QQ):
        a = field.zeros((n, n))
        for i in range(n):
            a[i, i] = field.one
        return cls(a, field, _trusted=True)

    @classmethod
    def from_columns(cls, columns, rows, field=QQ):
        a = field.zeros((rows, len(columns)))
        for j, col in enumerate(columns):
            a[:, j] = col
        return cls(a, field, _trusted=True)

    @classmethod
    def hstack(cls, mats, rows=None, field=None):
        mats = list(mats)
        if not mats:
            return cls.zeros(rows or 0, 0, field or QQ)
        field = mats[0].field
        return cls(np.hstack([m._a for m in mats]), field, _trusted=True)

    @classmethod
    def vstack(cls, mats):
        field = mats[0].field
        return cls(np.vstack([m._a for m in mats]), field, _trusted=True)

    @classmethod
    def block_diag(cls, blocks, field=QQ):
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        if blocks:
            field = blocks[0].field
        a = field.zeros((n, m))
        r = c = 0
        for b in blocks:
            a[r:r + b.rows, c:c + b.cols] = b._a
            r += b.rows
            c += b.cols
        return cls(a, field, _trusted=True)

    # -- shape and access -------------------------------------------------------

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def array(self):
        """Read-only view of the underlying numpy array."""
        return self._a

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, key):
        if isinstance(key, tuple) and all(isinstance(k, (int, np.integer)) for k in key):
            return self._a[key]
        sub = self._a[key]
        if sub.ndim != 2:
            raise IndexError("use m[i, j] for entries or slices for submatrices")
        return Matrix(sub.copy(), self.field, _trusted=True)

    def submatrix(self, row_idx, col_idx):
        return Matrix(self._a[np.ix_(list(row_idx), list(col_idx))].copy(), self.field, _trusted=True)

    def column(self, j):
        return self._a[:, j].copy()

    def tolist(self):
        return self._a.tolist()

    def entries_json(self):
        return [[self.field.to_json(x) for x in row] for row in self._a]

    # -- arithmetic -------------------------------------------------------------

    def _check_same(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise DimensionMismatch(f"field mismatch: {self.field} vs {other.field}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape mismatch: {self.shape} vs {other.shape}")
        return None

    def __add__(self, other):
        bad = self._check_same(other)
        if bad is NotImplemented:
            return bad
        return Matrix._wrap(self._a + other._a, self.field)

    def __sub__(self, other):
        bad = self._check_same(other)
        if bad is NotImplemented:
            return bad
        return Matrix._wrap(self._a - other._a, self.field)

    def __neg__(self):
        return Matrix._wrap(-self._a, self.field)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        s = self.field.coerce(scalar)
        if self.field.characteristic:
            return Matrix._wrap((self._a * s) % self.field.characteristic, self.field)
        return Matrix._wrap(self._a * s, self.field)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise DimensionMismatch(f"field mismatch: {self.field} vs {other.field}")
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.field)
        p = self.field.characteristic
        if p:
            return Matrix(_kernels.matmul_modp(self._a, other._a, p), self.field, _trusted=True)
        return Matrix(_rational_matmul(self._a, other._a), self.field, _trusted=True)

    def __pow__(self, k):
        if not self.is_square():
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self):
        return Matrix(self._a.T.copy(), self.field, _trusted=True)

    def is_zero(self):
        return not np.any(self._a != 0)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self._a == other._a))
        )

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._a)
        return f"Matrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    def pretty(self, zero="."):
        cells = [[zero if x == 0 else str(x) for x in row] for row in self._a]
        if not cells or not cells[0]:
            return "[]"
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


# -- elimination ---------------------------------------------------------------

def _row_denominators(a):
    dens = np.frompyfunc(lambda x: x.denominator, 1, 1)(a)
    return np.array([math.lcm(*row) if len(row) else 1 for row in dens.tolist()], dtype=object)


def _rational_matmul(a, b):
    """Product of Fraction arrays via integer arithmetic.

    Each row of ``a`` and column of ``b`` is scaled to integers, multiplied as
    Python ints (much cheaper than Fraction arithmetic) and rescaled once.
    """
    if a.shape[0] == 0 or b.shape[1] == 0:
        return QQ.zeros((a.shape[0], b.shape[1]))
    ra = _row_denominators(a)
    cb = _row_denominators(b.T)
    ai = np.frompyfunc(lambda x, d: x.numerator * (d // x.denominator), 2, 1)(a, ra[:, None])
    bi = np.frompyfunc(lambda x, d: x.numerator * (d // x.denominator), 2, 1)(b, cb[None, :])
    prod = ai @ bi
    out = np.frompyfunc(lambda n, d: Fraction(n, d) if d != 1 else Fraction(n), 2, 1)(prod, ra[:, None] * cb[None, :])
    return np.asarray(out, dtype=object)


def _integer_rows(a):
    """Scale each row of a Fraction array to integers (same row space)."""
    dens = _row_denominators(a)
    r = np.frompyfunc(lambda x, d: x.numerator * (d // x.denominator), 2, 1)(a, dens[:, None])
    return np.asarray(r, dtype=object)


def _bareiss_rank(r):
    """Rank of an integer object array by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so the divisions are
    exact.  ``r`` is overwritten.
    """
    nrows, ncols = r.shape
    row, prev = 0, 1
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col] != 0)[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        pv = r[row, col]
        below = r[row + 1:, col:]
        if below.shape[0]:
            r[row + 1:, col:] = (pv * below - np.multiply.outer(below[:, 0], r[row, col:])) // prev
        prev = pv
        row += 1
    return row


def _rank_rational(a):
    return _bareiss_rank(_integer_rows(a))


def _rref_object(a, reduced=True):
    r = np.array(a, dtype=object, copy=True)
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        piv = None
        for i in range(row, nrows):
            if r[i, col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        pv = r[row, col]
        if pv != 1:
            r[row, col:] = r[row, col:] / pv
        factors = r[:, col].copy()
        if reduced:
            factors[row] = 0
        else:
            factors[:row + 1] = 0
        nz = np.nonzero(factors != 0)[0]
        if nz.size:
            r[nz, col:] = r[nz, col:] - np.multiply.outer(factors[nz], r[row, col:])
        pivots.append(col)
        row += 1
    return r, tuple(pivots)


def _rref_array(m, reduced=True):
    p = m.field.characteristic
    if p:
        r, piv = _kernels.rref_modp(m.array, p)
        return r, tuple(int(x) for x in piv)
    return _rref_object(m.array, reduced)


def rref(m):
    """Reduced row echelon form and the tuple of pivot columns."""
    r, piv = _rref_array(m)
    return Matrix(r, m.field, _trusted=True), piv


def rank(m):
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.characteristic == 0:
        return _rank_rational(m.array)
    return len(_rref_array(m, reduced=False)[1])


def nullspace(m):
    """Columns form a basis of {x : m x = 0}, one per free column, in column order."""
    r, piv = _rref_array(m)
    n = m.cols
    free = [j for j in range(n) if j not in set(piv)]
    basis = m.field.zeros((n, len(free)))
    one = m.field.one
    for k, fj in enumerate(free):
        basis[fj, k] = one
        for i, pj in enumerate(piv):
            basis[pj, k] = m.field.neg(r[i, fj])
    return Matrix(basis, m.field, _trusted=True)


def column_space(m):
    """Pivot columns of ``m``: a basis of its column space taken from ``m`` itself."""
    _, piv = _rref_array(m, reduced=False)
    return m.submatrix(range(m.rows), piv)


def solve(a, b):
    """Some ``x`` with ``a @ x == b``; raises InconsistentSystem if none exists."""
    if a.rows != b.rows:
        raise DimensionMismatch(f"cannot solve {a.shape} x = {b.shape}")
    aug = Matrix.hstack([a, b])
    r, piv = _rref_array(aug)
    n = a.cols
    if any(pj >= n for pj in piv):
        raise InconsistentSystem("linear system has no solution")
    x = a.field.zeros((n, b.cols))
    for i, pj in enumerate(piv):
        x[pj, :] = r[i, n:]
    return Matrix(x, a.field, _trusted=True)


def inverse(m):
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    if n == 0:
        return m
    r, piv = _rref_array(Matrix.hstack([m, Matrix.identity(n, m.field)]))
    if len(piv) < n or piv[n - 1] != n - 1:
        raise InconsistentSystem("matrix is singular")
    return Matrix(r[:, n:].copy(), m.field, _trusted=True)


def is_invertible(m):
    return m.is_square() and rank(m) == m.rows


def matvec(m, v):
    """``m @ v`` for a 1-D vector of field elements."""
    p = m.field.characteristic
    if p:
        col = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        return _kernels.matmul_modp(m.array, col, p).reshape(-1)
    col = np.array([QQ.coerce(x) for x in v], dtype=object).reshape(-1, 1)
    return _rational_matmul(m.array, col).reshape(-1)


def conjugate(m, h):
    """``h^-1 m h``."""
    return inverse(h) @ m @ h


# -- incremental spans -----------------------------------------------------------

class EchelonBasis:
    """Incrementally built basis of a subspace of K^n.

    Vectors are reduced against the stored ones in insertion order; every
    stored vector vanishes at the pivots of all vectors inserted before it.
    """

    def __init__(self, n, field=QQ):
        self.n = n
        self.field = field
        self._rows = []
        self._pivots = []
        self.vectors = []  # the original vectors that were accepted

    @property
    def dim(self):
        return len(self._rows)

    def _as_vec(self, v):
        v = np.asarray(v)
        if self.field.characteristic:
            return np.array(v, dtype=np.int64) % self.field.characteristic
        return self.field.array(np.array(v, dtype=object).reshape(-1))

    def reduce(self, v):
        w = self._as_vec(v).copy()
        p = self.field.characteristic
        for piv, row in zip(self._pivots, self._rows):
            c = w[piv]
            if c != 0:
                w = (w - c * row) % p if p else w - c * row
        return w

    def contains(self, v):
        return not np.any(self.reduce(v) != 0)

    def add(self, v):
        w = self.reduce(v)
        nz = np.nonzero(w != 0)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        inv = self.field.inv(w[piv])
        p = self.field.characteristic
        w = (w * inv) % p if p else w * inv
        self._rows.append(w)
        self._pivots.append(piv)
        self.vectors.append(self._as_vec(v))
        return True

    def matrix(self):
        return Matrix.from_columns(self.vectors, self.n, self.field)


def span(vectors, n, field=QQ):
    eb = EchelonBasis(n, field)
    for v in vectors:
        eb.add(v)
    return eb.matrix()


def sum_spaces(a, b):
    return column_space(Matrix.hstack([a, b]))


def intersect_spaces(a, b):
    """Basis of col(a) ∩ col(b); ``a`` and ``b`` must have independent columns."""
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(a.rows, 0, a.field)
    ns = nullspace(Matrix.hstack([a, -b]))
    if ns.cols == 0:
        return Matrix.zeros(a.rows, 0, a.field)
    return column_space(a @ ns[: a.cols, :])


def complement_basis(sub, sup):
    """Columns of ``sup`` extending a basis of col(sub) to one of col(sub)+col(sup).

    Lowest column index wins ties, so the choice is deterministic.
    """
    eb = EchelonBasis(sup.rows, sup.field)
    for j in range(sub.cols):
        eb.add(sub.column(j))
    chosen = []
    for j in range(sup.cols):
        col = sup.column(j)
        if eb.add(col):
            chosen.append(col)
    return Matrix.from_columns(chosen, sup.rows, sup.field)


# -- nilpotent maps ----------------------------------------------------------------

def nilpotency_index(j):
    """Least k with j^k = 0 (0 for the empty matrix); NotNilpotent otherwise."""
    if not j.is_square():
        raise DimensionMismatch("nilpotency of a non-square matrix")
    n = j.rows
    power = Matrix.identity(n, j.field)
    for k in range(n + 1):
        if power.is_zero():
            return k
        power = power @ j
    raise NotNilpotent(f"matrix of size {n} is not nilpotent")


def power_ranks(j):
    """[rank j^0, rank j^1, ..., 0]; raises NotNilpotent if the ranks stall above 0."""
    if not j.is_square():
        raise DimensionMismatch("nilpotency of a non-square matrix")
    n = j.rows
    ranks = [n]
    if j.field.characteristic == 0:
        # rank (d j)^k = rank j^k, and d j is an integer matrix for a common denominator d
        d = math.lcm(*(int(x) for x in _row_denominators(j.array))) if n else 1
        base = np.asarray(np.frompyfunc(lambda x: x.numerator * (d // x.denominator), 1, 1)(j.array),
                          dtype=object)
        power = base
        step = lambda p: p.dot(base)
        rank_of = lambda p: _bareiss_rank(p.copy())
    else:
        power = j
        step = lambda p: p @ j
        rank_of = rank
    while ranks[-1] > 0:
        r = rank_of(power)
        if r == ranks[-1]:
            raise NotNilpotent(f"matrix of size {n} is not nilpotent")
        ranks.append(r)
        power = step(power)
    return ranks


def nilpotent_jordan_type(j):
    """Partition of block sizes of the nilpotent matrix ``j``."""
    from .partitions import Partition

    ranks = power_ranks(j)
    dual = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return Partition.from_dual(dual)


def jordan_basis(j):
    """Invertible H with ``H^-1 j H == jordan_first(nilpotent_jordan_type(j))``.

    Chains are found top-down: for k from the nilpotency index down to 1, new
    chain heads are the basis vectors of ker j^k that are independent of
    ker j^(k-1) plus the parts of longer chains already lying in ker j^k.
    Candidates are scanned in nullspace-basis order.
    """
    if not j.is_square():
        raise DimensionMismatch("jordan basis of a non-square matrix")
    n, field = j.rows, j.field
    index = nilpotency_index(j)
    powers = [Matrix.identity(n, field)]
    for _ in range(index):
        powers.append(powers[-1] @ j)
    kernels = [nullspace(pw) for pw in powers]

    heads = []  # (length, head vector)
    for k in range(index, 0, -1):
        eb = EchelonBasis(n, field)
        for c in range(kernels[k - 1].cols):
            eb.add(kernels[k - 1].column(c))
        for length, h in heads:
            eb.add(matvec(powers[length - k], h))
        for c in range(kernels[k].cols):
            v = kernels[k].column(c)
            if eb.add(v):
                heads.append((k, v))

    columns = []
    for length, h in heads:
        chain = []
        v = h
        for _ in range(length):
            chain.append(v)
            v = matvec(j, v)
        columns.extend(reversed(chain))
    if len(columns) != n:
        raise InternalInconsistency(f"jordan chains cover {len(columns)} of {n} dimensions")
    return Matrix.from_columns(columns, n, field)
