"""Structure of the commutator algebra C(J) of a nilpotent Jordan matrix J.

Throughout, ``t`` is the Partition of J = jordan_first(t) and matrices in
C(J) are given in the horizontal (row-by-row) box order.  The hat transform
reorders rows and columns into the vertical (column-by-column) box order, in
which every member of C(J) becomes block upper triangular with square
diagonal blocks N_1, ..., N_p of sizes given by the dual partition.
"""

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NonNilpotentBlock,
    NotBlockUpperTriangular,
    NotInCommutator,
    NotInKernel,
    PreconditionViolated,
)
from .linalg import QQ, Matrix, inverse, jordan_basis, nilpotency_index, nilpotent_jordan_type, rank
from .partitions import jordan_first, jordan_second, multiplicity_sequence, numbering_permutation


def is_in_commutator(m, j):
    if m.shape != j.shape or not m.is_square():
        raise DimensionMismatch(f"shapes {m.shape} and {j.shape} are not the same square size")
    return m @ j == j @ m


# -- generic element -------------------------------------------------------------

@dataclass(frozen=True)
class CommutatorPattern:
    """Generic element of C(J) as equality classes of matrix positions.

    ``entry_classes`` maps every position that is not forced to zero to a
    parameter id; positions sharing an id carry the same value.  Parameter
    ``k`` is described by ``parameters[k] = (i, j, d)``: block (i, j), stripe
    ``d`` (0 on the main stripe of the block).
    """

    partition: object
    entry_classes: dict
    parameters: tuple

    @property
    def parameter_count(self):
        return len(self.parameters)

    @property
    def size(self):
        return self.partition.size

    def positions(self, pid):
        return [pos for pos, k in self.entry_classes.items() if k == pid]

    def instantiate(self, values, field=QQ):
        if len(values) != self.parameter_count:
            raise DimensionMismatch(f"expected {self.parameter_count} values, got {len(values)}")
        n = self.size
        a = field.zeros((n, n))
        vals = [field.coerce(v) for v in values]
        for (r, c), k in self.entry_classes.items():
            a[r, c] = vals[k]
        return Matrix(a, field, _trusted=True)

    def random_values(self, rng, low=-3, high=3):
        return [rng.randint(low, high) for _ in range(self.parameter_count)]

    def random_instance(self, rng, field=QQ, low=-3, high=3):
        return self.instantiate(self.random_values(rng, low, high), field)

    def parameter_index(self, i, j, d):
        return self._index[(i, j, d)]

    @property
    def _index(self):
        return {p: k for k, p in enumerate(self.parameters)}


def _block_offsets(sizes):
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    return offsets


@lru_cache(maxsize=256)
def generic_pattern(t):
    """Pattern whose instantiations are exactly C(jordan_first(t)).

    Block (i, j) has size n_i x n_j and is a Toeplitz band: entry (a, b) holds
    parameter (i, j, b - a - max(0, n_j - n_i)) when that stripe index is
    non-negative, zero otherwise.  With n_i <= n_j the band is pushed to the
    right of the block; with n_i > n_j it sits in the top rows.
    """
    parts = t.parts
    offsets = _block_offsets(parts)
    classes = {}
    params = []
    index = {}
    for i, ni in enumerate(parts):
        for j, nj in enumerate(parts):
            shift = max(0, nj - ni)
            for a in range(ni):
                for b in range(nj):
                    d = b - a - shift
                    if d < 0:
                        continue
                    key = (i, j, d)
                    if key not in index:
                        index[key] = len(params)
                        params.append(key)
                    classes[(offsets[i] + a, offsets[j] + b)] = index[key]
    return CommutatorPattern(t, classes, tuple(params))


def commutator_dimension(t):
    """sum over i, j of min(n_i, n_j)."""
    return sum(min(a, b) for a in t.parts for b in t.parts)


def random_commutator_element(t, rng, field=QQ, low=-3, high=3):
    return generic_pattern(t).random_instance(rng, field, low, high)


# -- hat transform -----------------------------------------------------------------

@lru_cache(maxsize=256)
def _inverse_perm(t):
    return numbering_permutation(t).inverse().pi


def hat(m, t):
    """P^-1 m P for the numbering permutation matrix P of ``t``.

    Implemented as a simultaneous row/column reindexing:
    hat(m)[pi(a), pi(b)] = m[a, b].
    """
    if m.shape != (t.size, t.size):
        raise DimensionMismatch(f"matrix {m.shape} does not match partition of size {t.size}")
    inv = _inverse_perm(t)
    return m.submatrix(inv, inv)


def unhat(mhat, t):
    if mhat.shape != (t.size, t.size):
        raise DimensionMismatch(f"matrix {mhat.shape} does not match partition of size {t.size}")
    pi = numbering_permutation(t).pi
    return mhat.submatrix(pi, pi)


# -- block decomposition ---------------------------------------------------------------

@dataclass
class BlockDecomposition:
    """Coarse diagonal blocks N_1..N_p of a hatted matrix and their fine blocks.

    ``fine[c]`` lists the diagonal blocks of ``coarse[c]``; ``fine[0]`` is
    (G_1, ..., G_s).
    """

    partition: object
    coarse: list
    fine: list
    coarse_sizes: tuple = dc_field(default=())
    fine_sizes: list = dc_field(default_factory=list)

    @property
    def G(self):
        return self.fine[0]


def coarse_ranges(t):
    offs = _block_offsets(t.dual().parts)
    return [(offs[k], offs[k + 1]) for k in range(len(offs) - 1)]


def fine_sizes_of_column(t, c):
    """Multiplicities m_i of the rectangles reaching column ``c`` (0-based)."""
    return [m for f, m in multiplicity_sequence(t) if f > c]


def _fine_blocks(block, sizes):
    offs = _block_offsets(sizes)
    return [block[offs[k]:offs[k + 1], offs[k]:offs[k + 1]] for k in range(len(sizes))]


def block_decomposition(mhat, t):
    ranges = coarse_ranges(t)
    for bi, (r0, r1) in enumerate(ranges):
        for bj, (c0, c1) in enumerate(ranges[:bi]):
            if not mhat[r0:r1, c0:c1].is_zero():
                raise NotBlockUpperTriangular(
                    f"block ({bi + 1},{bj + 1}) below the diagonal is nonzero; matrix is not in C(J)"
                )
    coarse = [mhat[r0:r1, r0:r1] for r0, r1 in ranges]
    fine_sizes = [fine_sizes_of_column(t, c) for c in range(len(ranges))]
    fine = [_fine_blocks(n, sz) for n, sz in zip(coarse, fine_sizes)]
    return BlockDecomposition(t, coarse, fine, t.dual().parts, fine_sizes)


def _require_commutator(m, t):
    j = jordan_first(t, m.field)
    if not is_in_commutator(m, j):
        raise NotInCommutator("matrix does not commute with the Jordan matrix of the partition")
    return j


def phi(m, t):
    """(G_1, ..., G_s): the fine diagonal blocks of N_1 for m in C(J)."""
    _require_commutator(m, t)
    return block_decomposition(hat(m, t), t).G


def phi_preimage(targets, t, field=QQ):
    """Some M in C(J) with phi(M) == targets, by direct pattern instantiation.

    Row r of the diagram contributes the box (r, 0) of N_1; the (r, r') entry
    of N_1 is the main-stripe parameter of block (r, r'), which is free when
    rows r and r' have the same length.
    """
    ms = multiplicity_sequence(t)
    if len(targets) != len(ms):
        raise DimensionMismatch(f"expected {len(ms)} blocks, got {len(targets)}")
    pattern = generic_pattern(t)
    values = [0] * pattern.parameter_count
    row0 = 0
    for (f, mult), g in zip(ms, targets):
        if g.shape != (mult, mult):
            raise DimensionMismatch(f"block for rows of length {f} must be {mult}x{mult}")
        for a in range(mult):
            for b in range(mult):
                values[pattern.parameter_index(row0 + a, row0 + b, 0)] = g[a, b]
        row0 += mult
    return pattern.instantiate(values, field)


def kernel_is_nilpotent_witness(t, m):
    """Nilpotency index of m, for m in the kernel of phi."""
    if any(not g.is_zero() for g in phi(m, t)):
        raise NotInKernel("phi(m) is not zero")
    return max(nilpotency_index(m), 1)


def _is_nilpotent(g):
    return (g ** g.rows).is_zero() if g.rows else True


def is_nilpotent_via_blocks(m, t):
    """m in C(J) is nilpotent iff every G_i is."""
    return all(_is_nilpotent(g) for g in phi(m, t))


def normalize_fine_blocks(m, t):
    """(H, H^-1 m_hat H) with the fine diagonal blocks in Jordan first form.

    H is block diagonal along the coarse blocks, each coarse block carrying
    diag(F_1, ..., F_k) where F_i is a Jordan basis of G_i; such H commutes
    with the shape of J_hat.  Only nilpotent fine blocks are supported.
    """
    _require_commutator(m, t)
    mhat = hat(m, t)
    dec = block_decomposition(mhat, t)
    frames = []
    for g in dec.G:
        if not _is_nilpotent(g):
            raise NonNilpotentBlock(f"fine block of size {g.rows} is not nilpotent; "
                                    "its Jordan form may need a field extension")
        frames.append(jordan_basis(g))
    coarse_frames = [Matrix.block_diag(frames[:len(sz)], m.field) for sz in dec.fine_sizes]
    h = Matrix.block_diag(coarse_frames, m.field)
    h_inv = inverse(h)
    jhat = jordan_second(t, m.field)
    if h_inv @ jhat @ h != jhat:
        raise InternalInconsistency("normalising conjugation moved J_hat")
    normal = h_inv @ mhat @ h
    for blocks in block_decomposition(normal, t).fine:
        for g in blocks:
            if g.rows and g != jordan_first(nilpotent_jordan_type(g), m.field):
                raise InternalInconsistency("fine block did not reach Jordan form")
    return h, normal


# -- rank formula ------------------------------------------------------------------------

@dataclass
class RankFormula:
    lower_bound: int
    exact_when_diagonal: object  # int or None
    block_ranks: list            # rank G_i^{f_i}
    rank_j: int


def coarse_truncation(m, t):
    """M-dagger: keep only the coarse diagonal blocks of hat(m), then undo the hat."""
    mhat = hat(m, t)
    out = mhat.field.zeros(mhat.shape)
    for r0, r1 in coarse_ranges(t):
        out[r0:r1, r0:r1] = mhat.array[r0:r1, r0:r1]
    return unhat(Matrix(out, m.field, _trusted=True), t)


def rank_formula(m, t):
    """sum rank G_i^{f_i} + rank J, a lower bound for rank(m_hat + J_hat).

    Requires hat(m) to vanish outside its coarse diagonal blocks.  When N_1 also
    vanishes outside its fine diagonal blocks the value is exact and is
    returned again as ``exact_when_diagonal``.
    """
    try:
        j = _require_commutator(m, t)
    except NotInCommutator as exc:
        raise PreconditionViolated(str(exc)) from None
    mhat = hat(m, t)
    ranges = coarse_ranges(t)
    for bi, (r0, r1) in enumerate(ranges):
        for bj, (c0, c1) in enumerate(ranges):
            if bi != bj and not mhat[r0:r1, c0:c1].is_zero():
                raise PreconditionViolated(f"coarse block ({bi + 1},{bj + 1}) of m_hat is nonzero")
    dec = block_decomposition(mhat, t)
    ms = multiplicity_sequence(t)
    block_ranks = [rank(g ** f) for g, (f, _) in zip(dec.G, ms)]
    rank_j = t.size - len(t)
    lower = sum(block_ranks) + rank_j

    n1 = dec.coarse[0]
    offs = _block_offsets(dec.fine_sizes[0])
    diagonal = True
    for a in range(len(offs) - 1):
        for b in range(len(offs) - 1):
            if a != b and not n1[offs[a]:offs[a + 1], offs[b]:offs[b + 1]].is_zero():
                diagonal = False
    if rank(j) != rank_j:
        raise InternalInconsistency("rank of the Jordan matrix differs from n - r")
    return RankFormula(lower, lower if diagonal else None, block_ranks, rank_j)


def random_nilpotent_element(t, rng, field=QQ, low=-3, high=3, tries=200):
    """Random member of C(J) whose fine blocks are strictly upper triangular.

    Nilpotent by the block criterion; used to feed deformation checks.
    """
    pattern = generic_pattern(t)
    ms = multiplicity_sequence(t)
    values = pattern.random_values(rng, low, high)
    row0 = 0
    for f, mult in ms:
        for a in range(mult):
            for b in range(a + 1):
                values[pattern.parameter_index(row0 + a, row0 + b, 0)] = 0
        row0 += mult
    return pattern.instantiate(values, field)


def seeded_rng(seed):
    return random.Random(seed)
