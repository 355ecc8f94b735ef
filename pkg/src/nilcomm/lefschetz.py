"""Lefschetz-type analysis of graded Artinian algebras.

Conventions.  ``ArtinianAlgebra.mult_matrix`` is in column convention (column
j = coordinates of f * basis[j]).  For the commutator-algebra machinery the
transposed, row convention R = C^T is used: an element is a row vector v and
multiplication by f is v -> v R.  With H = jordan_basis(R_z) the rows u_k of
H^-1 satisfy u_k * z = u_{right(k)}, so multiplying by z moves one box to the
right in the Young diagram and diagram column c (0-based) is spanned by
elements of (z^c) that are not in (z^(c+1)).  Column 0 then represents
A/(z).

"Generic" statements (general linear forms, all but finitely many lambda) are replaced by
seeded samples; every verdict records the sample that justifies it.
"""

import random
from dataclasses import asdict, dataclass, field as dc_field

from .algebra import ArtinianAlgebra, LinearForm
from .commutator import coarse_truncation, is_in_commutator, phi
from .errors import (
    DependentForms,
    InconsistentSystem,
    InternalInconsistency,
    NotGorensteinFlagged,
    NotInCommutator,
)
from .linalg import (
    Matrix,
    column_space,
    complement_basis,
    intersect_spaces,
    inverse,
    jordan_basis,
    matvec,
    nilpotency_index,
    nilpotent_jordan_type,
    nullspace,
    rank,
    solve,
    sum_spaces,
)
from .partitions import Partition, jordan_first, multiplicity_sequence
from .polyalg import series_product

CERTIFIED_YES = "certified-yes"
CERTIFIED_NO = "certified-no"
UNDETERMINED = "undetermined"

MODULE_SLP_CRITERION = (
    "module SLP: the dual of the Jordan type of the induced action equals the "
    "module's Hilbert function values sorted decreasingly"
)


# -- sampling --------------------------------------------------------------------

@dataclass(frozen=True)
class SamplingPolicy:
    """Deterministic stand-in for generic linear forms and generic lambda.

    Linear forms are drawn with integer coefficients in
    [-coeff_bound, coeff_bound] from ``random.Random`` seeded with ``seed``
    plus a purpose tag, so different analyses do not share a stream.
    """

    seed: int = 0
    lambdas: tuple = (1, 2, 3, 4, 5)
    coeff_bound: int = 2
    samples: int = 25

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(int(x) for x in self.lambdas))
        if self.coeff_bound < 1 or self.samples < 1 or not self.lambdas:
            raise ValueError("sampling needs coeff_bound >= 1, samples >= 1 and at least one lambda")

    def forms(self, nvars, purpose="forms", field=None):
        """Seeded coefficient vectors; with a field, vectors vanishing in it are skipped."""
        rng = random.Random(f"{self.seed}/{purpose}")
        out = []
        while len(out) < self.samples:
            coeffs = tuple(rng.randint(-self.coeff_bound, self.coeff_bound) for _ in range(nvars))
            if field is not None:
                coeffs = tuple(field.coerce(c) for c in coeffs)
            if any(coeffs):
                out.append(coeffs)
        return out

    def to_dict(self):
        d = asdict(self)
        d["lambdas"] = list(self.lambdas)
        d["generator"] = "python random.Random, seed string '<seed>/<purpose>'"
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["seed"], tuple(d["lambdas"]), d["coeff_bound"], d["samples"])


DEFAULT_SAMPLING = SamplingPolicy()


# -- basic invariants ------------------------------------------------------------------

def mult_matrix(a, f):
    return a.mult_matrix(f)


def sperner(a):
    return a.sperner()


def cosperner(a):
    return a.cosperner()


def jordan_type_of(a, z):
    """(T, dual T) for multiplication by the linear form ``z``."""
    t = nilpotent_jordan_type(a.mult_matrix(z))
    return t, t.dual()


def _form_vector(a, f):
    return a.coordinates(a.form_polynomial(f))


def _require_independent(a, y, z):
    cols = [_form_vector(a, y), _form_vector(a, z)]
    if rank(Matrix.from_columns(cols, a.dim, a.field)) < 2:
        raise DependentForms("the two linear forms are linearly dependent in A")


def is_wlp_element(a, y):
    """Every graded piece of ×y is injective or surjective.

    Cross-checked against rank(×y) == CoSperner; disagreement is a bug.
    """
    m = a.mult_matrix(y)
    h = a.hilbert
    per_degree = all(
        rank(a.restricted(m, d, d + 1)) == min(h[d], h[d + 1]) for d in range(len(h) - 1)
    )
    by_rank = rank(m) == a.cosperner()
    if per_degree != by_rank:
        raise InternalInconsistency("WLP criteria disagree: per-degree test vs rank = CoSperner")
    return per_degree


def is_slp_element(a, y):
    """Every ×y^(c-2i): A_i -> A_(c-i) is bijective.

    Cross-checked against: Hilbert function symmetric and the dual of the
    Jordan type of ×y equals the Hilbert values sorted decreasingly.
    """
    m = a.mult_matrix(y)
    h = a.hilbert
    c = a.top_degree
    direct = True
    for i in range(c // 2 + 1):
        if h[i] != h[c - i]:
            direct = False
            break
        block = a.restricted(m ** (c - 2 * i), i, c - i)
        if rank(block) != h[i]:
            direct = False
            break
    t = nilpotent_jordan_type(m)
    via_type = a.is_symmetric() and t.dual().parts == tuple(sorted(h, reverse=True))
    if direct != via_type:
        raise InternalInconsistency("SLP criteria disagree: bijection test vs Jordan-type test")
    return direct


def slp_warning(a):
    if a.field.characteristic:
        return (f"characteristic {a.field.characteristic} > 0: strong Lefschetz statements are "
                "classically made in characteristic zero")
    return None


# -- graded kernels and images ------------------------------------------------------------

class _GradedPowers:
    """Degree-wise kernels and images of powers of a degree-one map (column convention)."""

    def __init__(self, a, c):
        self.a = a
        self.c = c
        self._powers = [Matrix.identity(a.dim, a.field)]

    def power(self, k):
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] @ self.c)
        return self._powers[k]

    def _h(self, d):
        return self.a.hilbert[d] if 0 <= d <= self.a.top_degree else 0

    def kernel(self, k, d):
        """Basis, in local coordinates of A_d, of ker(z^k) restricted to A_d."""
        hd = self._h(d)
        if k == 0:
            return Matrix.zeros(hd, 0, self.a.field)
        if d + k > self.a.top_degree:
            return Matrix.identity(hd, self.a.field)
        return nullspace(self.a.restricted(self.power(k), d, d + k))

    def image(self, k, d):
        """Basis of z^k * A_(d-k) inside A_d."""
        hd = self._h(d)
        if k == 0:
            return Matrix.identity(hd, self.a.field)
        if d - k < 0 or hd == 0:
            return Matrix.zeros(hd, 0, self.a.field)
        return column_space(self.a.restricted(self.power(k), d - k, d))


def _dim(m):
    return m.cols


# -- central simple modules -----------------------------------------------------------------

@dataclass
class GradedModule:
    """Graded subquotient hi/lo of A, one complement basis per degree.

    ``generators[d]`` holds local coordinates (in A_d) of representatives of a
    basis of the degree-d piece; ``lower[d]`` is a basis of the submodule
    divided out.  ``induced_actions[i]`` is the matrix, in column
    convention, of multiplication by the i-th variable on the module basis
    ordered by degree.
    """

    name: str
    index: int
    f: int
    hilbert: tuple
    generators: dict
    lower: dict
    induced_actions: tuple = ()

    @property
    def dim(self):
        return sum(self.hilbert)

    @property
    def shift(self):
        for d, x in enumerate(self.hilbert):
            if x:
                return d
        return 0

    @property
    def trimmed_hilbert(self):
        h = list(self.hilbert[self.shift:])
        while h and h[-1] == 0:
            h.pop()
        return tuple(h)

    def is_symmetric(self):
        h = self.trimmed_hilbert
        return h == tuple(reversed(h))

    def action(self, coeffs):
        """Induced multiplication by the linear form with the given coefficients."""
        field = self.induced_actions[0].field
        total = Matrix.zeros(self.dim, self.dim, field)
        for c, x in zip(coeffs, self.induced_actions):
            if c != 0:
                total = total + x * c
        return total

    def summary(self):
        return {
            "name": self.name,
            "f": self.f,
            "dimension": self.dim,
            "shift": self.shift,
            "hilbert": list(self.trimmed_hilbert),
        }


def _induced_actions(a, gens, lower):
    """Matrices of each variable on the subquotient with bases ``gens`` / ``lower``."""
    degrees = sorted(gens)
    offsets = {}
    total = 0
    for d in degrees:
        offsets[d] = total
        total += gens[d].cols
    mats = []
    for x in a.mult_matrices:
        out = a.field.zeros((total, total))
        for d in degrees:
            src = gens[d]
            if src.cols == 0 or d + 1 not in gens or gens[d + 1].cols == 0:
                continue
            images = a.restricted(x, d, d + 1) @ src
            basis = Matrix.hstack([gens[d + 1], lower[d + 1]])
            try:
                coeffs = solve(basis, images)
            except InconsistentSystem:
                raise InternalInconsistency("submodule is not stable under multiplication") from None
            k = gens[d + 1].cols
            out[offsets[d + 1]:offsets[d + 1] + k, offsets[d]:offsets[d] + src.cols] = coeffs.array[:k, :]
        mats.append(Matrix(out, a.field, _trusted=True))
    return tuple(mats)


def _subquotient(a, name, index, f, hi_lo):
    gens, lower, hilbert = {}, {}, []
    for d in range(a.top_degree + 1):
        hi, lo = hi_lo(d)
        comp = complement_basis(lo, hi)
        gens[d] = comp
        lower[d] = lo
        hilbert.append(comp.cols)
    return GradedModule(name, index, f, tuple(hilbert), gens, lower, _induced_actions(a, gens, lower))


def central_simple_modules(a, z):
    """(U_1..U_s, W_1..W_s) for multiplication by ``z``.

    U_i = (0:z^f_i + (z)) / (0:z^(f_i - 1) + (z)),
    W_i = (0:z ∩ (z^(f_i - 1))) / (0:z ∩ (z^f_i)),
    for the distinct Jordan block sizes f_1 > ... > f_s.  Checks dim U_i =
    dim W_i = m_i and Hilbert(W_i)(d) = Hilbert(U_i)(d - f_i + 1).
    """
    cz = a.mult_matrix(z)
    gp = _GradedPowers(a, cz)
    t = nilpotent_jordan_type(cz)
    us, ws = [], []
    for i, (f, mult) in enumerate(multiplicity_sequence(t), start=1):
        def u_spaces(d, f=f):
            im = gp.image(1, d)
            return sum_spaces(gp.kernel(f, d), im), sum_spaces(gp.kernel(f - 1, d), im)

        def w_spaces(d, f=f):
            k1 = gp.kernel(1, d)
            return intersect_spaces(k1, gp.image(f - 1, d)), intersect_spaces(k1, gp.image(f, d))

        u = _subquotient(a, f"U{i}", i, f, u_spaces)
        w = _subquotient(a, f"W{i}", i, f, w_spaces)
        if u.dim != mult or w.dim != mult:
            raise InternalInconsistency(f"module {i}: dimensions {u.dim}, {w.dim} differ from multiplicity {mult}")
        shifted = [0] * (f - 1) + list(u.hilbert)
        width = max(len(shifted), len(w.hilbert))
        if (shifted + [0] * (width - len(shifted))) != list(w.hilbert) + [0] * (width - len(w.hilbert)):
            raise InternalInconsistency(f"module {i}: W is not U shifted by {f - 1}")
        us.append(u)
        ws.append(w)
    return us, ws


# -- Jordan frame of ×z and the two routes to G_i -----------------------------------------------

@dataclass
class JordanFrame:
    """Jordan basis of ×z in row convention.

    ``h`` satisfies h^-1 R_z h = jordan_first(partition) with R_z = C_z^T;
    rows of ``h_inv`` are the new basis elements.
    """

    algebra: object
    z: object
    partition: Partition
    h: Matrix
    h_inv: Matrix

    @classmethod
    def build(cls, a, z):
        z = a.form(z)
        rz = a.mult_matrix(z).T
        h = jordan_basis(rz)
        h_inv = inverse(h)
        t = nilpotent_jordan_type(rz)
        if h_inv @ rz @ h != jordan_first(t, a.field):
            raise InternalInconsistency("Jordan basis does not conjugate ×z to its canonical form")
        return cls(a, z, t, h, h_inv)

    def in_frame(self, y):
        """Matrix of ×y in the Jordan frame (row convention); a member of C(J)."""
        return self.h_inv @ self.algebra.mult_matrix(y).T @ self.h

    def coordinates(self, y):
        """Coordinates of the element y in the frame basis (row vector)."""
        return matvec(self.h.T, _form_vector(self.algebra, y))


def _box_columns(t):
    return [c for r, n in enumerate(t.parts) for c in range(n)]


def csm_block_ranks(a, z, g, modules=None, frame=None):
    """[(G_i, rank G_i^f_i)] for the action of ``g`` on the central simple modules of ``z``.

    G_i is taken from the quotient construction and cross-checked against the
    fine diagonal blocks of phi applied to ×g in the Jordan frame of ×z (the two
    are transposes in different bases, so their Jordan types must agree).
    """
    z, g = a.form(z), a.form(g)
    _require_independent(a, g, z)
    us = modules if modules is not None else central_simple_modules(a, z)[0]
    frame = frame or JordanFrame.build(a, z)
    phi_blocks = phi(frame.in_frame(g), frame.partition)
    out = []
    for u, gp in zip(us, phi_blocks):
        gq = u.action(g.coeffs)
        if u.dim and nilpotent_jordan_type(gq) != nilpotent_jordan_type(gp):
            raise InternalInconsistency(f"{u.name}: quotient and block routes give different Jordan types")
        out.append((gq, rank(gq ** u.f) if u.dim else 0))
    return out


# -- WLP certificate ---------------------------------------------------------------------

@dataclass
class WlpCertificate:
    bound: int
    cosperner: int
    verdict: str
    block_ranks: list
    rank_z: int
    y: tuple
    z: tuple
    lambda_ranks: dict
    witness: object = None  # coefficient tuple of y + lambda z
    witness_lambda: object = None
    notes: list = dc_field(default_factory=list)

    def breakdown(self):
        return " + ".join(str(r) for r in self.block_ranks + [self.rank_z]) + f" = {self.bound}"

    def to_dict(self, field):
        return {
            "bound": self.bound,
            "cosperner": self.cosperner,
            "verdict": self.verdict,
            "block_ranks": list(self.block_ranks),
            "rank_z": self.rank_z,
            "breakdown": self.breakdown(),
            "y": [field.to_json(c) for c in self.y],
            "z": [field.to_json(c) for c in self.z],
            "lambda_ranks": {str(k): v for k, v in self.lambda_ranks.items()},
            "witness": None if self.witness is None else [field.to_json(c) for c in self.witness],
            "witness_lambda": self.witness_lambda,
            "notes": list(self.notes),
        }


def _combine(a, y, z, lam):
    return LinearForm(tuple(a.field.add(cy, a.field.mul(a.field.coerce(lam), cz))
                            for cy, cz in zip(y.coeffs, z.coeffs)))


def _independent_samples(a, z, sampling, purpose):
    zv = _form_vector(a, z)
    out = []
    for coeffs in sampling.forms(a.nvars, purpose, a.field):
        y = a.form(coeffs)
        if rank(Matrix.from_columns([_form_vector(a, y), zv], a.dim, a.field)) == 2:
            out.append(y)
    return out


def wlp_certificate(a, y, z, sampling=DEFAULT_SAMPLING):
    """Lower bound sum rank G_i^f_i + rank(×z) for the rank of ×(y + λz), generic λ.

    If ``y`` is None the sampled form with the largest bound is used.  The
    bound is verified against rank(×(y + λz)) for each sampled λ; the verdict
    is certified-yes when the bound reaches CoSperner and some sampled y + λz
    passes the exact WLP test, which is then recorded as the witness.
    """
    z = a.form(z)
    us = central_simple_modules(a, z)[0]
    frame = JordanFrame.build(a, z)
    rank_z = a.dim - len(frame.partition)
    if y is None:
        candidates = _independent_samples(a, z, sampling, "wlp")
        if not candidates:
            raise DependentForms("no sampled form is independent of z")
    else:
        candidates = [a.form(y)]
    best = None
    for cand in candidates:
        ranks = [r for _, r in csm_block_ranks(a, z, cand, us, frame)]
        total = sum(ranks) + rank_z
        if best is None or total > best[0]:
            best = (total, cand, ranks)
        if total == a.cosperner():
            break
    bound, y, ranks = best
    lambda_ranks = {}
    witness = witness_lambda = None
    notes = []
    for lam in sampling.lambdas:
        form = _combine(a, y, z, lam)
        lambda_ranks[lam] = rank(a.mult_matrix(form))
        if witness is None and lambda_ranks[lam] == a.cosperner() and is_wlp_element(a, form):
            witness, witness_lambda = form.coeffs, lam
    failing = [lam for lam, r in lambda_ranks.items() if r < bound]
    if failing:
        notes.append(f"rank below the bound at lambda in {failing} (allowed for finitely many lambda)")
        my, mz = a.mult_matrix(y), a.mult_matrix(z)
        generic, certified = _generic_rank(lambda l: my + mz * l, rank_z, a.field, sampling.lambdas)
        if certified and generic < bound:
            raise InternalInconsistency(f"generic rank {generic} of y + lambda z is below the bound {bound}")
    if bound > a.cosperner():
        raise InternalInconsistency("bound exceeds the CoSperner number")
    if bound == a.cosperner() and witness is not None:
        verdict = CERTIFIED_YES
    elif not a.is_unimodal():
        verdict = CERTIFIED_NO
        notes.append("Hilbert function is not unimodal, so no WLP element exists")
    else:
        verdict = UNDETERMINED
        if bound == a.cosperner():
            notes.append("bound reaches CoSperner but no sampled lambda gave a witness")
    return WlpCertificate(bound, a.cosperner(), verdict, ranks, rank_z, y.coeffs, z.coeffs,
                          lambda_ranks, witness, witness_lambda, notes)


# -- associated graded ring along (z) --------------------------------------------------------------

class GrAlgebra:
    """Gr_(z)(A) = A/(z) + (z)/(z^2) + ... built by linear filtration.

    The Jordan frame of ×z gives a basis adapted to the filtration by powers
    of (z): frame element k lies in diagram column ``box_column[k]``.  The
    starred product with an element y of filtration order q sends the class of
    a column-c element to the column-(c+q) part of its product with y.
    """

    def __init__(self, a, z):
        self.algebra = a
        self.frame = JordanFrame.build(a, z)
        self.partition = self.frame.partition
        self.box_column = _box_columns(self.partition)
        self.z = self.frame.z

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def layer_dims(self):
        """dim (z^(i-1))/(z^i) for i = 1..p: the dual partition."""
        return self.partition.dual().parts

    def filtration_order(self, y):
        """Largest q with y in (z^q); None for y = 0 in A."""
        w = self.frame.coordinates(y)
        cols = [self.box_column[k] for k in range(self.dim) if w[k] != 0]
        return min(cols) if cols else None

    def star_matrix(self, y):
        """Matrix of ×y* on Gr in the frame basis (row convention)."""
        m = self.frame.in_frame(y)
        q = self.filtration_order(y)
        out = self.algebra.field.zeros(m.shape)
        if q is not None:
            for k in range(self.dim):
                for l in range(self.dim):
                    if self.box_column[l] == self.box_column[k] + q:
                        out[k, l] = m[k, l]
        return Matrix(out, self.algebra.field, _trusted=True)

    def truncation(self, y):
        """M-dagger of ×y in the frame: coarse diagonal blocks only."""
        return coarse_truncation(self.frame.in_frame(y), self.partition)

    def kernel_dimension_direct(self):
        s = self.star_matrix(self.z)
        return s.rows - rank(s)

    def kernel_dimension_by_layers(self):
        """sum_i dim(((z^(i-1)) ∩ (0:z)) + (z^i)) / (z^i), computed inside A."""
        cz = self.algebra.mult_matrix(self.z)
        ann = nullspace(cz)
        p = nilpotency_index(cz)
        powers = [Matrix.identity(self.dim, self.algebra.field)]
        for _ in range(p):
            powers.append(powers[-1] @ cz)
        ideals = [column_space(pw) if rank(pw) else Matrix.zeros(self.dim, 0, self.algebra.field)
                  for pw in powers]
        total = 0
        for i in range(1, p + 1):
            inter = intersect_spaces(ideals[i - 1], ann)
            total += _dim(sum_spaces(inter, ideals[i])) - _dim(ideals[i])
        return total


def gr_algebra(a, z):
    return GrAlgebra(a, z)


# -- rank deformation ------------------------------------------------------------------------------

@dataclass
class DeformationReport:
    """Ranks of M-dagger + λJ and M + λJ at the sampled λ, plus their generic values.

    The inequality is a statement about all but finitely many λ: at isolated
    values the rank of M + λJ can dip below its generic value.  ``holds``
    therefore compares generic ranks, and ``exceptional_lambdas`` lists the
    sampled λ where the pointwise inequality fails, each of which must be such
    a dip.
    """

    lambdas: tuple
    truncated_ranks: dict
    full_ranks: dict
    generic_truncated: int
    generic_full: int
    generic_certified: bool

    @property
    def exceptional_lambdas(self):
        return [l for l in self.lambdas if self.truncated_ranks[l] > self.full_ranks[l]]

    @property
    def exceptions_are_dips(self):
        return all(self.full_ranks[l] < self.generic_full for l in self.exceptional_lambdas)

    @property
    def holds(self):
        return self.generic_truncated <= self.generic_full and self.exceptions_are_dips

    @property
    def max_truncated(self):
        return max(self.truncated_ranks.values())

    @property
    def max_full(self):
        return max(self.full_ranks.values())


def _generic_rank(pencil, degree_bound, field, sampled):
    """Rank of pencil(λ) = A + λB over K(λ), with a flag saying whether it is certified.

    A g x g minor of A + λB is a polynomial in λ of degree at most rank B, so a
    nonzero one survives at one of any rank B + 1 distinct values; the maximum
    over that many values is exact.
    """
    values = list(dict.fromkeys(field.coerce(l) for l in sampled))
    candidate = 0
    while len(values) < degree_bound + 1 and (field.characteristic == 0 or candidate < field.characteristic):
        c = field.coerce(candidate)
        if c not in values:
            values.append(c)
        candidate += 1
    return max(rank(pencil(l)) for l in values), len(values) >= degree_bound + 1


def rank_deformation_check(m, j, t, sampling=DEFAULT_SAMPLING):
    """Compare rank(M-dagger + λJ) with rank(M + λJ) for the sampled λ and generically."""
    if not is_in_commutator(m, j):
        raise NotInCommutator("matrix does not commute with J")
    nilpotency_index(m)
    dag = coarse_truncation(m, t)
    trunc, full = {}, {}
    for lam in sampling.lambdas:
        trunc[lam] = rank(dag + j * lam)
        full[lam] = rank(m + j * lam)
    rank_j = t.size - len(t)
    g_trunc, ok_trunc = _generic_rank(lambda l: dag + j * l, rank_j, m.field, sampling.lambdas)
    g_full, ok_full = _generic_rank(lambda l: m + j * l, rank_j, m.field, sampling.lambdas)
    return DeformationReport(tuple(sampling.lambdas), trunc, full, g_trunc, g_full, ok_trunc and ok_full)


# -- SLP via central simple modules ------------------------------------------------------------------

def module_has_slp(module, coeffs):
    if module.dim == 0:
        return True
    t = nilpotent_jordan_type(module.action(coeffs))
    return t.dual().parts == tuple(sorted((x for x in module.trimmed_hilbert if x), reverse=True))


@dataclass
class CsmSlpResult:
    verdict: str
    witness: object
    per_module: list
    criterion: str = MODULE_SLP_CRITERION
    gorenstein_source: str = "detected"

    def to_dict(self, field):
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else [field.to_json(c) for c in self.witness],
            "modules": self.per_module,
            "criterion": self.criterion,
            "gorenstein": self.gorenstein_source,
        }


def csm_slp_implication(a, z, sampling=DEFAULT_SAMPLING, gorenstein=None):
    """SLP of A from SLP of all central simple modules (Gorenstein A only).

    ``gorenstein``: None detects it exactly (one-dimensional socle), True
    trusts the caller, False refuses.
    """
    if gorenstein is None:
        if not a.is_gorenstein():
            raise NotGorensteinFlagged(f"socle has dimension {a.socle_dimension()}, so A is not Gorenstein")
        source = "detected (socle dimension 1)"
    elif gorenstein:
        source = "asserted by caller"
    else:
        raise NotGorensteinFlagged("caller flagged the algebra as not Gorenstein")
    z = a.form(z)
    us = central_simple_modules(a, z)[0]
    forms = [tuple(x) for x in sampling.forms(a.nvars, "csm-slp", a.field)]
    per_module = []
    common = None
    for coeffs in forms:
        if all(module_has_slp(u, coeffs) for u in us):
            common = coeffs
            break
    for u in us:
        wit = common if common is not None else next((c for c in forms if module_has_slp(u, c)), None)
        per_module.append({
            **u.summary(),
            "slp": wit is not None,
            "witness": None if wit is None else [a.field.to_json(a.field.coerce(c)) for c in wit],
            "symmetric_hilbert": u.is_symmetric(),
        })
    ok = all(entry["slp"] for entry in per_module)
    return CsmSlpResult(CERTIFIED_YES if ok else UNDETERMINED, common, per_module, gorenstein_source=source)


# -- general linear forms --------------------------------------------------------------------------

@dataclass
class LefschetzReport:
    jordan_type: Partition
    dual: Partition
    sperner: int
    cosperner: int
    wlp_verdict: str
    slp_verdict: str
    best_form: tuple
    best_rank: int
    dominates_all_samples: bool
    csm: list = dc_field(default_factory=list)
    bound_breakdown: list = dc_field(default_factory=list)
    sampling: dict = dc_field(default_factory=dict)
    witnesses: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "jordan_type": list(self.jordan_type.parts),
            "dual": list(self.dual.parts),
            "sperner": self.sperner,
            "cosperner": self.cosperner,
            "wlp_verdict": self.wlp_verdict,
            "slp_verdict": self.slp_verdict,
            "best_form": list(self.best_form),
            "best_rank": self.best_rank,
            "dominates_all_samples": self.dominates_all_samples,
            "csm": list(self.csm),
            "bound_breakdown": list(self.bound_breakdown),
            "sampling": dict(self.sampling),
            "witnesses": dict(self.witnesses),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            Partition(d["jordan_type"]), Partition(d["dual"]), d["sperner"], d["cosperner"],
            d["wlp_verdict"], d["slp_verdict"], tuple(d["best_form"]), d["best_rank"],
            d["dominates_all_samples"], list(d["csm"]), list(d["bound_breakdown"]),
            dict(d["sampling"]), dict(d["witnesses"]), list(d["notes"]),
        )


def general_form_analysis(a, sampling=DEFAULT_SAMPLING):
    """Sample linear forms, keep the dominance-maximal Jordan type, test it exactly."""
    samples = sampling.forms(a.nvars, "general", a.field)
    best = None
    types = []
    for coeffs in samples:
        f = a.form(coeffs)
        t = nilpotent_jordan_type(a.mult_matrix(f))
        types.append(t)
        if best is None or (t != best[1] and t.dominates(best[1])):
            best = (f, t)
    f, t = best
    dominates_all = all(t.dominates(other) for other in types)
    notes = [f"general linear form approximated by {len(samples)} seeded samples; "
             "the reported Jordan type is a candidate, not a proof of genericity"]
    witnesses = {}
    text_coeffs = [a.field.to_json(c) for c in f.coeffs]
    if is_wlp_element(a, f):
        wlp = CERTIFIED_YES
        witnesses["wlp"] = text_coeffs
    elif not a.is_unimodal():
        wlp = CERTIFIED_NO
        notes.append("Hilbert function is not unimodal, so no WLP element exists")
    else:
        wlp = UNDETERMINED
    if is_slp_element(a, f):
        slp = CERTIFIED_YES
        witnesses["slp"] = text_coeffs
    elif not a.is_symmetric():
        slp = CERTIFIED_NO
        notes.append("Hilbert function is not symmetric, so no form gives bijections A_i -> A_(c-i)")
    else:
        slp = UNDETERMINED
    warning = slp_warning(a)
    if warning:
        notes.append(warning)
    return LefschetzReport(
        jordan_type=t, dual=t.dual(), sperner=a.sperner(), cosperner=a.cosperner(),
        wlp_verdict=wlp, slp_verdict=slp, best_form=tuple(text_coeffs),
        best_rank=a.dim - len(t), dominates_all_samples=dominates_all,
        sampling=sampling.to_dict(), witnesses=witnesses, notes=notes,
    )


# -- the binomial-type family ------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySeries:
    h: tuple
    s: int
    s1: int
    s2: int


def binomial_family_series(n, alpha):
    """(1 + q + ... + q^(alpha-1)) (1 + q)^n and its three largest coefficients."""
    if n < 0 or alpha < 1:
        raise ValueError("need n >= 0 and alpha >= 1")
    h = series_product([1] * alpha, *([[1, 1]] * n))
    top = sorted(h, reverse=True) + [0, 0]
    return FamilySeries(h, top[0], top[1], top[2])


def family_generators(kind, n, alpha):
    """Generators of the two monomial families in x0..xn (n >= 2).

    kind 'squares':  x0^alpha, x1^2, ..., x(n-1)^2, x(n-1) xn, xn^3
    kind 'path':     x0^alpha, x1^2, x1 x2, x2^3, x2 x3, ..., x(n-1) xn, xn^3
    """
    if n < 2 or alpha < 1:
        raise ValueError("need n >= 2 and alpha >= 1")
    names = [f"x{i}" for i in range(n + 1)]
    gens = [f"x0^{alpha}"]
    if kind == "squares":
        gens += [f"x{i}^2" for i in range(1, n)]
    elif kind == "path":
        gens += ["x1^2"] + [f"x{i}^3" for i in range(2, n)]
        gens += [f"x{i}*x{i + 1}" for i in range(1, n - 1)]
    else:
        raise ValueError(f"unknown family {kind!r}")
    gens += [f"x{n - 1}*x{n}", f"x{n}^3"]
    return names, gens


def family_algebra(kind, n, alpha, field=None):
    names, gens = family_generators(kind, n, alpha)
    if field is None:
        return ArtinianAlgebra.from_strings(gens, names)
    return ArtinianAlgebra.from_strings(gens, names, field)
