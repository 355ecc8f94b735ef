"""Graded Artinian quotients R/I with their multiplication matrices."""

from dataclasses import dataclass
from functools import cached_property

from .linalg import QQ, Matrix, nullspace, rank
from .polyalg import GroebnerBasis, Ideal, PolyRing, buchberger, hilbert_function, monomial_basis, normal_form


@dataclass(frozen=True)
class LinearForm:
    """Coefficient vector of a degree-one element, one entry per variable."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if all(c == 0 for c in self.coeffs):
            raise ValueError("a linear form must have a nonzero coefficient")

    def __len__(self):
        return len(self.coeffs)

    def render(self, names):
        parts = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append((sign, body))
        text = "".join(f" {s} {b}" for s, b in parts).strip()
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self, field):
        return [field.to_json(c) for c in self.coeffs]


class ArtinianAlgebra:
    """A = R/I for a homogeneous ideal I of finite colength.

    ``basis`` lists the standard monomials of the degrevlex Groebner basis in
    (degree, degrevlex-descending) order.  ``mult_matrices[i]`` is the matrix
    of multiplication by the i-th variable in column convention: column j
    holds the coordinates of ``x_i * basis[j]``.
    """

    def __init__(self, ring, gb, generators=()):
        self.ring = ring
        self.field = ring.field
        self.gb = gb
        self.generators = tuple(generators)
        self.basis = monomial_basis(gb)
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.degrees = [sum(m) for m in self.basis]
        self.hilbert = hilbert_function(self.basis)

    @classmethod
    def from_ideal(cls, ideal):
        return cls(ideal.ring, buchberger(ideal), ideal.generators)

    @classmethod
    def from_strings(cls, generators, variables, field=QQ):
        ring = PolyRing(tuple(variables), field)
        gens = [ring.parse(g) for g in generators]
        return cls.from_ideal(Ideal(ring, gens))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def nvars(self):
        return self.ring.nvars

    @property
    def top_degree(self):
        return len(self.hilbert) - 1

    def degree_indices(self, d):
        return [k for k, deg in enumerate(self.degrees) if deg == d]

    def coordinates(self, poly):
        """Coordinate vector (list) of the class of ``poly`` in A."""
        nf = normal_form(poly, self.gb)
        vec = [self.field.zero] * self.dim
        for e, c in nf.terms.items():
            vec[self.index[e]] = c
        return vec

    @cached_property
    def mult_matrices(self):
        mats = []
        for i in range(self.nvars):
            x = self.ring.gen(i)
            columns = []
            for m in self.basis:
                columns.append(self.coordinates(x * self.ring.monomial(m)))
            mats.append(Matrix.from_columns(columns, self.dim, self.field))
        return tuple(mats)

    def form(self, spec):
        """LinearForm from a coefficient sequence, a variable name or linear text."""
        if isinstance(spec, LinearForm):
            return spec
        if isinstance(spec, str):
            poly = self.ring.parse(spec)
            if poly.is_zero() or any(sum(e) != 1 for e in poly.terms):
                raise ValueError(f"{spec!r} is not a nonzero linear form")
            coeffs = [self.field.zero] * self.nvars
            for e, c in poly.terms.items():
                coeffs[e.index(1)] = c
            return LinearForm(tuple(coeffs))
        return LinearForm(tuple(self.field.coerce(c) for c in spec))

    def form_polynomial(self, f):
        f = self.form(f)
        poly = self.ring.zero()
        for i, c in enumerate(f.coeffs):
            if c != 0:
                poly = poly + self.ring.gen(i).scale(c)
        return poly

    def mult_matrix(self, f):
        """Matrix of multiplication by the linear form ``f`` (column convention)."""
        f = self.form(f)
        total = Matrix.zeros(self.dim, self.dim, self.field)
        for c, x in zip(f.coeffs, self.mult_matrices):
            if c != 0:
                total = total + x * c
        return total

    def quotient_by(self, forms):
        """A/(forms) as a new ArtinianAlgebra, via a fresh Groebner basis."""
        extra = [self.form_polynomial(f) for f in forms]
        return ArtinianAlgebra.from_ideal(Ideal(self.ring, tuple(self.generators) + tuple(extra)))

    def socle_dimension(self):
        """dim (0 : m), the common kernel of all variable multiplications."""
        stacked = Matrix.vstack(list(self.mult_matrices))
        return nullspace(stacked).cols

    def is_gorenstein(self):
        """Exact test: a graded Artinian algebra is Gorenstein iff its socle is one-dimensional."""
        return self.dim > 0 and self.socle_dimension() == 1

    def sperner(self):
        return max(self.hilbert, default=0)

    def cosperner(self):
        h = self.hilbert
        return sum(min(h[i], h[i + 1]) for i in range(len(h) - 1))

    def is_unimodal(self):
        h = self.hilbert
        k = h.index(max(h)) if h else 0
        return all(h[i] <= h[i + 1] for i in range(k)) and all(h[i] >= h[i + 1] for i in range(k, len(h) - 1))

    def is_symmetric(self):
        return tuple(self.hilbert) == tuple(reversed(self.hilbert))

    def restricted(self, m, src_degree, dst_degree):
        """Block of ``m`` mapping A_src into A_dst."""
        return m.submatrix(self.degree_indices(dst_degree), self.degree_indices(src_degree))

    def describe(self):
        return {
            "variables": list(self.ring.variables),
            "characteristic": self.field.characteristic,
            "generators": [str(g) for g in self.generators],
            "groebner_basis": [str(g) for g in self.gb],
            "monomial_order": "degrevlex " + " > ".join(self.ring.variables),
            "hilbert_function": list(self.hilbert),
            "dimension": self.dim,
        }


def mult_rank(a, f):
    return rank(a.mult_matrix(f))


__all__ = ["ArtinianAlgebra", "LinearForm", "GroebnerBasis", "mult_rank"]
