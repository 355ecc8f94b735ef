"""Multivariate polynomials, Buchberger's algorithm and standard monomials.

The monomial order is degree reverse lexicographic with the declared variable
order x_1 > x_2 > ... > x_d.  All ideals handled here are homogeneous.
"""

from dataclasses import dataclass

from .errors import InhomogeneousIdeal, NotArtinian
from .linalg import QQ


def degrevlex_key(e):
    """Sort key: larger key means larger monomial."""
    return (sum(e), tuple(-x for x in reversed(e)))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """K[x_1, ..., x_d] with named variables."""

    variables: tuple
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self):
        return len(self.variables)

    def zero(self):
        return Polynomial({}, self)

    def constant(self, c):
        c = self.field.coerce(c)
        return Polynomial({(0,) * self.nvars: c} if c != 0 else {}, self)

    def gen(self, name):
        i = self.variables.index(name) if isinstance(name, str) and name in self.variables else None
        if i is None:
            if isinstance(name, int):
                i = name
            else:
                raise KeyError(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial({tuple(e): self.field.one}, self)

    def monomial(self, exponents, coeff=1):
        c = self.field.coerce(coeff)
        return Polynomial({tuple(exponents): c} if c != 0 else {}, self)

    def parse(self, text):
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    def monomial_str(self, e):
        factors = []
        for name, k in zip(self.variables, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        return "*".join(factors) if factors else "1"


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero field element."""

    __slots__ = ("terms", "ring")

    def __init__(self, terms, ring):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out[e], c) if e in out else c
        return Polynomial(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial({e: f.neg(c) for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add(e1, e2)
                prod = f.mul(c1, c2)
                out[e] = f.add(out[e], prod) if e in out else prod
        return Polynomial(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c, shift=None):
        """c * x^shift * self."""
        f = self.ring.field
        if shift is None:
            return Polynomial({e: f.mul(c, v) for e, v in self.terms.items()}, self.ring)
        return Polynomial({_add(e, shift): f.mul(c, v) for e, v in self.terms.items()}, self.ring)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        return self == self.ring.constant(other)

    __hash__ = None

    # -- structure ---------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self):
        return max(self.terms, key=degrevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self.ring.monomial_str(e)
            neg = False
            if self.ring.field.characteristic == 0 and c < 0:
                neg, c = True, -c
            if mono == "1":
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    __repr__ = __str__


@dataclass(frozen=True)
class Ideal:
    """Homogeneous ideal given by generators."""

    ring: PolyRing
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.ring != self.ring:
                raise ValueError("generator from a different ring")
            if not g.is_homogeneous():
                raise InhomogeneousIdeal(f"generator {g} is not homogeneous")


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced degrevlex Groebner basis; elements monic, sorted by leading monomial."""

    ring: PolyRing
    basis: tuple

    @property
    def leading_monomials(self):
        return [g.leading_monomial() for g in self.basis]

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def _reduce(f, polys):
    """Full reduction of f by the list ``polys`` (no monic assumption)."""
    field = f.ring.field
    lead = [(g.leading_monomial(), g) for g in polys if not g.is_zero()]
    p = dict(f.terms)
    remainder = {}
    while p:
        m = max(p, key=degrevlex_key)
        c = p[m]
        for lm, g in lead:
            if divides(lm, m):
                factor = field.div(c, g.terms[lm])
                shift = _sub(m, lm)
                for e, v in g.terms.items():
                    e2 = _add(e, shift)
                    nv = field.sub(p.get(e2, field.zero), field.mul(factor, v))
                    if nv == 0:
                        p.pop(e2, None)
                    else:
                        p[e2] = nv
                break
        else:
            remainder[m] = c
            del p[m]
    return Polynomial(remainder, f.ring)


def normal_form(f, gb):
    """Remainder of ``f`` modulo ``gb``: no term divisible by a leading monomial."""
    polys = gb.basis if isinstance(gb, GroebnerBasis) else list(gb)
    return _reduce(f, polys)


def s_polynomial(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    m = lcm(lf, lg)
    field = f.ring.field
    a = f.scale(field.inv(f.terms[lf]), _sub(m, lf))
    b = g.scale(field.inv(g.terms[lg]), _sub(m, lg))
    return a - b


def _disjoint(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _update(polys, G, B, h):
    """Gebauer-Moeller installation of new basis element ``h`` (an index).

    ``G`` is the list of current basis indices, ``B`` the list of pending pairs.
    """
    lm = [p.leading_monomial() for p in polys]
    lh = lm[h]
    C = [(h, g) for g in G]
    D = []
    while C:
        pair = C.pop(0)
        g1 = pair[1]
        l1 = lcm(lh, lm[g1])
        if _disjoint(lh, lm[g1]) or not any(divides(lcm(lh, lm[g2]), l1) for _, g2 in C + D):
            D.append(pair)
    E = [(a, b) for a, b in D if not _disjoint(lm[a], lm[b])]
    B_new = []
    for g1, g2 in B:
        l12 = lcm(lm[g1], lm[g2])
        if not (divides(lh, l12) and lcm(lm[g1], lh) != l12 and lcm(lm[g2], lh) != l12):
            B_new.append((g1, g2))
    B_new.extend(E)
    G_new = [g for g in G if not divides(lh, lm[g])] + [h]
    return G_new, B_new


def buchberger(ideal):
    """Reduced Groebner basis of a homogeneous ideal (degrevlex).

    Pairs are processed smallest lcm first (degree, then degrevlex, then
    insertion order), so the result is independent of any parallelism.
    """
    ring = ideal.ring
    polys = []
    G, B = [], []
    for f in ideal.generators:
        if f.is_zero():
            continue
        f = _reduce(f, [polys[g] for g in G]) if G else f
        if f.is_zero():
            continue
        polys.append(f.monic())
        G, B = _update(polys, G, B, len(polys) - 1)
    while B:
        def pair_key(pair):
            a, b = pair
            m = lcm(polys[a].leading_monomial(), polys[b].leading_monomial())
            return (degrevlex_key(m), pair)

        B.sort(key=pair_key)
        a, b = B.pop(0)
        s = s_polynomial(polys[a], polys[b])
        r = _reduce(s, [polys[g] for g in G])
        if r.is_zero():
            continue
        polys.append(r.monic())
        G, B = _update(polys, G, B, len(polys) - 1)

    # minimal basis: drop elements whose leading monomial is divisible by another's
    minimal = []
    for g in G:
        lg = polys[g].leading_monomial()
        if not any(h != g and divides(polys[h].leading_monomial(), lg)
                   and (polys[h].leading_monomial() != lg or h < g) for h in G):
            minimal.append(polys[g])
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(_reduce(g, others).monic())
    reduced.sort(key=lambda g: degrevlex_key(g.leading_monomial()))
    return GroebnerBasis(ring, tuple(reduced))


def is_groebner(polys):
    """Buchberger criterion: every S-polynomial reduces to zero."""
    polys = [p for p in polys if not p.is_zero()]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not _reduce(s_polynomial(polys[i], polys[j]), polys).is_zero():
                return False
    return True


def is_artinian(gb):
    lms = gb.leading_monomials
    d = gb.ring.nvars
    for i in range(d):
        if not any(all(e[k] == 0 for k in range(d) if k != i) and e[i] > 0 for e in lms):
            return False
    return True


def monomial_basis(gb):
    """Standard monomials of R/I sorted by degree, then degrevlex descending.

    Raises NotArtinian when some variable has no pure power among the
    leading monomials (the staircase is then infinite).
    """
    ring = gb.ring
    d = ring.nvars
    lms = gb.leading_monomials
    if not is_artinian(gb):
        missing = [ring.variables[i] for i in range(d)
                   if not any(all(e[k] == 0 for k in range(d) if k != i) and e[i] > 0 for e in lms)]
        raise NotArtinian(f"quotient is not finite-dimensional: no pure power of {', '.join(missing)} "
                          "in the initial ideal")
    zero = (0,) * d
    if any(divides(lm, zero) for lm in lms):
        return []
    basis = [zero]
    layer = [zero]
    while layer:
        nxt = set()
        for m in layer:
            for i in range(d):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if not any(divides(lm, e) for lm in lms):
                    nxt.add(e)
        layer = sorted(nxt, key=degrevlex_key, reverse=True)
        basis.extend(layer)
    return basis


def hilbert_function(monomials):
    """Number of monomials in each degree 0..max."""
    if not monomials:
        return ()
    top = max(sum(e) for e in monomials)
    h = [0] * (top + 1)
    for e in monomials:
        h[sum(e)] += 1
    return tuple(h)


def series_product(*factors):
    """Coefficient list of a product of polynomials given as coefficient lists."""
    out = [1]
    for f in factors:
        new = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                new[i + j] += a * b
        out = new
    return tuple(out)


def complete_intersection_series(degrees):
    """prod (1 + q + ... + q^(d-1))."""
    return series_product(*[[1] * d for d in degrees])
