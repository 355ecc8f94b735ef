import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import CI243, CI444, MONO
from nilcomm.algebra import ArtinianAlgebra
from nilcomm.errors import InhomogeneousIdeal, NotArtinian
from nilcomm.linalg import GF
from nilcomm.polyalg import (
    Ideal,
    PolyRing,
    buchberger,
    complete_intersection_series,
    degrevlex_key,
    is_artinian,
    is_groebner,
    monomial_basis,
    normal_form,
    s_polynomial,
    series_product,
)

R3 = PolyRing(("x", "y", "z"))


def test_degrevlex_order():
    # x^2 > xy > y^2 > xz > yz > z^2 in degrevlex with x > y > z
    monos = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert sorted(monos, key=degrevlex_key, reverse=True) == monos


def test_polynomial_arithmetic():
    f = R3.parse("x + y")
    assert str(f ** 2) == "x^2 + 2*x*y + y^2"
    assert (f - f).is_zero()
    assert f.leading_monomial() == (1, 0, 0)
    assert R3.parse("2*x + 4*y").monic() == f + R3.parse("y")


def test_s_polynomial_cancels_leading_terms():
    f, g = R3.parse("x^2 + y^2"), R3.parse("x*y + z^2")
    s = s_polynomial(f, g)
    assert s.is_zero() or degrevlex_key(s.leading_monomial()) < degrevlex_key((2, 1, 0))


@pytest.mark.parametrize("example", [CI243, CI444, MONO], ids=["ci243", "ci444", "monomial"])
def test_groebner_basis_of_examples(example):
    ring = PolyRing(tuple(example["variables"]))
    ideal = Ideal(ring, tuple(ring.parse(g) for g in example["generators"]))
    gb = buchberger(ideal)
    assert is_groebner(list(gb))
    assert is_artinian(gb)
    basis = monomial_basis(gb)
    assert len(basis) == example["dim"]
    for g in ideal.generators:
        assert normal_form(g, gb).is_zero()


def test_complete_intersection_hilbert_series():
    a = ArtinianAlgebra.from_strings(CI243["generators"], CI243["variables"])
    assert a.hilbert == complete_intersection_series([2, 4, 3]) == CI243["hilbert"]
    b = ArtinianAlgebra.from_strings(CI444["generators"], CI444["variables"])
    assert b.hilbert == complete_intersection_series([4, 4, 4]) == CI444["hilbert"]


def test_ci243_groebner_basis_has_five_elements():
    a = ArtinianAlgebra.from_strings(CI243["generators"], CI243["variables"])
    assert len(a.gb) == 5


def test_series_product():
    assert series_product([1, 1], [1, 1]) == (1, 2, 1)
    assert complete_intersection_series([]) == (1,)


def test_not_artinian_names_missing_variable():
    with pytest.raises(NotArtinian, match="x"):
        ArtinianAlgebra.from_strings([], "x")
    with pytest.raises(NotArtinian, match="z"):
        ArtinianAlgebra.from_strings(["x^2", "y^2"], "xyz")


def test_inhomogeneous_ideal_rejected():
    with pytest.raises(InhomogeneousIdeal):
        Ideal(R3, (R3.parse("x^2 + y"),))


def test_positive_characteristic():
    a = ArtinianAlgebra.from_strings(CI243["generators"], CI243["variables"], GF(7))
    assert a.hilbert == CI243["hilbert"]


def test_characteristic_two_breaks_the_complete_intersection():
    # in characteristic 2 the quadric is a square of a linear form, so the quotient is not Artinian
    with pytest.raises(NotArtinian):
        ArtinianAlgebra.from_strings(CI243["generators"], CI243["variables"], GF(2))


def random_monomial_ideal(rng, nvars):
    gens = [tuple(rng.randint(1, 3) if i == j else 0 for i in range(nvars)) for j in range(nvars)]
    for _ in range(rng.randint(0, 4)):
        gens.append(tuple(rng.randint(0, 2) for _ in range(nvars)))
    return [g for g in gens if any(g)]


@given(st.integers(0, 10_000), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_monomial_ideal_basis_is_complement_of_ideal(seed, nvars):
    rng = random.Random(seed)
    gens = random_monomial_ideal(rng, nvars)
    ring = PolyRing(tuple(f"x{i}" for i in range(nvars)))
    gb = buchberger(Ideal(ring, tuple(ring.monomial(g) for g in gens)))
    basis = set(monomial_basis(gb))
    top = max(sum(g) for g in gens) * nvars
    # brute force: every monomial up to the degree bound is standard iff no generator divides it
    for e in itertools.product(range(top + 1), repeat=nvars):
        if sum(e) > top:
            continue
        divisible = any(all(a <= b for a, b in zip(g, e)) for g in gens)
        assert (e in basis) == (not divisible)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_buchberger_output_is_groebner_on_random_binomials(seed):
    rng = random.Random(seed)
    ring = PolyRing(("x", "y", "z"))
    gens = [ring.parse("x^3"), ring.parse("y^3"), ring.parse("z^3")]
    for _ in range(2):
        d = rng.randint(2, 3)
        m1 = [0, 0, 0]
        m2 = [0, 0, 0]
        for _ in range(d):
            m1[rng.randrange(3)] += 1
            m2[rng.randrange(3)] += 1
        gens.append(ring.monomial(tuple(m1)) + ring.monomial(tuple(m2), rng.randint(-2, 2) or 1))
    gens = [g for g in gens if not g.is_zero()]
    gb = buchberger(Ideal(ring, tuple(gens)))
    assert is_groebner(list(gb))
    for g in gens:
        assert normal_form(g, gb).is_zero()
