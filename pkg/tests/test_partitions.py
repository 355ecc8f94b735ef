import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import PI_531
from nilcomm.linalg import GF, QQ, inverse, nilpotent_jordan_type
from nilcomm.partitions import (
    Partition,
    dual,
    horizontal_numbering,
    jordan_first,
    jordan_second,
    multiplicity_sequence,
    numbering_permutation,
    partitions_of,
    permutation_matrix,
    render_young,
    vertical_numbering,
)

ALL_SMALL = [t for n in range(1, 9) for t in partitions_of(n)]


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_parts_are_sorted_and_positive():
    assert Partition([1, 3, 2]).parts == (3, 2, 1)
    with pytest.raises(ValueError):
        Partition([2, 0])


def test_parse_and_str():
    assert Partition.parse("5,3,1") == Partition([5, 3, 1])
    assert Partition.parse("(5 3 1)") == Partition([5, 3, 1])
    assert str(Partition([5, 3, 1])) == "T(5,3,1)"
    assert Partition([5, 5, 1]).compact() == "5^2 1^1"


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_dual_is_an_involution(t):
    assert t.dual().dual() == t
    assert t.dual().size == t.size
    assert dual(t) == t.dual()


def test_dual_examples():
    assert Partition([5, 5, 5, 5, 1, 1, 1, 1]).dual().parts == (8, 4, 4, 4, 4)
    assert Partition([2] * 5 + [1] * 6).dual().parts == (11, 5)


def test_multiplicity_sequence():
    ms = multiplicity_sequence(Partition([7] * 6 + [3] * 6 + [1] * 4))
    assert ms.pairs == ((7, 6), (3, 6), (1, 4))
    assert ms.expand() == Partition([7] * 6 + [3] * 6 + [1] * 4)


def test_numbering_permutation_of_531_matches_drawn_diagrams():
    assert numbering_permutation(Partition([5, 3, 1])).one_based() == PI_531


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_numberings_are_bijections(t):
    h, v = horizontal_numbering(t), vertical_numbering(t)
    assert sorted(h.values()) == list(range(t.size)) == sorted(v.values())
    pi = numbering_permutation(t)
    assert pi.inverse().inverse() == pi


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_permutation_links_the_two_canonical_forms(t):
    p = permutation_matrix(numbering_permutation(t))
    assert inverse(p) @ jordan_first(t) @ p == jordan_second(t)
    assert p.T @ jordan_first(t) @ p == jordan_second(t)


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_jordan_forms_have_type_t(t):
    assert nilpotent_jordan_type(jordan_first(t)) == t
    assert nilpotent_jordan_type(jordan_second(t, GF(3))) == t


@given(st.lists(st.integers(1, 6), min_size=1, max_size=6), st.lists(st.integers(1, 6), min_size=1, max_size=6))
@settings(max_examples=100, deadline=None)
def test_dominance_matches_rank_sequences(a, b):
    ta, tb = Partition(a), Partition(b)
    if ta.size != tb.size:
        assert not ta.dominates(tb)
        return
    # dominance of T is equivalent to rank(J_T^k) >= rank(J_S^k) for all k
    def ranks(t):
        return [sum(max(0, x - k) for x in t.parts) for k in range(t.size + 1)]
    assert ta.dominates(tb) == all(x >= y for x, y in zip(ranks(ta), ranks(tb)))


def test_render_young_531():
    assert render_young(Partition([5, 3, 1]), "h") == "[1][2][3][4][5]\n[6][7][8]\n[9]"
    assert render_young(Partition([5, 3, 1]), "v") == "[1][4][6][8][9]\n[2][5][7]\n[3]"
    assert render_young(Partition([1])) == "[ ]"
    assert render_young(Partition([3, 2]), "v") == "[1][3][5]\n[2][4]"
    with pytest.raises(ValueError):
        render_young(Partition([1]), "x")


def test_jordan_first_is_superdiagonal_within_cells():
    j = jordan_first(Partition([2, 1]), QQ)
    assert j.tolist() == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
