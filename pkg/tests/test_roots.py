from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualgroups.errors import InvalidTypeError, NotABaseError, NotARootError
from dualgroups.roots import (
    DynkinType,
    all_permutations_preserving,
    build,
    diagram_automorphisms,
    identify_cartan,
    is_finite_type,
    is_strongly_orthogonal,
    permute_vector,
    subsystem,
    subsystem_type,
    weyl_group_elements,
    weyl_order,
)

# closed forms for |W|
WEYL = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2 ** n * factorial(n),
    "C": lambda n: 2 ** n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
}
POSITIVE = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
}


@pytest.mark.parametrize("t", ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"])
def test_weyl_order_closed_forms(t):
    fam, n = t[0], int(t[1:])
    want = {"F": 1152, "G": 12}.get(fam) or WEYL[fam](n)
    assert weyl_order(t) == want


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "G2", "A2+A1"])
def test_weyl_order_matches_brute_force(t):
    assert weyl_order(t) == len(weyl_group_elements(build(t)))


def test_weyl_order_e_types():
    assert weyl_order("E6") == 51840
    assert weyl_order("E7") == 2903040
    assert weyl_order("E8") == 696729600
    with pytest.raises(InvalidTypeError):
        weyl_order("A9")


@pytest.mark.parametrize("fam,n", [(f, n) for f in "ABCD" for n in range(2, 7) if not (f == "D" and n < 3)])
def test_positive_root_counts(fam, n):
    assert len(build(f"{fam}{n}").positive_roots) == POSITIVE[fam](n)


def test_exceptional_root_counts():
    counts = {"G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120}
    for t, k in counts.items():
        assert len(build(t).positive_roots) == k


@pytest.mark.parametrize("t,k", [("A3", 2), ("D4", 6), ("B3", 1), ("A1", 1), ("E6", 2), ("A1+A1", 2)])
def test_diagram_automorphism_counts(t, k):
    auts = diagram_automorphisms(t)
    assert len(auts) == k
    assert sorted(auts) == sorted(all_permutations_preserving(build(t).cartan))


def test_automorphisms_preserve_roots():
    rs = build("D4")
    for p in diagram_automorphisms("D4"):
        assert {permute_vector(p, r) for r in rs.roots} == set(rs.roots)


def test_bourbaki_conventions():
    assert build("B3").cartan[1][2] == -1 and build("B3").cartan[2][1] == -2
    assert build("C3").cartan[1][2] == -2
    assert build("G2").cartan[0][1] == -3
    assert build("F4").highest_root() == (2, 3, 4, 2)
    assert build("E8").highest_root() == (2, 3, 4, 6, 5, 4, 3, 2)
    assert build("B3").highest_root() == (1, 2, 2)
    assert build("C3").highest_root() == (2, 2, 1)
    assert not build("G2").is_long((1, 0))


def test_small_rank_aliases():
    assert DynkinType.parse("D3").canonical() == DynkinType.parse("A3")
    assert build("D2").dynkin.canonical() == DynkinType.parse("A1+A1")


def test_invalid_types():
    for bad in ["H3", "A0", "E9", "F3", "G3"]:
        with pytest.raises(InvalidTypeError):
            DynkinType.parse(bad)


def test_dual_swaps_b_and_c():
    assert build("B4").dual().dynkin.canonical() == DynkinType.parse("C4")
    rs = build("B3")
    assert {rs.coroot_of(r) for r in rs.roots} == set(rs.dual().roots)


def test_identify_cartan_recovers_order():
    rs = build("C3")
    perm = [2, 0, 1]
    shuffled = [[rs.cartan[perm[i]][perm[j]] for j in range(3)] for i in range(3)]
    d, order = identify_cartan(shuffled)
    assert d == DynkinType.parse("C3")
    assert is_finite_type(shuffled)
    assert not is_finite_type([[2, -2], [-2, 2]])


def test_subsystems():
    rs = build("B3")
    sub = subsystem(rs, [(1, 0, 0), (0, 0, 1)])
    assert sub.dynkin.canonical() == DynkinType.parse("A1+A1").canonical()
    assert len(sub.roots) == 4
    with pytest.raises(NotABaseError):
        subsystem(rs, [(1, 0, 0), (1, 1, 0)])
    with pytest.raises(NotARootError):
        subsystem(rs, [(1, 2, 0)])
    assert subsystem_type(rs, [(1, 1, 1), (0, 2, 1)]).canonical() == DynkinType.parse("A1+A1").canonical()


def test_strong_orthogonality():
    rs = build("B2")
    assert is_strongly_orthogonal(rs, (1, 0), (1, 2))
    assert not is_strongly_orthogonal(rs, (0, 1), (1, 1))


@given(st.sampled_from(["A3", "B3", "C3", "D4", "G2", "F4"]), st.data())
def test_reflections_permute_roots(t, data):
    rs = build(t)
    r = data.draw(st.sampled_from(rs.roots))
    x = data.draw(st.sampled_from(rs.roots))
    y = rs.reflect(x, r)
    assert rs.is_root(y)
    assert rs.reflect(y, r) == x
    assert rs.inner(x, x) == rs.inner(y, y)


@given(st.sampled_from(["B3", "C4", "G2", "F4"]), st.data())
def test_coroot_pairing_is_integral(t, data):
    rs = build(t)
    a = data.draw(st.sampled_from(rs.roots))
    b = data.draw(st.sampled_from(rs.roots))
    val = rs.pairing(a, rs.coroot_of(b))
    assert val in (-3, -2, -1, 0, 1, 2, 3)
    assert rs.pairing(b, rs.coroot_of(b)) == 2
