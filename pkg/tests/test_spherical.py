import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualgroups.chevalley import LieElement, StructureConstants, same_line
from dualgroups.errors import NotSphericalRootError, SpIncompatibleError
from dualgroups.lattice import primitive_scale
from dualgroups.roots import DynkinType, build, weyl_order
from dualgroups.spherical import (
    KINDS,
    associated_base,
    associated_pairs,
    check_wss,
    classify,
    dual_datum,
    make_datum,
    regenerate,
    root_space_line,
    sigma_vee,
    sigma_wedge,
)


def test_classify_b3_triple():
    s = classify(build("B3"), (1, 2, 3), [0, 1])
    assert s.kind == "B3-triple"
    assert {s.assoc.gamma1, s.assoc.gamma2} == {(1, 1, 2), (0, 1, 1)}
    assert set(sigma_wedge(build("B3"), s)) == {(1, 1, 1), (0, 2, 1)}
    assert not s.is_root


def test_classify_simple_root():
    s = classify(build("C4"), (0, 0, 1, 0), [])
    assert s.kind == "A1" and s.is_root
    assert sigma_wedge(build("C4"), s) == [(0, 0, 1, 0)]


def test_classify_c_n_second_pattern():
    assert classify(build("C4"), (1, 2, 2, 1), [2, 3]).kind == "Cn(ii)"


def test_classify_rejects():
    with pytest.raises(NotSphericalRootError):
        classify(build("A3"), (1, 2, 1), [])
    with pytest.raises(SpIncompatibleError):
        classify(build("B3"), (1, 2, 3), [])
    with pytest.raises(NotSphericalRootError):
        classify(build("A2"), (1, 1), [0])


def test_d2_and_dn_wedges():
    rs = build("A1+A1")
    s = classify(rs, (1, 1), [])
    assert s.kind == "D2"
    assert sorted(sigma_wedge(rs, s)) == [(0, 1), (1, 0)]
    d4 = build("D4")
    t = classify(d4, (2, 2, 1, 1), [1, 2, 3])
    assert t.kind == "Dn"
    assert sorted(sigma_wedge(d4, t)) == sorted([(1, 1, 1, 0), (1, 1, 0, 1)])


def test_g2_sum_takes_empty_sp():
    s = classify(build("G2"), (1, 1), [])
    assert s.kind == "G2-sum"


def test_wss_examples():
    A2 = build("A2")
    assert check_wss(make_datum(A2, [(1, 1)], [])).ok
    rep = check_wss(make_datum(build("B2"), [(1, 0), (1, 1)], []))
    assert not rep.ok
    assert any("axiom-3" in c.name for c in rep.failures())


def test_sigma_vee_values():
    rs = build("B3")
    d = make_datum(rs, [(1, 2, 3)], [0, 1])
    assert sigma_vee(d, d.sigma[0]) == (2,)
    d2 = make_datum(build("A1+A1"), [(1, 1)], [])
    assert sigma_vee(d2, d2.sigma[0]) == (2,)


def test_dual_datum_examples():
    torus = make_datum(build("A2"), [], [], [(1, 0), (0, 1)])
    dd = dual_datum(torus)
    assert dd.dynkin.components == () and dd.torus_rank == 2

    a4 = make_datum(build("A4"), [(1, 1, 0, 0), (0, 0, 1, 1)], [])
    dd = dual_datum(a4)
    assert dd.dynkin == DynkinType.parse("A2")
    assert dd.cartan[0][1] == -1

    c4 = make_datum(build("C4"), [(1, 0, 0, 1), (0, 1, 1, 0)], [])
    dd = dual_datum(c4)
    assert dd.dynkin.canonical() == DynkinType.parse("G2")
    assert weyl_order(dd.dynkin) == 12


def test_associated_base_c_n_4():
    rs = build("C4")
    d = make_datum(rs, [(1, 0, 0, 1), (0, 1, 1, 0)], [])
    base = associated_base(d)
    assert base.labels == ("g1", "g2", "s2")
    assert base.wedge == ((1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 1, 0))
    assert base.wedge_type.canonical() == DynkinType.parse("B3")


def test_associated_pairs_are_unique_for_b3():
    assert len(associated_pairs(build("B3"), (1, 2, 3))) == 1


def test_root_space_lines():
    rs = build("A1+A1")
    sc = StructureConstants.build(rs.dual())
    s = classify(rs, (1, 1), [])
    line = root_space_line(sc, s)
    want = LieElement.e(2, (1, 0)) - LieElement.e(2, (0, 1))
    assert same_line(line.generator, want)
    # the swap automorphism maps the line to itself
    assert same_line(sc.apply_pinned_automorphism((1, 0), line.generator), line.generator)


def test_dn_line_support():
    rs = build("D5")
    sc = StructureConstants.build(rs.dual())
    t = classify(rs, (2, 2, 2, 1, 1), [1, 2, 3, 4])
    g = root_space_line(sc, t).generator
    assert g.support() == set(sigma_wedge(rs, t))


@pytest.mark.parametrize("name", sorted(KINDS))
def test_table_patterns_round_trip(name):
    kind = KINDS[name]
    m = kind.max_rank or max(kind.min_rank, 4)
    fam = {"AA": "A1+A1"}.get(kind.family, f"{kind.family}{m}")
    rs = build(fam)
    coeffs = kind.pattern(m)
    s = classify(rs, coeffs, kind.sp_condition(m))
    assert s.kind == name
    assert regenerate(rs, s) == tuple(coeffs)


@settings(max_examples=40)
@given(st.sampled_from(["A3", "B3", "C3", "D4", "G2", "B4"]), st.data())
def test_classify_is_scale_free(t, data):
    rs = build(t)
    r = data.draw(st.sampled_from(rs.positive_roots))
    sp = [i for i in range(rs.rank) if r[i] == 0]
    try:
        s = classify(rs, r, sp)
    except NotSphericalRootError:
        return
    assert classify(rs, primitive_scale(r), sp).kind == s.kind
    assert regenerate(rs, s) == tuple(r)
