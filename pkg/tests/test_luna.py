from dataclasses import replace

import pytest

from dualgroups.errors import MalformedInputError, UnknownEntryError
from dualgroups.luna import (
    Color,
    check_axioms,
    column_sum_zero,
    count_check,
    defect_check,
    positive_combination_exists,
    properness,
    quotient_generator,
    verify_entry,
    verify_system,
)

from support import survives


def system(catalog, iid, n=None, nu=None):
    return catalog.instantiate(iid, n, nu)


def test_color_labels():
    c = Color.from_label("D1-/D3-*", 4)
    assert c.bold and c.attached == frozenset({0, 2})
    assert c.label() == "D1-/D3-*"
    assert not Color.from_label("D2", 3).bold


def test_g2_prime_color_sum(catalog):
    inst = system(catalog, "G'2(1)")
    sys = inst.system
    row = sys.pairing[1]
    js = [sys.color_index("D1+"), sys.color_index("D1-")]
    assert [row[j] for j in js] == [-2, -1]
    assert check_axioms(sys).ok


def test_b_prime_n_2_color_sum(catalog):
    sys = system(catalog, "B'n(2)", 5).system
    assert check_axioms(sys).ok


def test_a_n_steps(catalog):
    sys = system(catalog, "An(1)", 4, 2).system
    bold = sys.bold()
    assert len(bold) == 2
    assert column_sum_zero(sys, bold)
    assert not column_sum_zero(sys, [0])
    assert quotient_generator(sys, bold) == (1, 1)
    assert defect_check(sys, bold)
    assert positive_combination_exists(sys, bold)


def test_c_n_4_steps(catalog):
    sys = system(catalog, "Cn(4)", 5).system
    bold = sys.bold()
    assert column_sum_zero(sys, bold)
    assert quotient_generator(sys, bold) == (1, 2)
    assert defect_check(sys, bold)


def test_quotient_generators(catalog):
    assert quotient_generator(*_bold(catalog, "Cn(3)", 5, 2)) == (1, 2, 1)
    assert quotient_generator(*_bold(catalog, "F4(3)")) == (1, 2, 1, 2)


def _bold(catalog, iid, n=None, nu=None):
    sys = system(catalog, iid, n, nu).system
    return sys, sys.bold()


def test_properness():
    assert properness((1, 1))
    assert not properness((1, 0))
    assert properness((2, 1, 1))


def test_defect_needs_a_square_block(catalog):
    sys = system(catalog, "An(1)", 4, 2).system
    assert not defect_check(sys, [0, 1, 2])


def test_count_check():
    assert count_check("Bn", 4)
    assert count_check("G2")
    assert count_check("C'n", 5)


def test_verify_entry():
    assert verify_entry("An(1)", 4, 2).ok
    assert verify_entry("F4(2)").ok
    with pytest.raises(UnknownEntryError):
        verify_entry("X9(1)")


def test_corrupted_entry_fails(catalog):
    inst = system(catalog, "An(1)", 4, 2)
    sys = inst.system
    rows = [list(r) for r in sys.pairing]
    rows[0][0] += 1
    bad = replace(sys, pairing=tuple(map(tuple, rows)))
    rep = verify_system(bad, inst.parent)
    assert not rep.ok
    assert all(c.witness for c in rep.failures())


def test_c_prime_n_1_zeroed_entry(catalog):
    inst = system(catalog, "C'n(1)", 5)
    sys = inst.system
    j = sys.color_index("D2-*")
    rows = [list(r) for r in sys.pairing]
    rows[0][j] = 0
    bad = replace(sys, pairing=tuple(map(tuple, rows)))
    rep = verify_system(bad, inst.parent)
    failed = {c.name.split(":")[0].split("-")[0] for c in rep.failures()}
    assert failed & {"step1", "step2"}


def test_pairing_shape_is_checked(catalog):
    sys = system(catalog, "An(1)", 4, 2).system
    with pytest.raises(MalformedInputError):
        replace(sys, pairing=sys.pairing[:1])


def test_every_catalog_instance_passes(catalog):
    for inst in catalog.instances(6):
        assert survives(inst.system, inst.parent), inst.label()
