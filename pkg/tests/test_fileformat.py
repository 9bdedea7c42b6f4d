import pytest

from dualgroups.errors import ParameterRangeError, ParseError
from dualgroups.fileformat import (
    eval_int,
    parse_coeffs,
    parse_index_list,
    parse_system,
    rename_duplicates,
    serialize_datum,
    serialize_system,
)

from support import catalog_instances

A4_SAMPLE = """\
# A_n(1) with n = 4, nu = 2
ambient = A 4
sigma s1 = a1..a2
sigma s2 = a3 + a4
color D1  = s1:1  s2:0
color D2* = s1:1  s2:-1
color D3* = s1:-1 s2:1
color D4  = s1:0  s2:1
tau = 1 1
"""


def test_sample_file():
    p = parse_system(A4_SAMPLE)
    assert len(p.system.sigma) == 2
    assert len(p.system.colors) == 4
    assert p.system.sp == frozenset({})
    assert p.datum.sigma_coeffs == [(1, 1, 0, 0), (0, 0, 1, 1)]


def test_templates():
    text = A4_SAMPLE.replace("A 4", "A {n}").replace("a3 + a4", "a{nu+1}..a{n}")
    p = parse_system(text, {"n": 4, "nu": 2})
    assert p.datum.sigma_coeffs[1] == (0, 0, 1, 1)
    assert eval_int("2*n - 1", {"n": 4}) == 7
    with pytest.raises(ParseError):
        eval_int("__import__('os')", {})


def test_coefficient_syntax():
    assert parse_coeffs("a1 + 2a2..a3 + a4", 4) == (1, 2, 2, 1)
    assert parse_coeffs("1 0 2", 3) == (1, 0, 2)
    assert parse_coeffs("a2..a1 + a3", 3) == (0, 0, 1)
    assert parse_index_list("2 4..6") == [2, 4, 5, 6]


@pytest.mark.parametrize("bad,needle", [
    ("ambient = A 3\nsigma s1 = 0 0 0\n", "zero"),
    ("ambient = A 3\nsigma s1 = 1 0\n", "expected 3"),
    ("ambient = A 2\nsigma s1 = a1 + a2\ncolor D1 = 1 0\n", "entries"),
    ("ambient = X 3\n", "unknown type"),
    ("ambient = A 3\nsp = 5\n", "out of range"),
    ("ambient = A 3\nsigma s1 = a4\n", "out of range"),
    ("sigma s1 = 1\n", "ambient"),
    ("ambient = A 2\nwhat is this\n", "cannot parse"),
])
def test_parse_errors(bad, needle):
    with pytest.raises(ParseError) as exc:
        parse_system(bad)
    assert needle in str(exc.value)


def test_parse_errors_carry_lines():
    with pytest.raises(ParseError) as exc:
        parse_system("ambient = A 3\n\nsigma s1 = 0 0 0\n")
    assert exc.value.line == 3


def test_duplicate_colors_are_signed():
    assert rename_duplicates(["D1", "D1*", "D2"]) == ["D1+", "D1-*", "D2"]
    with pytest.raises(ParseError):
        rename_duplicates(["D1", "D1", "D1"])


def test_catalog_round_trip():
    for inst in catalog_instances(6):
        sys = inst.system
        text = serialize_system(sys, inst.parsed.sigma_names)
        again = parse_system(text)
        assert again.system == sys, inst.label()
        assert again.datum == inst.datum
        assert parse_system(serialize_datum(inst.datum)).datum == inst.datum


def test_datum_with_lattice_rows():
    text = "ambient = B 3\nsp = 1 2\nsigma s1 = 1 2 3\nxi = 1 2 3 ; 1 0 0\n"
    d = parse_system(text).datum
    assert d.xi_tilde.rank == 2
    assert parse_system(serialize_datum(d)).datum == d


def test_instantiate_examples(catalog):
    inst = catalog.instantiate("Bn(1)", 4, 1)
    assert str(inst.datum.ambient.dynkin) == "B4"
    assert inst.datum.sigma_coeffs == [(1, 0, 0, 0), (0, 1, 1, 1)]
    f4 = catalog.instantiate("F4(2)")
    assert f4.datum.sigma_coeffs == [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]
    with pytest.raises(ParameterRangeError):
        catalog.instantiate("An(1)", 2, 2)
    with pytest.raises(ParameterRangeError):
        catalog.instantiate("An(1)", 4)


def test_catalog_size(catalog):
    assert len(catalog_instances(8)) >= 120
    assert len(catalog.items) == 22
