import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualgroups.errors import DegenerateInputError, MalformedInputError, NotInConeError
from dualgroups.functor import build_eta
from dualgroups.roots import DynkinType, build
from dualgroups.spherical import check_wss, dual_datum, make_datum
from dualgroups.valuations import (
    face_roots,
    in_cone,
    quotient_datum,
    random_cone_point,
    valuation_from_values,
    value,
)

from support import small_rank_instances


@pytest.fixture
def an1():
    return make_datum(build("A4"), [(1, 1, 0, 0), (0, 0, 1, 1)], [])


def test_cone_membership():
    d = make_datum(build("A2"), [(1, 1)], [])
    assert in_cone(d, (0,))
    assert in_cone(d, (-1,))
    assert not in_cone(d, (1,))
    with pytest.raises(MalformedInputError):
        in_cone(d, (0, 0))


def test_faces(an1):
    assert len(face_roots(an1, (0, 0))) == 2
    v = valuation_from_values(an1, [0, -1])
    assert [s.coeffs for s in face_roots(an1, v)] == [(1, 1, 0, 0)]
    assert face_roots(an1, valuation_from_values(an1, [-1, -2])) == []
    with pytest.raises(NotInConeError):
        face_roots(an1, valuation_from_values(an1, [1, 0]))


def test_quotient_keeps_the_face(an1):
    v = valuation_from_values(an1, [0, -1])
    q = quotient_datum(an1, v)
    assert [s.coeffs for s in q.sigma] == [(1, 1, 0, 0)]
    assert q.xi_tilde.rank == 1
    assert dual_datum(q).dynkin == DynkinType.parse("A1")


def test_interior_quotient_is_a_torus(an1):
    q = quotient_datum(an1, valuation_from_values(an1, [-1, -3]))
    assert q.sigma == ()
    dd = dual_datum(q)
    assert dd.dynkin.components == () and dd.torus_rank == 1


def test_zero_valuation_is_rejected(an1):
    with pytest.raises(DegenerateInputError):
        quotient_datum(an1, (0, 0))


def test_values_are_hit():
    d = make_datum(build("B3"), [(1, 2, 3)], [0, 1], [(1, 2, 3), (1, 0, 0)])
    v = valuation_from_values(d, [Fraction(-1, 2)], [3])
    assert value(d, v, (1, 2, 3)) == Fraction(-1, 2)


def test_random_points_on_catalog_cones():
    rng = random.Random(7)
    for inst in small_rank_instances()[:25]:
        d = inst.datum
        v = random_cone_point(d, rng)
        assert in_cone(d, v)
        q = quotient_datum(d, v)
        assert {s.coeffs for s in q.sigma} == {s.coeffs for s in face_roots(d, v)}
        assert check_wss(q).ok
        dual_datum(q)
        build_eta(q, d)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_face_monotonicity(data):
    insts = small_rank_instances()
    inst = data.draw(st.sampled_from(insts))
    d = inst.datum
    k = len(d.sigma)
    neg = st.fractions(max_value=0, min_value=-5, max_denominator=4)
    a = data.draw(st.lists(neg, min_size=k, max_size=k))
    b = data.draw(st.lists(neg, min_size=k, max_size=k))
    v = valuation_from_values(d, a)
    w = valuation_from_values(d, b)
    vw = tuple(x + y for x, y in zip(v, w))
    face_v = {s.coeffs for s in face_roots(d, v)}
    face_vw = {s.coeffs for s in face_roots(d, vw)}
    assert face_vw <= face_v
