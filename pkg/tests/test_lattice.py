from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualgroups.errors import MalformedInputError
from dualgroups.lattice import (
    canonical_form,
    dot,
    has_finite_kernel,
    inclusion_map,
    is_member,
    is_sublattice,
    orthogonal_complement,
    primitive_scale,
    rational_rank,
    solve_rational,
)

vectors = st.lists(st.integers(-6, 6), min_size=3, max_size=3).map(tuple)
generators = st.lists(vectors, min_size=1, max_size=4)


def test_hermite_form_of_a_simple_lattice():
    L = canonical_form([(2, 0), (0, 3), (4, 3)])
    assert L.basis == ((2, 0), (0, 3))
    assert (6, -3) in L
    assert (1, 0) not in L


def test_zero_generators_give_rank_zero():
    L = canonical_form([(0, 0, 0)])
    assert L.rank == 0
    assert is_member(L, (0, 0, 0))
    assert not is_member(L, (1, 0, 0))


def test_empty_generating_set_needs_a_rank():
    with pytest.raises(MalformedInputError):
        canonical_form([])
    assert canonical_form([], 2).rank == 0


def test_length_mismatch_raises():
    with pytest.raises(MalformedInputError):
        canonical_form([(1, 0), (1, 0, 0)])


def test_primitive_scale():
    assert primitive_scale((2, 4, -6)) == (1, 2, -3)
    assert primitive_scale((0, -3)) == (0, -1)


def test_rational_tools():
    assert rational_rank([(1, 2), (2, 4)]) == 1
    assert solve_rational([(1, 1, 0), (0, 1, 1)], (1, 2, 1)) == (1, 1)
    assert solve_rational([(2, 0)], (1, 0)) == (Fraction(1, 2),)
    assert solve_rational([(1, 0)], (0, 1)) is None


def test_orthogonal_complement_is_saturated():
    K = orthogonal_complement([(2, 4, 0)])
    assert K.rank == 2
    for b in K.basis:
        assert dot(b, (2, 4, 0)) == 0
    assert (-2, 1, 0) in K


def test_inclusion_and_kernel():
    sub = canonical_form([(2, 0, 0), (0, 2, 2)])
    sup = canonical_form([(1, 0, 0), (0, 1, 1)])
    m = inclusion_map(sub, sup)
    assert m.matrix == ((2, 0), (0, 2))
    assert has_finite_kernel(m)
    with pytest.raises(MalformedInputError):
        inclusion_map(sup, sub)


@given(generators)
def test_hermite_form_is_canonical(gens):
    L = canonical_form(gens, 3)
    assert canonical_form(L.basis, 3) == L
    assert canonical_form(list(reversed(gens)), 3) == L
    for g in gens:
        assert g in L


@given(generators, vectors, vectors)
def test_membership_closed_under_sums(gens, a, b):
    L = canonical_form(gens, 3)
    x = tuple(sum(c * g[i] for c, g in zip(a, gens)) for i in range(3))
    y = tuple(sum(c * g[i] for c, g in zip(b, gens)) for i in range(3))
    assert tuple(p - q for p, q in zip(x, y)) in L


@settings(max_examples=60)
@given(generators)
def test_sublattice_of_its_saturation(gens):
    L = canonical_form(gens, 3)
    sat = orthogonal_complement(orthogonal_complement(gens, 3).basis, 3) if L.rank else canonical_form([], 3)
    assert is_sublattice(L, sat)
    assert sat.rank == L.rank
