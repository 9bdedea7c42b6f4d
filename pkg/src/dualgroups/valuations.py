"""Central valuations and the faces of the valuation cone.

A valuation is a rational vector ``v`` with one entry per Hermite basis
vector of Xi~; it acts by ``v(x) = sum_k coords(x)_k v_k``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DegenerateInputError, MalformedInputError, NotInConeError
from .lattice import orthogonal_complement, rational_rank, solve_rational
from .spherical import WeakSphericalDatum, make_datum


def _as_valuation(d: WeakSphericalDatum, v) -> tuple:
    v = tuple(Fraction(x) for x in v)
    if len(v) != d.xi_tilde.rank:
        raise MalformedInputError(f"valuation has {len(v)} entries, Xi~ has rank {d.xi_tilde.rank}")
    return v


def value(d: WeakSphericalDatum, v, x) -> Fraction:
    coords = d.xi_tilde.coordinates(tuple(x))
    if coords is None:
        raise MalformedInputError(f"{tuple(x)} is not in Xi~")
    return sum((Fraction(c) * a for c, a in zip(coords, v)), Fraction(0))


def in_cone(d: WeakSphericalDatum, v) -> bool:
    v = _as_valuation(d, v)
    return all(value(d, v, s.coeffs) <= 0 for s in d.sigma)


def face_roots(d: WeakSphericalDatum, v) -> list:
    v = _as_valuation(d, v)
    vals = [value(d, v, s.coeffs) for s in d.sigma]
    if any(x > 0 for x in vals):
        raise NotInConeError(f"valuation is positive on a spherical root: {vals}")
    return [s for s, x in zip(d.sigma, vals) if x == 0]


def quotient_datum(d: WeakSphericalDatum, v) -> WeakSphericalDatum:
    """Datum of the degeneration along the central valuation v.

    Sigma(Y) is the face of v, Xi~(Y) the part of Xi~ killed by v and
    S^p is kept.
    """
    v = _as_valuation(d, v)
    if not any(v):
        raise DegenerateInputError("the zero valuation defines no degeneration")
    face = face_roots(d, v)
    scale = lcm(*(x.denominator for x in v))
    iv = tuple(int(x * scale) for x in v)
    kernel = orthogonal_complement([iv], d.xi_tilde.rank)
    rows = []
    for c in kernel.basis:
        rows.append(tuple(sum(ck * b[i] for ck, b in zip(c, d.xi_tilde.basis)) for i in range(d.ambient.rank)))
    if not rows:
        rows = [tuple(0 for _ in range(d.ambient.rank))]
    return make_datum(d.ambient, [s.coeffs for s in face], d.sp, rows)


def valuation_from_values(d: WeakSphericalDatum, targets: Sequence, free=None) -> tuple:
    """A valuation with v(sigma_i) = targets[i].

    Solved over the rational span; directions of Xi~ not spanned by Sigma get
    the values ``free`` (zero by default).
    """
    basis = d.xi_tilde.basis
    # complete Sigma to a rational basis of Xi~ with Hermite basis vectors
    frame = [s.coeffs for s in d.sigma]
    extra = []
    for b in basis:
        if rational_rank(frame + extra + [b]) > len(frame) + len(extra):
            extra.append(b)
    free = list(free or [0] * len(extra))
    vals = list(targets) + free[: len(extra)]
    frame = frame + extra
    out = []
    for b in basis:
        c = solve_rational(frame, b)
        out.append(sum((Fraction(ci) * Fraction(vi) for ci, vi in zip(c, vals)), Fraction(0)))
    return tuple(out)


def random_cone_point(d: WeakSphericalDatum, rng: random.Random, zero_prob: float = 0.4) -> tuple:
    while True:
        targets = [Fraction(0) if rng.random() < zero_prob else -Fraction(rng.randint(1, 9), rng.randint(1, 5))
                   for _ in d.sigma]
        n_extra = d.xi_tilde.rank - len(d.sigma)
        free = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n_extra)]
        v = valuation_from_values(d, targets, free)
        if any(v):
            return v
