"""Helpers shared by the test modules."""

import random
from dataclasses import replace
from functools import lru_cache

from dualgroups.catalog import load_catalog
from dualgroups.chevalley import StructureConstants
from dualgroups.errors import DualGroupError
from dualgroups.luna import verify_system
from dualgroups.roots import build


@lru_cache(maxsize=None)
def catalog_instances(n_max=8):
    return tuple(load_catalog().instances(n_max))


def mutants(system):
    """Every copy of ``system`` with one pairing entry moved by +-1."""
    rows = [list(r) for r in system.pairing]
    for i, row in enumerate(rows):
        for j in range(len(row)):
            for delta in (1, -1):
                new = [list(r) for r in rows]
                new[i][j] += delta
                yield (i, j, delta), replace(system, pairing=tuple(tuple(r) for r in new))


def survives(system, parent) -> bool:
    """True when the pipeline accepts the system."""
    try:
        return verify_system(system, parent).ok
    except DualGroupError:
        return False


def silent_mutants(inst):
    return [where for where, m in mutants(inst.system) if survives(m, inst.parent)]


@lru_cache(maxsize=None)
def small_rank_instances(max_rank=4, n_max=8):
    return tuple(i for i in catalog_instances(n_max) if i.datum.ambient.rank <= max_rank)


def sample_valuations(count=200, seed=20240611, max_rank=4):
    """(instance, valuation) pairs drawn from cones of small catalog data."""
    from dualgroups.valuations import random_cone_point

    rng = random.Random(seed)
    pool = small_rank_instances(max_rank)
    out = []
    for _ in range(count):
        inst = rng.choice(pool)
        out.append((inst, random_cone_point(inst.datum, rng)))
    return out


def flipped_E(n):
    rs = build(f"D{n}")
    sc = StructureConstants.build(rs)
    minus = [0] * n
    plus = [0] * n
    minus[n - 2], minus[n - 1] = 1, -1
    plus[n - 2], plus[n - 1] = 1, 1
    # the correct E has a minus sign between the two terms
    return sc.e(rs.from_epsilon(minus)) + sc.e(rs.from_epsilon(plus))
