"""Luna spherical systems and the six-step check for parabolic quotients.

A system carries its colors as columns of the pairing matrix
``pairing[i][j] = c(D_j, sigma_i)``.  Step 1 runs the checkable subset of
Luna's axioms implemented here; steps 2-5 validate a candidate set D0 of
(bold) colors and the quotient it defines; step 6 counts family items.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import MalformedInputError, NotRankOneError, NotSphericalRootError, UnknownEntryError
from .lattice import canonical_form, orthogonal_complement, rational_rank
from .report import Report
from .roots import RootSystem
from .spherical import SphericalRoot, check_wss, classify, make_datum

_LABEL = re.compile(r"^D(\d+)([+-]?)$")


@dataclass(frozen=True)
class Color:
    id: str
    attached: frozenset  # declared simple roots (0-based)
    bold: bool = False
    sign: str = ""

    @classmethod
    def from_label(cls, label: str, rank: int | None = None) -> "Color":
        """Parse ``D3+``, ``D1*`` or ``D1+/D3+`` (one color attached to several roots)."""
        bold = label.endswith("*")
        core = label[:-1] if bold else label
        attached = set()
        signs = set()
        for part in core.split("/"):
            m = _LABEL.match(part)
            if not m:
                raise MalformedInputError(f"bad color label {label!r}")
            k = int(m.group(1))
            if k < 1 or (rank is not None and k > rank):
                raise MalformedInputError(f"color {label!r} refers to a simple root out of range")
            attached.add(k - 1)
            signs.add(m.group(2))
        sign = signs.pop() if len(signs) == 1 else "?"
        return cls(core, frozenset(attached), bold, sign)

    def label(self) -> str:
        return self.id + ("*" if self.bold else "")


@dataclass(frozen=True)
class SphericalSystem:
    ambient: RootSystem
    sp: frozenset
    sigma: tuple  # SphericalRoot
    colors: tuple  # Color
    pairing: tuple  # rows over sigma, columns over colors
    tau_coeffs: tuple | None = None

    def __post_init__(self):
        if len(self.pairing) != len(self.sigma):
            raise MalformedInputError("one pairing row per spherical root expected")
        for row in self.pairing:
            if len(row) != len(self.colors):
                raise MalformedInputError("pairing row length differs from the number of colors")
        if self.tau_coeffs is not None and len(self.tau_coeffs) != len(self.sigma):
            raise MalformedInputError("tau needs one coefficient per spherical root")
        ids = [c.id for c in self.colors]
        if len(set(ids)) != len(ids):
            raise MalformedInputError(f"duplicate color ids in {ids}")

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.pairing)

    def color_index(self, cid: str) -> int:
        for j, c in enumerate(self.colors):
            if c.id == cid or c.label() == cid:
                return j
        raise UnknownEntryError(cid)

    def bold(self) -> list[int]:
        return [j for j, c in enumerate(self.colors) if c.bold]

    def datum(self):
        return make_datum(self.ambient, [s.coeffs for s in self.sigma], self.sp)

    def sigma_in_S(self) -> dict:
        """Simple root index -> row index, for the sigma that are simple roots."""
        out = {}
        for i, s in enumerate(self.sigma):
            if sum(s.coeffs) == 1:
                out[s.coeffs.index(1)] = i
        return out

    def d2_partner(self) -> dict:
        out = {}
        for s in self.sigma:
            if s.kind == "D2":
                a, b = s.assoc.delta1, s.assoc.delta2
                out[a] = b
                out[b] = a
        return out

    def attachments(self) -> list[frozenset]:
        """Declared attachments closed under D2 partners for non-Sigma roots."""
        in_s = self.sigma_in_S()
        partner = self.d2_partner()
        out = []
        for c in self.colors:
            att = set(c.attached)
            for a in c.attached:
                if a not in in_s and a in partner:
                    att.add(partner[a])
            out.append(frozenset(att))
        return out


def build_system(rs: RootSystem, sigma: Sequence[Sequence[int]], colors: Sequence[str],
                 pairing, sp=None, tau=None) -> SphericalSystem:
    cols = tuple(Color.from_label(c, rs.rank) for c in colors)
    if sp is None:
        sp = derived_sp(rs, sigma, cols)
    sp = frozenset(sp)
    roots = tuple(classify(rs, c, sp) for c in sigma)
    return SphericalSystem(rs, sp, roots, cols, tuple(tuple(r) for r in pairing),
                           None if tau is None else tuple(tau))


def derived_sp(rs: RootSystem, sigma, colors) -> frozenset:
    """S minus every root carrying a color, D2 partners of colored roots included."""
    colored = set()
    for c in colors:
        colored |= c.attached
    for coeffs in sigma:
        supp = [i for i, x in enumerate(coeffs) if x]
        if len(supp) == 2 and all(coeffs[i] == 1 for i in supp) and rs.cartan[supp[0]][supp[1]] == 0:
            a, b = supp
            if a in colored or b in colored:
                colored |= {a, b}
    return frozenset(range(rs.rank)) - colored


# --------------------------------------------------------------------------
# step 1


def check_axioms(sys: SphericalSystem) -> Report:
    rs = sys.ambient
    rep = Report()
    # (a) classification and the weak spherical datum axioms
    bad = []
    for i, s in enumerate(sys.sigma):
        try:
            classify(rs, s.coeffs, sys.sp)
        except NotSphericalRootError as exc:
            bad.append(f"sigma{i + 1}: {exc}")
    rep.add("axiom-classify", not bad, "; ".join(bad))
    wss = check_wss(sys.datum())
    rep.add("axiom-wss", wss.ok, "; ".join(f"{c.name}: {c.witness}" for c in wss.failures()))

    in_s = sys.sigma_in_S()
    atts = sys.attachments()
    k = len(sys.sigma)

    # (b) a-type colors bounded by 1 with equality only on Sigma cap S; b-type columns forced
    bad = []
    for j, c in enumerate(sys.colors):
        col = sys.column(j)
        a_roots = [a for a in c.attached if a in in_s]
        if a_roots and len(a_roots) != len(c.attached):
            bad.append(f"{c.id}: mixes roots in and out of Sigma")
            continue
        if a_roots:
            for i in range(k):
                if col[i] > 1 or (col[i] == 1 and i not in in_s.values()):
                    bad.append(f"{c.id}: c(sigma{i + 1}) = {col[i]}")
        else:
            for a in atts[j]:
                want = tuple(rs.pair_simple(s.coeffs, a) for s in sys.sigma)
                if col != want:
                    bad.append(f"{c.id}: column {col} != <sigma, a{a + 1}^v> = {want}")
    rep.add("axiom-color-values", not bad, "; ".join(bad[:4]))

    # (c) the two colors of alpha in Sigma cap S add up to alpha^vee
    bad = []
    for a, row in sorted(in_s.items()):
        js = [j for j, c in enumerate(sys.colors) if a in c.attached]
        if len(js) != 2:
            bad.append(f"a{a + 1} has {len(js)} colors")
            continue
        want = tuple(rs.pair_simple(s.coeffs, a) for s in sys.sigma)
        got = tuple(x + y for x, y in zip(sys.column(js[0]), sys.column(js[1])))
        if got != want:
            bad.append(f"a{a + 1}: {got} != {want}")
    rep.add("axiom-color-sum", not bad, "; ".join(bad[:4]))

    # (d) D2 partners see the same column
    bad = []
    for s in sys.sigma:
        if s.kind != "D2":
            continue
        a, b = s.assoc.delta1, s.assoc.delta2
        ja = [j for j in range(len(sys.colors)) if a in atts[j]]
        jb = [j for j in range(len(sys.colors)) if b in atts[j]]
        if ja != jb:
            bad.append(f"a{a + 1}, a{b + 1} carry different colors")
    rep.add("axiom-d2-colors", not bad, "; ".join(bad))

    # (e) colors live exactly on S \ S^p
    colored = set().union(*atts) if atts else set()
    missing = [a for a in range(rs.rank) if a not in sys.sp and a not in colored]
    extra = sorted(colored & sys.sp)
    wit = []
    if missing:
        wit.append("uncolored " + ",".join(f"a{a + 1}" for a in missing))
    if extra:
        wit.append("colored S^p roots " + ",".join(f"a{a + 1}" for a in extra))
    rep.add("axiom-coverage", not wit, "; ".join(wit))
    return rep


# --------------------------------------------------------------------------
# steps 2-5


def _indices(sys, D0):
    return [sys.color_index(c) if isinstance(c, str) else c for c in D0]


def column_sum_zero(sys: SphericalSystem, D0) -> bool:
    js = _indices(sys, D0)
    return all(sum(sys.pairing[i][j] for j in js) == 0 for i in range(len(sys.sigma)))


def quotient_generator(sys: SphericalSystem, D0) -> tuple:
    js = _indices(sys, D0)
    if not js:
        raise NotRankOneError("D0 must be nonempty")
    comp = orthogonal_complement([sys.column(j) for j in js], len(sys.sigma))
    if comp.rank != 1:
        raise NotRankOneError(f"orthogonal complement has rank {comp.rank}")
    g = comp.basis[0]
    if sum(g) < 0 or (sum(g) == 0 and next(x for x in g if x) < 0):
        g = tuple(-x for x in g)
    return g


def properness(tau_coeffs) -> bool:
    return all(c > 0 for c in tau_coeffs)


def defect_check(sys: SphericalSystem, D0) -> bool:
    js = _indices(sys, D0)
    if len(js) != len(sys.sigma) or not js:
        return False
    sub = [[sys.pairing[i][j] for j in js] for i in range(len(sys.sigma))]
    cols = [[row[t] for row in sub] for t in range(len(js))]
    if rational_rank(cols) != len(js) - 1:
        return False
    for r in range(1, len(js)):
        for subset in combinations(range(len(js)), r):
            if rational_rank([cols[t] for t in subset]) != r:
                return False
    return True


def positive_combination_exists(sys: SphericalSystem, D0) -> bool:
    """Is there a strictly positive combination of the D0 columns that is >= 0?

    Exact Fourier-Motzkin elimination on lambda_j >= 1, sum_j c_ij lambda_j >= 0.
    """
    js = _indices(sys, D0)
    m = len(js)
    ineqs = []  # (coeffs, rhs): coeffs . lambda >= rhs
    for t in range(m):
        ineqs.append(([Fraction(int(u == t)) for u in range(m)], Fraction(1)))
    for i in range(len(sys.sigma)):
        ineqs.append(([Fraction(sys.pairing[i][j]) for j in js], Fraction(0)))
    for var in range(m):
        pos = [q for q in ineqs if q[0][var] > 0]
        neg = [q for q in ineqs if q[0][var] < 0]
        nxt = [q for q in ineqs if q[0][var] == 0]
        for p in pos:
            for q in neg:
                a, b = p[0][var], -q[0][var]
                coeffs = [b * x + a * y for x, y in zip(p[0], q[0])]
                nxt.append((coeffs, b * p[1] + a * q[1]))
        ineqs = nxt
    return all(rhs <= 0 for _, rhs in ineqs)


@dataclass(frozen=True)
class Parent:
    """The rank-one variety Y a quotient should reproduce."""

    tau: tuple  # spherical root over S
    sp: frozenset


def parent_colors(rs: RootSystem, parent: Parent) -> dict:
    """Colors of Y: one per simple root outside S^p(Y), value <tau, alpha^vee>."""
    return {a: rs.pair_simple(parent.tau, a) for a in range(rs.rank) if a not in parent.sp}


def check_quotient(sys: SphericalSystem, D0=None, parent: Parent | None = None) -> Report:
    """Steps 2-5 for the bold colors (or an explicit D0)."""
    rep = Report()
    js = sys.bold() if D0 is None else _indices(sys, D0)
    ids = ",".join(sys.colors[j].id for j in js)
    s = [sum(sys.pairing[i][j] for j in js) for i in range(len(sys.sigma))]
    rep.add("step2-column-sum", column_sum_zero(sys, js), f"D0={{{ids}}} sums to {tuple(s)}")

    tau = None
    try:
        gen = quotient_generator(sys, js)
    except NotRankOneError as exc:
        rep.add("step3-quotient", False, str(exc))
        gen = None
    if gen is not None:
        wit = []
        if sys.tau_coeffs is not None and tuple(abs(x) for x in gen) != tuple(abs(x) for x in sys.tau_coeffs):
            wit.append(f"complement {gen} != tau {sys.tau_coeffs}")
        if sys.tau_coeffs is not None and gen not in (sys.tau_coeffs, tuple(-x for x in sys.tau_coeffs)):
            wit.append(f"complement {gen} not +-tau")
        tau = sys.tau_coeffs if sys.tau_coeffs is not None else gen
        total = tuple(sum(t * s.coeffs[k] for t, s in zip(tau, sys.sigma)) for k in range(sys.ambient.rank))
        if parent is not None:
            if total != parent.tau:
                wit.append(f"sum tau_i sigma_i = {total} != {parent.tau}")
            want = parent_colors(sys.ambient, parent)
            rest = [j for j in range(len(sys.colors)) if j not in js]
            covered = []
            for j in rest:
                c = sys.colors[j]
                val = sum(t * x for t, x in zip(tau, sys.column(j)))
                for a in c.attached:
                    covered.append(a)
                    if a not in want:
                        wit.append(f"{c.id} sits on a{a + 1} in S^p(Y)")
                    elif want[a] != val:
                        wit.append(f"{c.id}: value {val} on tau, Y has {want[a]}")
            if sorted(covered) != sorted(want):
                wit.append(f"non-bold colors on {sorted(a + 1 for a in covered)}, Y colors on {sorted(a + 1 for a in want)}")
        rep.add("step3-quotient", not wit, "; ".join(wit))
    if tau is None:
        rep.add("step4-proper", False, "no tau")
    else:
        rep.add("step4-proper", properness(tau), f"tau={tuple(tau)}")
    rep.add("step5-defect", defect_check(sys, js), f"D0={{{ids}}}")
    return rep


def verify_system(sys: SphericalSystem, parent: Parent | None = None) -> Report:
    rep = Report()
    rep.extend(check_axioms(sys), "step1:")
    if sys.bold():
        rep.extend(check_quotient(sys, None, parent))
    return rep


def count_check(family: str, n: int | None = None) -> bool:
    from .catalog import load_catalog

    return load_catalog().family(family).count_report(n).ok


def verify_entry(entry_id: str, n: int | None = None, nu: int | None = None) -> Report:
    from .catalog import load_catalog

    return load_catalog().verify_item(entry_id, n, nu)
