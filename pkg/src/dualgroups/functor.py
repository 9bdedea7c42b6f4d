"""Inclusion of dual groups for rank-one varieties and their parabolic quotients.

For Y of rank one with spherical root tau and a quotient X of Y, the
associated coroots tau^wedge must sit inside the root system spanned by
Sigma^wedge(X).  Three cases occur: Sigma^wedge = Sigma^vee (A), a single
associated coroot that is the highest root with a unique restriction (B),
and the D_n(1) items, settled by a bracket identity (C).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .chevalley import dn_identity_report
from .errors import DualGroupError, NoEtaError, SpanError
from .lattice import LatticeMap, has_finite_kernel, inclusion_map, is_sublattice, solve_rational
from .report import Report
from .roots import DynkinType, subsystem
from .spherical import WeakSphericalDatum, associated_base, sigma_wedge

CASE_TEXT = {
    "A": "Sigma^wedge = Sigma^vee and tau^wedge in Phi^wedge",
    "B": "highest root with unique restriction",
    "C": "D_n(1) bracket identity",
}


def parse_combination(text: str) -> dict:
    """``g1+2s2-s3`` -> {'g1': 1, 's2': 2, 's3': -1}."""
    out = {}
    for term in text.replace(" ", "").replace("-", "+-").split("+"):
        if not term:
            continue
        m = re.match(r"^(-?\d*)([A-Za-z][\w.]*)$", term)
        if not m:
            raise ValueError(f"bad term {term!r}")
        c = m.group(1)
        c = 1 if c == "" else (-1 if c == "-" else int(c))
        out[m.group(2)] = out.get(m.group(2), 0) + c
    return {k: v for k, v in out.items() if v}


def parse_wedge_expectation(text: str) -> list[dict]:
    text = text.strip()
    if text.startswith("{"):
        return [parse_combination(t) for t in text.strip("{}").split(",")]
    return [parse_combination(text)]


def format_combination(comb: dict, labels) -> str:
    parts = []
    for lab in labels:
        c = comb.get(lab, 0)
        if c:
            parts.append((lab if c == 1 else f"{c}{lab}") if c > 0 else f"-{lab}" if c == -1 else f"{c}{lab}")
    return "+".join(parts).replace("+-", "-") or "0"


def _canon(combs):
    return sorted(tuple(sorted(c.items())) for c in combs)


def tau_wedge(y: WeakSphericalDatum, x: WeakSphericalDatum) -> list[dict]:
    """tau^wedge of the rank-one Y as combinations over Sigma^wedge(X)."""
    if len(y.sigma) != 1:
        raise DualGroupError("Y must have rank one")
    rs = x.ambient
    base = associated_base(x)
    out = []
    for c in sigma_wedge(rs, y.sigma[0]):
        sol = solve_rational(base.wedge, c)
        if sol is None:
            raise SpanError(f"{c} is not in the span of Sigma^wedge")
        comb = {}
        for lab, q in zip(base.labels, sol):
            if q:
                if q.denominator != 1:
                    raise SpanError(f"non-integral coefficient {q} for {lab}")
                comb[lab] = int(q)
        out.append(comb)
    return out


def _dn1_parameters(x: WeakSphericalDatum):
    rs = x.ambient
    comps = rs.dynkin.components
    if len(comps) != 1 or comps[0][0] != "D":
        return None
    n = comps[0][1]
    for nu in range(1, n - 1):
        s1 = tuple(1 if i < nu else 0 for i in range(n))
        s2 = tuple(0 if i < nu else (2 if i < n - 2 else 1) for i in range(n))
        if [s.coeffs for s in x.sigma] == [s1, s2]:
            return n, nu
    return None


def inclusion_case(y: WeakSphericalDatum, x: WeakSphericalDatum) -> str:
    wedge = tau_wedge(y, x)
    if all(s.is_root for s in x.sigma):
        return "A"
    if len(wedge) == 1:
        return "B"
    if _dn1_parameters(x) is not None and y.sigma[0].kind == "Dn":
        return "C"
    raise DualGroupError("configuration fits none of the three inclusion cases")


@dataclass
class InclusionReport:
    case: str | None
    eta: LatticeMap | None
    finite_kernel: bool
    report: Report = field(default_factory=Report)
    tau_wedge: list = field(default_factory=list)
    labels: tuple = ()

    @property
    def ok(self) -> bool:
        return self.report.ok and self.finite_kernel


def build_eta(y: WeakSphericalDatum, x: WeakSphericalDatum):
    """Inclusion Xi~(Y) -> Xi~(X) plus its finite-kernel verdict."""
    if y.ambient.cartan != x.ambient.cartan:
        raise NoEtaError("Y and X live over different root systems")
    if not is_sublattice(y.xi_tilde, x.xi_tilde):
        raise NoEtaError("Xi~(Y) is not contained in Xi~(X)")
    if not is_sublattice(y.z_sigma(), x.z_sigma()):
        raise NoEtaError("Z.Sigma(Y) is not contained in Z.Sigma(X)")
    m = inclusion_map(y.xi_tilde, x.xi_tilde)
    return m, has_finite_kernel(m)


def restriction(x: WeakSphericalDatum, coroot) -> tuple:
    rs = x.ambient
    return tuple(rs.pairing(b, coroot) for b in x.xi_tilde.basis)


def verify_inclusion(y: WeakSphericalDatum, x: WeakSphericalDatum, expect: dict | None = None) -> InclusionReport:
    expect = expect or {}
    rep = Report()
    res = InclusionReport(None, None, False, rep)
    rs = x.ambient
    try:
        base = associated_base(x)
    except DualGroupError as exc:
        rep.add("sigma-wedge-base", False, str(exc))
        return res
    res.labels = base.labels
    if "wedge" in expect:
        want = DynkinType.parse(expect["wedge"]).canonical()
        got = base.wedge_type.canonical()
        rep.add("wedge-type", want == got, f"computed {got}, table {want}")
    try:
        tw = tau_wedge(y, x)
    except DualGroupError as exc:
        rep.add("tau-wedge", False, str(exc))
        return res
    res.tau_wedge = tw
    shown = ", ".join(format_combination(c, base.labels) for c in tw)
    if "tau_wedge" in expect:
        want = parse_wedge_expectation(expect["tau_wedge"])
        rep.add("tau-wedge", _canon(want) == _canon(tw), f"computed {{{shown}}}, table {expect['tau_wedge']}")
    try:
        case = inclusion_case(y, x)
    except DualGroupError as exc:
        rep.add("case", False, str(exc))
        return res
    res.case = case
    if "case" in expect:
        rep.add("case", case == expect["case"], f"computed {case}, table {expect['case']}")

    sub = subsystem(rs.dual(), base.wedge)
    tau_vees = sigma_wedge(rs, y.sigma[0])
    if case == "A":
        missing = [c for c in tau_vees if not sub.contains(c)]
        rep.add("case-A-roots", not missing, f"not in Phi^wedge: {missing}")
    elif case == "B":
        (tv,) = tau_vees
        try:
            top, _ = sub.highest_root()
            rep.add("case-B-highest", top == tv, f"highest {top}, tau^v {tv}")
        except DualGroupError as exc:
            rep.add("case-B-highest", False, str(exc))
        target = restriction(x, tv)
        same = [r for r in sub.roots if restriction(x, r) == target]
        rep.add("case-B-unique", len(same) == 1, f"{len(same)} roots restrict like tau^v")
    else:
        n, nu = _dn1_parameters(x)
        dn = dn_identity_report(n, nu)
        rep.add("case-C-bracket", dn.holds, dn.witness)

    try:
        eta, finite = build_eta(y, x)
        res.eta, res.finite_kernel = eta, finite
        rep.add("eta", finite, "eta has infinite kernel")
    except NoEtaError as exc:
        rep.add("eta", False, str(exc))
    return res


def verify_instance(inst) -> InclusionReport:
    y = inst.family.rank_one_datum(inst.n)
    return verify_inclusion(y, inst.datum, inst.item.expect)


def verify_main_theorem(n_max: int = 8, catalog=None):
    """(label, Report) for every catalog instance with n <= n_max."""
    from .catalog import load_catalog

    catalog = catalog or load_catalog()
    blocks = []
    for inst in catalog.instances(n_max):
        blocks.append((inst.label(), verify_instance(inst).report))
    return blocks
