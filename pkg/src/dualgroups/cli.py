"""Command-line interface.

Exit status: 0 when every check passes, 1 on a failed check, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .catalog import DEFAULT_NMAX, load_catalog
from .chevalley import dn_identity_report
from .errors import DualGroupError, ParseError
from .fileformat import parse_ambient, parse_system, serialize_datum
from .functor import CASE_TEXT, build_eta, format_combination, verify_inclusion, verify_instance
from .luna import Parent, verify_system
from .report import Report, render
from .roots import diagram_automorphisms, weyl_order
from .spherical import check_wss, dual_datum
from .valuations import face_roots, quotient_datum

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        return parse_system(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}")


def _entry_name(path: str) -> str:
    return Path(path).stem.replace(" ", "_")


def _emit(out, blocks, machine: bool, prose: list[str] = ()) -> int:
    if not machine:
        for line in prose:
            out.write(line + "\n")
    out.write(render(blocks))
    return EXIT_PASS if all(rep.ok for _, rep in blocks) else EXIT_FAIL


def cmd_rootinfo(args, out) -> int:
    rs = parse_ambient(args.type)
    d = rs.dynkin
    info = [
        ("type", str(d)),
        ("rank", rs.rank),
        ("positive_roots", len(rs.positive_roots)),
        ("weyl_order", weyl_order(d)),
        ("diagram_automorphisms", len(diagram_automorphisms(d))),
    ]
    if d.is_irreducible():
        info.append(("highest_root", " ".join(map(str, rs.highest_root()))))
    if args.machine:
        for k, v in info:
            out.write(f"{k}={v}\n")
    else:
        for k, v in info:
            out.write(f"{k.replace('_', ' ')}: {v}\n")
        out.write("cartan matrix:\n")
        for row in rs.cartan:
            out.write("  " + " ".join(f"{x:3d}" for x in row) + "\n")
    return EXIT_PASS


def _parent_of(parsed) -> Parent | None:
    sys_ = parsed.system
    if parsed.parent_sp is None or sys_ is None or sys_.tau_coeffs is None:
        return None
    tau = tuple(sum(t * s.coeffs[k] for t, s in zip(sys_.tau_coeffs, sys_.sigma))
                for k in range(sys_.ambient.rank))
    return Parent(tau, parsed.parent_sp)


def cmd_check(args, out) -> int:
    parsed = _read(args.file)
    name = _entry_name(args.file)
    if args.what == "wss":
        return _emit(out, [(name, check_wss(parsed.datum))], args.machine)
    if parsed.system is None:
        raise UsageError(f"{args.file}: no color lines, not a spherical system")
    rep = verify_system(parsed.system, _parent_of(parsed))
    return _emit(out, [(name, rep)], args.machine)


def cmd_dualgroup(args, out) -> int:
    parsed = _read(args.file)
    name = _entry_name(args.file)
    rep = Report()
    try:
        dd = dual_datum(parsed.datum)
    except DualGroupError as exc:
        rep.add("dual-datum", False, str(exc))
        return _emit(out, [(name, rep)], args.machine)
    rep.add("dual-datum", True)
    t = str(dd.dynkin) if dd.dynkin.components else "T"
    if args.machine:
        out.write(f"type={t} torus_rank={dd.torus_rank}\n")
    else:
        out.write(f"dual group type: {t}\ncentral torus rank: {dd.torus_rank}\n")
        for s, v in zip(dd.sigma, dd.sigma_vee):
            out.write(f"  sigma {' '.join(map(str, s))} -> sigma^v {' '.join(map(str, v))}\n")
    return _emit(out, [(name, rep)], True)


def _parse_valuation(text: str) -> tuple:
    try:
        return tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad valuation {text!r}: expected comma-separated rationals")


def cmd_quotient(args, out) -> int:
    parsed = _read(args.file)
    d = parsed.datum
    v = _parse_valuation(args.v)
    name = _entry_name(args.file)
    rep = Report()
    q = quotient_datum(d, v)
    face = {s.coeffs for s in face_roots(d, v)}
    rep.add("face", {s.coeffs for s in q.sigma} == face, "Sigma(Y) differs from the face of v")
    rep.extend(check_wss(q))
    try:
        dd = dual_datum(q)
        rep.add("dual-datum", True)
    except DualGroupError as exc:
        dd = None
        rep.add("dual-datum", False, str(exc))
    try:
        build_eta(q, d)
        rep.add("eta", True)
    except DualGroupError as exc:
        rep.add("eta", False, str(exc))
    if not args.machine:
        out.write(serialize_datum(q))
        if dd is not None:
            out.write(f"# dual group: {dd.describe()}\n")
    return _emit(out, [(name, rep)], True)


def _resolve_y(ref: str, n):
    if ref.startswith("catalog:"):
        fam = load_catalog().family(ref.split(":", 1)[1])
        return fam, fam.rank_one_datum(fam.check_n(n))
    parsed = _read(ref)
    return None, parsed.datum


def cmd_functor(args, out) -> int:
    cat = load_catalog()
    fam, y = _resolve_y(args.y, args.n)
    expect = {}
    if args.item is not None:
        if fam is None:
            raise UsageError("--item needs --y catalog:FAMILY")
        inst = cat.instantiate(f"{fam.id}({args.item})", args.n, args.nu)
        x, expect, name = inst.datum, inst.item.expect, inst.label()
    elif args.x is not None:
        if args.x.startswith("catalog:"):
            inst = cat.instantiate(args.x.split(":", 1)[1], args.n, args.nu)
            x, expect, name = inst.datum, inst.item.expect, inst.label()
        else:
            x, name = _read(args.x).datum, _entry_name(args.x)
    else:
        raise UsageError("functor needs --x or --item")
    res = verify_inclusion(y, x, expect)
    prose = []
    if res.case is not None:
        tw = ", ".join(format_combination(c, res.labels) for c in res.tau_wedge)
        prose = [f"case {res.case}: {CASE_TEXT[res.case]}", f"tau^wedge = {{{tw}}}"]
    return _emit(out, [(name, res.report)], args.machine, prose)


def cmd_paper_verify(args, out) -> int:
    cat = load_catalog()
    nmax = args.nmax
    if args.entry is not None:
        cat.item(args.entry)
    blocks = cat.verify_all(nmax, args.entry)
    if args.all or args.entry is not None:
        for inst in cat.instances(nmax, args.entry):
            blocks.append((inst.label() + ":functor", verify_instance(inst).report))
    if args.all:
        for n in range(3, min(nmax, 8) + 1):
            for nu in range(1, n - 1):
                r = dn_identity_report(n, nu)
                rep = Report()
                rep.add("dn-identity", r.holds, r.witness)
                blocks.append((f"Dn-identity[n={n},nu={nu}]", rep))
    return _emit(out, blocks, args.machine)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="report lines only, no prose")
    p = argparse.ArgumentParser(prog="dualgroups", parents=[common],
                                description="Exact verifier for dual groups of spherical varieties.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rootinfo", parents=[common], help="root system summary")
    s.add_argument("type", help="Dynkin type, e.g. B4 or A2+G2")
    s.set_defaults(func=cmd_rootinfo)

    s = sub.add_parser("check", parents=[common], help="validate a system file")
    s.add_argument("what", choices=["wss", "luna"])
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dualgroup", parents=[common], help="dual group of a datum")
    s.add_argument("file")
    s.set_defaults(func=cmd_dualgroup)

    s = sub.add_parser("quotient", parents=[common], help="degeneration along a central valuation")
    s.add_argument("file")
    s.add_argument("--v", required=True, help="comma-separated rationals on the Hermite basis of Xi~")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("functor", parents=[common], help="check G^v_Y inside G^v_X")
    s.add_argument("--y", required=True, help="catalog:FAMILY or a file")
    s.add_argument("--x", help="catalog:ITEM or a file")
    s.add_argument("--item", type=int, help="item number within the family of --y")
    s.add_argument("--n", type=int)
    s.add_argument("--nu", type=int)
    s.set_defaults(func=cmd_functor)

    s = sub.add_parser("paper", parents=[common], help="re-verify the shipped tables")
    psub = s.add_subparsers(dest="paper_command", required=True)
    v = psub.add_parser("verify", parents=[common])
    v.add_argument("--entry")
    v.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    v.add_argument("--all", action="store_true", help="add the inclusion checks and bracket identities")
    v.set_defaults(func=cmd_paper_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not hasattr(args, "machine"):
        args.machine = False
    try:
        return args.func(args, out)
    except (UsageError, DualGroupError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
