"""Command line front end: ``tropdiff <command> ...``.

Exit codes: 0 on success, 1 on a domain error, 2 on a syntax error or
unknown command.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import analysis, initial, solver, tropical
from .diffalg import DiffMonomial
from .errors import ParseError, TropdiffError, UnknownCommand, VariableIndexError
from .parse import parse_natset, parse_poly, parse_series
from .series import INF

DEFAULT_TRUNC = 32

COMMANDS = ("val", "trop", "eval", "solve", "initial", "initial-hugao", "lift", "check-basis",
            "theorem-pp", "suppmin", "matroid-check", "qab-audit", "denef", "paper-examples")


@dataclass
class Report:
    command: str
    result: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    ok: bool = True
    json_mode: bool = False

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "ok": self.ok, "result": _jsonable(self.result),
                           "meta": _jsonable(self.meta)}, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        out = list(self.lines)
        for k, v in self.meta.items():
            out.append(f"# {k} = {_scalar_text(v)}")
        return "\n".join(out)


def _scalar_text(v) -> str:
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar_text(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, frozenset, set)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (tropical.NatSet, DiffMonomial)):
        return v.to_text()
    return v


def _tv(v) -> str:
    return "inf" if v == INF else str(v)


def _sets_text(S) -> str:
    return "(" + ", ".join(s.to_text() for s in S) + ")"


def _universe(args, n):
    return solver.CandidateUniverse(n, args.tmax, args.pmax)


def _gens(args, n=None):
    if not args.gen:
        raise TropdiffError("at least one --gen is required")
    texts = args.gen
    if n is None:
        polys = [parse_poly(g) for g in texts]
        n = max(p.n_vars for p in polys)
    return [parse_poly(g, n_vars=n) for g in texts], n


def _sets(args, n):
    if not args.set:
        raise TropdiffError("--set is required")
    S = tuple(parse_natset(s) for s in args.set)
    if len(S) == 1 and n > 1:
        S = S * n
    return S


# -- commands -------------------------------------------------------------------

def cmd_val(args) -> Report:
    S = parse_natset(args.natset)
    values = {j: S.val(j) for j in args.j}
    lines = [f"Val_S({j}) = {_tv(v)}" for j, v in values.items()]
    return Report("val", {"set": S.to_text(), "values": values, "lines": lines}, lines)


def cmd_trop(args) -> Report:
    P = parse_poly(args.poly)
    tp = tropical.tropicalize(P)
    text = tp.to_text()
    return Report("trop", {"trop": text, "n_vars": P.n_vars}, [text], {"trunc": "exact"})


def cmd_eval(args) -> Report:
    P = parse_poly(args.poly)
    S = _sets(args, P.n_vars)
    tp = tropical.tropicalize(P)
    chk = tropical.is_tropical_solution(tp, S)
    if chk.witness == "infinite":
        wit = "infinite"
    elif chk.is_solution:
        wit = [m.to_text() for m in chk.witness]
    else:
        wit = chk.witness.to_text()
    lines = [f"trop(P)(S) = {_tv(chk.value)}", f"solution: {str(chk.is_solution).lower()}",
             f"witness: {wit if isinstance(wit, str) else ', '.join(wit)}"]
    return Report("eval", {"value": chk.value, "is_solution": chk.is_solution, "witness": wit,
                           "sets": _sets_text(S), "lines": lines}, lines)


def _report_solutions(rep) -> tuple:
    sols = [_sets_text(S) for S in rep.solutions]
    friendly = ["(" + ", ".join(s.describe() for s in S) + ")" for S in rep.solutions]
    lines = [f"{len(sols)} solutions in a universe of {len(rep.universe)}"]
    lines += [f"  {a}    {b}" for a, b in zip(sols, friendly)]
    return {"count": len(sols), "solutions": sols, "described": friendly, "claim": rep.claim}, lines


def cmd_solve(args) -> Report:
    gens, n = _gens(args)
    U = _universe(args, n)
    rep = solver.solve_diff_ideal(gens, args.depth, U)
    result, lines = _report_solutions(rep)
    lines.append(rep.claim)
    return Report("solve", result, lines, {"K": args.depth, "universe": U.describe(), "trunc": "exact"})


def cmd_initial(args, hugao=False) -> Report:
    P = parse_poly(args.poly)
    S = _sets(args, P.n_vars)
    out = initial.initial_part_hu_gao(P, S) if hugao else initial.initial_part(P, S)
    text = out.to_text()
    name = "initial-hugao" if hugao else "initial"
    return Report(name, {"initial": text, "sets": _sets_text(S),
                         "monomial": (len(out.terms) == 1)}, [text])


def cmd_lift(args) -> Report:
    raw = []
    for item in args.part:
        pieces = item.split("|")
        if len(pieces) != 3:
            raise ParseError("a part is written 'alpha|monomial|polynomial'", item, 0)
        raw.append(pieces)
    n = max(parse_poly(g).n_vars for *_, g in raw)
    parts = []
    for alpha, mono, g in raw:
        mp = parse_poly(mono, n_vars=n)
        if len(mp.terms) != 1:
            raise TropdiffError(f"{mono!r} is not a monomial")
        (m, c), = mp.terms.items()
        parts.append((Fraction(alpha) * c[0], m, parse_poly(g, n_vars=n)))
    S = _sets(args, n)
    H = initial.lift_initial_combination(parts, S)
    In = initial.initial_part(H, S)
    lines = [f"H = {H.to_text()}", f"In_S(H) = {In.to_text()}"]
    return Report("lift", {"H": H.to_text(), "initial": In.to_text(), "lines": lines}, lines)


def cmd_check_basis(args) -> Report:
    gens, n = _gens(args)
    refs = [parse_poly(g, n_vars=n) for g in (args.ref_gen or [])]
    if not refs:
        raise TropdiffError("at least one --ref-gen is required")
    U = _universe(args, n)
    ref = solver.solve_diff_ideal(refs, args.ref_depth or args.depth, U)
    chk = solver.check_basis(gens, ref, args.depth, U)
    disc = [{"candidate": _sets_text(d["candidate"]), "kind": d["kind"],
             "first_failing": d["first_failing"]} for d in chk.discrepancies]
    lines = [f"basis: {str(chk.ok).lower()}", f"discrepancies: {len(disc)}"]
    lines += [f"  {d['kind']} {d['candidate']}" for d in disc]
    return Report("check-basis", {"basis": chk.ok, "discrepancies": disc, "lines": lines}, lines,
                  {"K": args.depth, "universe": U.describe()})


def _known_solutions(args, gens, n):
    known = []
    for init in args.init or []:
        vals = [Fraction(v) for v in init.split(",") if v.strip()]
        known.append((solver.linear_ode_series(gens[0], vals, args.trunc),))
    for sol in args.solution or []:
        comps = [parse_series(c, trunc=args.trunc) for c in sol.split(";")]
        if len(comps) != n:
            raise TropdiffError(f"solution {sol!r} has {len(comps)} components, need {n}")
        known.append(tuple(comps))
    return known


def cmd_theorem_pp(args) -> Report:
    gens, n = _gens(args)
    U = _universe(args, n)
    known = _known_solutions(args, gens, n)
    rep = solver.theorem_pp_compare(gens, known, args.depth, U, args.product_depth)
    s1, s2, s3 = ([_sets_text(S) for S in X] for X in (rep.set1, rep.set2, rep.set3))
    lines = [f"(1) trop(Sol): {len(s1)}", f"(2) Sol(trop): {len(s2)}", f"(3) monomial-free: {len(s3)}"]
    for label, X in (("1", s1), ("2", s2), ("3", s3)):
        lines += [f"  [{label}] {x}" for x in X]
    lines.append(f"equal: {str(rep.equal).lower()}")
    lines.append(f"containment violations: {len(rep.violations)}")
    lines.append(rep.note)
    result = {"sizes": [len(s1), len(s2), len(s3)], "set1": s1, "set2": s2, "set3": s3,
              "equal": rep.equal, "violation_count": len(rep.violations),
              "violations": [(k, _sets_text(S)) for k, S in rep.violations], "note": rep.note}
    return Report("theorem-pp", result, lines, {"K": args.depth, "product_depth": args.product_depth,
                                                "universe": U.describe(), "trunc": args.trunc},
                  ok=not rep.violations)


def cmd_suppmin(args) -> Report:
    P = parse_poly(args.poly)
    sm = sorted(analysis.supp_min(P))
    st = analysis.suppmin_stabilization(P, args.depth)
    lines = [f"supp_min = {{{', '.join(map(str, sm))}}}"]
    if st.stabilized:
        lines.append(f"L = {{{', '.join(map(str, sorted(st.offsets)))}}} from k = {st.k_stable}")
    else:
        lines.append("not stabilized")
    return Report("suppmin", {"supp_min": sm, "stabilized": st.stabilized,
                              "L": sorted(st.offsets), "k_stable": st.k_stable, "lines": lines},
                  lines, {"k_max": args.depth})


def cmd_matroid_check(args) -> Report:
    rs = args.r or list(range(2, 9))
    results, lines = {}, []
    for r in rs:
        chk = analysis.check_uniform_matroid(r)
        zero = sum(1 for _, d in chk.minors if d.is_zero())
        results[r] = {"uniform": chk.uniform, "minors": len(chk.minors), "vanishing": zero}
        lines.append(f"r = {r}: {len(chk.minors)} minors, {zero} vanishing, uniform U(2,{r + 1}): "
                     f"{str(chk.uniform).lower()}")
    return Report("matroid-check", {"checks": results, "lines": lines}, lines,
                  ok=all(v["uniform"] for v in results.values()))


def cmd_qab_audit(args) -> Report:
    gens, _ = _gens(args, n=1)
    rep = analysis.coverage_audit(gens, args.r, args.depth)
    unc = [f"{{{a},{b}}}" for a, b in rep.uncovered]
    lines = [f"pairs: {len(rep.pairs)}", f"covered: {len(rep.covered)}", f"uncovered: {len(unc)}"]
    if unc:
        lines.append("  first uncovered: " + unc[0])
    lines += [f"|G_r| = {rep.g_r}", f"distinct 3-element supp_min in G_r: {rep.triples_in_g_r}",
              f"pairs covered by 3-element witnesses: {rep.covered_by_triples}",
              f"counting inequality holds: {str(rep.inequality_holds).lower()}",
              f"counting forces uncovered pairs: {str(rep.forced_failure).lower()}"]
    return Report("qab-audit", {"pairs": len(rep.pairs), "covered": len(rep.covered),
                                "uncovered": unc, "G_r": rep.g_r, "triples": rep.triples_in_g_r,
                                "covered_by_triples": rep.covered_by_triples,
                                "inequality_holds": rep.inequality_holds,
                                "forced_failure": rep.forced_failure, "lines": lines},
                  lines, {"r": args.r, "K": args.depth})


def cmd_denef(args) -> Report:
    phi1 = analysis.denef_series(Fraction(args.phi2), args.trunc)
    coeffs = [str(c) for c in phi1.coeffs]
    lines = [f"phi1 = {phi1.to_text()}", "substitution check: passed",
             f"support: {{{', '.join(str(i) for i in sorted(phi1.support()))}}}"]
    return Report("denef", {"coefficients": coeffs, "series": phi1.to_text(), "lines": lines},
                  lines, {"trunc": args.trunc})


def cmd_paper_examples(args) -> Report:
    from .examples import run_paper_examples

    results = run_paper_examples()
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {detail}")
             for name, ok, detail in results]
    failed = sum(1 for _, ok, _ in results if not ok)
    lines.append(f"{len(results) - failed}/{len(results)} examples passed")
    return Report("paper-examples", {"results": [{"name": n, "ok": ok, "detail": d}
                                                 for n, ok, d in results], "failed": failed},
                  lines, ok=failed == 0)


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNC)
    common.add_argument("--depth", type=int, default=9)
    common.add_argument("--product-depth", type=int, default=1)
    common.add_argument("--tmax", type=int, default=3)
    common.add_argument("--pmax", type=int, default=3)
    common.add_argument("--json", action="store_true")
    common.add_argument("--set", action="append")
    common.add_argument("--gen", action="append")

    parser = argparse.ArgumentParser(prog="tropdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("val", parents=[common])
    p.add_argument("natset")
    p.add_argument("j", type=int, nargs="+")
    sub.add_parser("trop", parents=[common]).add_argument("poly")
    sub.add_parser("eval", parents=[common]).add_argument("poly")
    sub.add_parser("solve", parents=[common])
    sub.add_parser("initial", parents=[common]).add_argument("poly")
    sub.add_parser("initial-hugao", parents=[common]).add_argument("poly")
    sub.add_parser("lift", parents=[common]).add_argument("--part", action="append", required=True)
    p = sub.add_parser("check-basis", parents=[common])
    p.add_argument("--ref-gen", action="append")
    p.add_argument("--ref-depth", type=int)
    p = sub.add_parser("theorem-pp", parents=[common])
    p.add_argument("--init", action="append", help="initial values a0,a1,... of a series solution")
    p.add_argument("--solution", action="append", help="known solution 'phi1;phi2;...' in t")
    sub.add_parser("suppmin", parents=[common]).add_argument("poly")
    sub.add_parser("matroid-check", parents=[common]).add_argument("r", type=int, nargs="*")
    sub.add_parser("qab-audit", parents=[common]).add_argument("--r", type=int, required=True)
    sub.add_parser("denef", parents=[common]).add_argument("--phi2", required=True)
    sub.add_parser("paper-examples", parents=[common])
    return parser


HANDLERS = {
    "val": cmd_val, "trop": cmd_trop, "eval": cmd_eval, "solve": cmd_solve,
    "initial": cmd_initial, "initial-hugao": lambda a: cmd_initial(a, hugao=True),
    "lift": cmd_lift, "check-basis": cmd_check_basis, "theorem-pp": cmd_theorem_pp,
    "suppmin": cmd_suppmin, "matroid-check": cmd_matroid_check, "qab-audit": cmd_qab_audit,
    "denef": cmd_denef, "paper-examples": cmd_paper_examples,
}


def run_command(argv) -> tuple:
    """Dispatch one invocation; returns ``(report, exit_code)``."""
    argv = list(argv)
    if not argv or argv[0] not in COMMANDS:
        if argv and argv[0] in ("-h", "--help"):
            build_parser().print_help()
            return Report("help"), 0
        err = UnknownCommand(f"unknown command {argv[0] if argv else '(none)'}; "
                             f"expected one of {', '.join(COMMANDS)}")
        return Report(argv[0] if argv else "", {"error": str(err)}, [f"error: {err}"], ok=False), 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return Report(argv[0], {"error": "bad arguments"}, ["error: bad arguments"], ok=False), code
    try:
        report = HANDLERS[args.command](args)
    except (ParseError, VariableIndexError) as exc:
        report = Report(args.command, {"error": str(exc), "kind": type(exc).__name__},
                        [f"syntax error: {exc}"], ok=False)
        report.json_mode = args.json
        return report, 2
    except TropdiffError as exc:
        report = Report(args.command, {"error": str(exc), "kind": type(exc).__name__},
                        [f"error ({type(exc).__name__}): {exc}"], ok=False)
        report.json_mode = args.json
        return report, 1
    # truncation is the only approximation, so every report names it
    report.meta.setdefault("trunc", "exact")
    report.json_mode = args.json
    return report, 0 if report.ok else 1


def main(argv=None) -> int:
    report, code = run_command(sys.argv[1:] if argv is None else argv)
    out = report.to_json() if report.json_mode else report.to_text()
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
