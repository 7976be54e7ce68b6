"""
Command line interface.

    dglie validate FILE
    dglie ce FILE --cap W --degrees A..B [--module NAME]
    dglie certify FILE --check {cobar-ce,cobar-module-ce,koszul-unit,tres,pbw} --cap W [--degrees A..B]
    dglie bar FILE --cap W --degrees A..B
    dglie cobar FILE --cap W --degrees A..B
    dglie harrison FILE --cap W
    dglie derham-hom FILE --degree-bound D [--source NAME --target NAME]
    dglie local-system (--matrix "[[..]]" | --scalar R | FILE)

FILE is a path or the name of a catalog entry.  Exit status: 0 success,
1 mathematical failure (axiom violation, instability, not a
quasi-isomorphism), 2 input error, 3 refusal (precondition not met).
"""

import argparse
import sys

from . import catalog
from .barcobar import NotConilpotentError
from .envelope import ConilpotencyError
from .gradecore import StructureError
from .io import (InputError, Library, build_algebra, build_coalgebra, build_comodule,
                 build_twist, dumps, fmt, label_str, parse_matrix, read_documents)

OK, FAIL, INPUT, REFUSED = 0, 1, 2, 3


class Refusal(Exception):
    pass


def _degrees(text):
    try:
        a, b = text.split("..")
        a, b = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a..b with integers a <= b, got %r" % text)
    if a > b:
        raise argparse.ArgumentTypeError("empty degree range %r" % text)
    return (a, b)


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError("--%s is required for '%s'" % (n.replace("_", "-"), args.command))


def _plain(x):
    """Labels and tuples of labels as JSON-friendly values."""
    if isinstance(x, tuple) and not (len(x) == 2 and x[0] in ("L", "S")):
        return [_plain(y) for y in x]
    return label_str(x)


def _betti(table):
    return {str(n): table[n] for n in sorted(table.dims)}


def _load(args):
    docs = read_documents(args.file)
    return docs, Library(docs)


def _echo(args, docs, **params):
    out = {"command": args.command, "file": args.file, "documents": docs}
    out.update({k: v for k, v in params.items() if v is not None})
    return out


# ---------------------------------------------------------------------------
# commands; each returns (status, report dict, text lines)

def cmd_validate(args):
    docs, lib = _load(args)
    results = []
    status = OK
    for doc in docs:
        kind = doc["kind"]
        if kind == "lie-coalgebra":
            rep = build_coalgebra(doc).validate()
        elif kind == "comodule":
            g = lib.coalgebra(doc.get("coalgebra"))
            rep = build_comodule(doc, g).validate()
        elif kind == "algebra":
            rep = build_algebra(doc).validate()
        else:
            rep = _validate_twist(doc)
        failures = [{"axiom": a, "at": _plain(w)} for a, w in rep.failures]
        results.append({"name": doc["name"], "kind": kind, "checked": list(rep.checked),
                        "valid": rep.ok, "violations": failures})
        if not rep.ok:
            status = FAIL
    lines = []
    for r in results:
        lines.append("%s (%s): %s" % (r["name"], r["kind"], "valid" if r["valid"] else "INVALID"))
        lines.append("  checked: %s" % ", ".join(r["checked"]))
        for v in r["violations"]:
            lines.append("  violation: %s at %s" % (v["axiom"], v["at"]))
    return status, {"input": _echo(args, docs), "results": results}, lines


def _validate_twist(doc):
    from .liecoalg import ValidationReport
    from .twist import DeRham, TwistedModule, check_mc, element, exterior
    host, data = build_twist(doc)
    if host == "derham":
        H, xi = DeRham, DeRham.one_form(data)
    else:
        H = exterior()
        xi = element(H, {"x": data})
    rep = ValidationReport(checked=["MC equation", "(d + xi)^2 = 0"])
    if not check_mc(H, xi):
        rep.fail("MC equation", doc["name"])
    if not TwistedModule(H, xi).square_zero():
        rep.fail("(d + xi)^2 = 0", doc["name"])
    return rep


def cmd_ce(args):
    from .cealg import ce_cohomology
    _require(args, "cap", "degrees")
    docs, lib = _load(args)
    g = lib.coalgebra(args.name)
    M = lib.comodule(args.module, g) if args.module else None
    r = ce_cohomology(g, M, cap=args.cap, window=args.degrees)
    report = {
        "input": _echo(args, docs, coalgebra=g.name, module=args.module, cap=args.cap,
                       degrees=list(args.degrees)),
        "betti": _betti(r.low), "betti_next_cap": _betti(r.high),
        "stable": {str(n): v for n, v in sorted(r.stable.items())},
    }
    lines = ["CE(%s%s) at caps %d, %d" % (g.name, ", " + args.module if args.module else "",
                                          args.cap, args.cap + 1),
             "  %s" % r.low,
             "  stable: %s" % ("yes" if r.is_stable else
                               "no, degrees %s" % r.unstable_degrees())]
    return (OK if r.is_stable else FAIL), report, lines


def _cert_report(c):
    out = {"check": c.name, "caps": list(c.caps), "window": list(c.window),
           "cone_betti": {str(c.caps[0]): _betti(c.low), str(c.caps[1]): _betti(c.high)},
           "verdicts": {str(n): v for n, v in sorted(c.verdicts.items())},
           "quasi_iso": c.quasi_iso}
    if "source" in c.extra:
        out["source_betti"] = _betti(c.extra["source"])
        out["target_betti"] = _betti(c.extra["target"])
    if "gr" in c.extra:
        out["gr_dims"] = c.extra["gr_dims"]
        out["gr_verdicts"] = [{str(n): v for n, v in sorted(x.verdicts.items())}
                              for x in c.extra["gr"]]
    return out


def _cert_lines(c):
    lines = ["%s: caps %s, degrees %d..%d" % (c.name, c.caps, c.window[0], c.window[1])]
    for n in sorted(c.verdicts):
        lines.append("  H^%d(cone) = %d, %d  %s" % (n, c.low[n], c.high[n], c.verdicts[n]))
    if "source" in c.extra:
        lines.append("  source (weights <= %d): %s" % (c.caps[0], c.extra["source"]))
        lines.append("  target (weights <= %d): %s" % (c.caps[0], c.extra["target"]))
    for i, x in enumerate(c.extra.get("gr", [])):
        lines.append("  gr piece %d: %s" % (i, "quasi-iso" if x.quasi_iso else
                                             ", ".join("%d %s" % kv for kv in sorted(x.verdicts.items()))))
    lines.append("verdict: %s" % ("quasi-iso" if c.quasi_iso else "not certified"))
    return lines


def cmd_certify(args):
    from . import barcobar, envelope
    _require(args, "cap", "check")
    docs, lib = _load(args)
    g = lib.coalgebra(args.name)
    echo = dict(coalgebra=g.name, check=args.check, cap=args.cap, module=args.module,
                degrees=list(args.degrees) if args.degrees else None, env_cap=args.env_cap)
    check = args.check
    try:
        if check in ("cobar-ce", "cobar-module-ce", "koszul-unit"):
            _require(args, "degrees")
            if check == "cobar-ce":
                c = barcobar.cobar_to_ce(g, args.cap, args.degrees, env_cap=args.env_cap)
            elif check == "cobar-module-ce":
                _require(args, "module")
                M = lib.comodule(args.module, g)
                c = barcobar.cobar_module_to_ce_module(g, M, args.cap, args.degrees)
            else:
                M = lib.comodule(args.module, g) if args.module else None
                c = barcobar.koszul_unit(g, M, args.cap, args.degrees)
            report = {"input": _echo(args, docs, **echo)}
            report.update(_cert_report(c))
            return (OK if c.quasi_iso else FAIL), report, _cert_lines(c)
        if check == "pbw":
            env = envelope.u_con(g, args.cap)
            if env.warning:
                raise barcobar.NotConilpotentError(
                    "%s is not conilpotent; the PBW comparison needs conilpotent input" % g.name)
            r = envelope.pbw_check(env)
            report = {"input": _echo(args, docs, **echo), "gr_dims": r.gr,
                      "expected": r.expected, "verdict": r.verdict}
            lines = ["pbw: gr U_con dims %s, symmetric power dims %s" % (r.gr, r.expected),
                     "verdict: %s" % ("true" if r.verdict else "false")]
            return (OK if r.verdict else FAIL), report, lines
        if check == "tres":
            U = {label_str(lab): g.degree(lab) for lab in g.labels}
            v = envelope.tres_resolution_check(U, envelope.TensorModule.trivial(), args.cap)
            verdicts = {str(w): x for w, x in sorted(v.items())}
            good = all(x == "exact" for w, x in v.items() if w < args.cap)
            report = {"input": _echo(args, docs, **echo), "verdicts": verdicts,
                      "exact_in_stable_weights": good}
            lines = ["tres: U = %s, M = k" % ", ".join("%s(%d)" % kv for kv in sorted(U.items()))]
            lines += ["  weight %s: %s" % kv for kv in sorted(verdicts.items(), key=lambda t: int(t[0]))]
            lines.append("verdict: %s" % ("exact" if good else "not exact"))
            return (OK if good else FAIL), report, lines
    except (barcobar.NotConilpotentError, envelope.ConilpotencyError) as exc:
        raise Refusal(str(exc))
    raise InputError("unknown check %r" % check)


def cmd_bar(args):
    from .barcobar import bar, bar_betti_by_weight
    _require(args, "cap", "degrees")
    docs, lib = _load(args)
    A = lib.algebra(args.name)
    B = bar(A, args.cap, args.degrees)
    if not B.graded:
        raise InputError("algebra %r needs internal weights for a weight-graded bar complex" % A.name)
    tables = bar_betti_by_weight(B, args.cap, args.degrees)
    dims = {str(w): len(B.words(w)) for w in range(args.cap + 1)}
    report = {"input": _echo(args, docs, algebra=A.name, cap=args.cap, degrees=list(args.degrees)),
              "dims": dims, "betti_by_weight": {str(w): _betti(t) for w, t in sorted(tables.items())}}
    lines = ["B(%s): d_B^2 = 0 verified through weight %d" % (A.name, args.cap)]
    lines += ["  weight %d (dim %s): %s" % (w, dims[str(w)], t) for w, t in sorted(tables.items())]
    return OK, report, lines


def cmd_cobar(args):
    from .barcobar import cobar, NotConilpotentError, _require_conilpotent
    from .envelope import u_con
    from .gradecore import weighted_cohomology
    _require(args, "cap", "degrees")
    docs, lib = _load(args)
    g = lib.coalgebra(args.name)
    try:
        _require_conilpotent(g)
    except NotConilpotentError as exc:
        raise Refusal(str(exc))
    env = u_con(g, (args.env_cap or args.cap + 1), mode="weight")
    Om = cobar(env, args.cap, args.degrees)
    X = Om.complex()
    low = weighted_cohomology(X, args.degrees, args.cap)
    high = weighted_cohomology(X, args.degrees, args.cap + 1)
    stable = low.dims == high.dims
    report = {"input": _echo(args, docs, coalgebra=g.name, cap=args.cap,
                             degrees=list(args.degrees), env_cap=args.env_cap),
              "betti": _betti(low), "betti_next_cap": _betti(high), "stable": stable}
    lines = ["Omega(U_con(%s)) at caps %d, %d: d^2 = 0 verified" % (g.name, args.cap, args.cap + 1),
             "  %s" % low, "  stable: %s" % ("yes" if stable else "no")]
    return (OK if stable else FAIL), report, lines


def cmd_harrison(args):
    from .barcobar import harrison
    from .freelie import graded_witt_dims
    from .io import dump_coalgebra
    _require(args, "cap")
    docs, lib = _load(args)
    A = lib.algebra(args.name)
    H = harrison(A, args.cap)
    oracle = graded_witt_dims([A.degree(a) - 1 for a in A.labels], args.cap) if A.labels \
        else [0] * args.cap
    rep = H.coalgebra.validate()
    good = H.dims == oracle and rep.ok
    report = {"input": _echo(args, docs, algebra=A.name, cap=args.cap),
              "dims": H.dims, "witt_oracle": oracle, "axioms_valid": rep.ok,
              "coalgebra": dump_coalgebra(H.coalgebra)}
    lines = ["Harr(%s) through weight %d: primitive preservation verified" % (A.name, args.cap),
             "  dims by weight: %s" % H.dims, "  Witt oracle:    %s" % oracle,
             "  Lie coalgebra axioms: %s" % ("valid" if rep.ok else "INVALID")]
    return (OK if good else FAIL), report, lines


def cmd_derham_hom(args):
    from .twist import twisted_hom_cohomology
    _require(args, "degree_bound")
    docs, lib = _load(args)
    twists = [d for d in docs if d["kind"] == "mc-twist"]
    if args.source or args.target:
        src = lib.find(args.source or args.target, "mc-twist")
        tgt = lib.find(args.target or args.source, "mc-twist")
    elif twists:
        src, tgt = twists[0], twists[1] if len(twists) > 1 else twists[0]
    else:
        raise InputError("no mc-twist document in input")
    (h1, P), (h2, Qm) = build_twist(src), build_twist(tgt)
    if h1 != "derham" or h2 != "derham":
        raise InputError("derham-hom needs two twists over the host 'derham'")
    r = twisted_hom_cohomology(P, Qm, args.degree_bound)
    report = {"input": _echo(args, docs, source=src["name"], target=tgt["name"],
                             degree_bound=args.degree_bound),
              "betti": _betti(r.betti), "bounds": list(r.bounds), "stable": r.stable,
              "values": {str(b): list(v) for b, v in sorted(r.values.items())}}
    lines = ["Hom(%s, %s) over k[z,dz], degree bounds %d, %d" % (src["name"], tgt["name"], *r.bounds),
             "  %s" % r.betti, "  stable: %s" % ("yes" if r.stable else "no")]
    return (OK if r.stable else FAIL), report, lines


def cmd_local_system(args):
    from .twist import realizable, s1_system
    docs = None
    if args.matrix is not None:
        R = parse_matrix(args.matrix)
    elif args.scalar is not None:
        R = parse_matrix("[[%s]]" % args.scalar)
    elif args.file:
        docs, lib = _load(args)
        doc = lib.find(args.name, "mc-twist") if args.name else lib.first("mc-twist")
        host, R = build_twist(doc)
        if host != "exterior":
            raise InputError("local-system needs a twist over the host 'exterior'")
    else:
        raise InputError("give --matrix, --scalar or a file with an exterior twist")
    rep = s1_system(R).as_dict()
    echo = {"command": args.command, "matrix": [[fmt(x) for x in row] for row in R]}
    if docs is not None:
        echo.update({"file": args.file, "documents": docs})
    report = {"input": echo, "result": rep}
    lines = ["S^1 local system of R x, R = %s" % echo["matrix"],
             "  trace: %s" % rep["trace"], "  det(monodromy) = %s > 0" % rep["det"],
             "  monodromy: %s" % (rep["monodromy"] if rep["nilpotent"] else
                                 "exp(R) (R not nilpotent; kept symbolic)")]
    if rep["character"]:
        lines.append("  character: %s" % rep["character"])
    lines.append("  in the image of the realization functor: %s" % ("yes" if rep["in_image"] else "no"))
    if args.target is not None:
        M = parse_matrix(args.target)
        v = realizable(M)
        report["target"] = {"matrix": [[fmt(x) for x in row] for row in M],
                            "realizable": v}
        lines.append("  target monodromy %s realizable: %s" % (report["target"]["matrix"], v))
    return OK, report, lines


COMMANDS = {
    "validate": cmd_validate, "ce": cmd_ce, "certify": cmd_certify, "bar": cmd_bar,
    "cobar": cmd_cobar, "harrison": cmd_harrison, "derham-hom": cmd_derham_hom,
    "local-system": cmd_local_system,
}


def build_parser():
    p = argparse.ArgumentParser(prog="dglie", description="Exact computations with dg Lie coalgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, file_required=True):
        if file_required:
            sp.add_argument("file", help="input file or catalog entry (%s)" % ", ".join(catalog.names()))
        else:
            sp.add_argument("file", nargs="?", help="input file or catalog entry")
        sp.add_argument("--name", help="document to use when the file holds several")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    common(sub.add_parser("validate", help="check axioms of every document"))
    for name, helptext in (("ce", "Chevalley-Eilenberg cohomology"),
                           ("certify", "quasi-isomorphism and exactness certificates"),
                           ("bar", "bar construction of an algebra"),
                           ("cobar", "cobar construction of U_con(g)"),
                           ("harrison", "Harrison Lie coalgebra of a commutative algebra")):
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("--cap", type=int)
        sp.add_argument("--degrees", type=_degrees)
        sp.add_argument("--env-cap", type=int)
        sp.add_argument("--module")
        sp.add_argument("--check", choices=("cobar-ce", "cobar-module-ce", "koszul-unit", "tres", "pbw"))
    sp = common(sub.add_parser("derham-hom", help="Hom between twists over k[z,dz]"))
    sp.add_argument("--degree-bound", type=int)
    sp.add_argument("--source")
    sp.add_argument("--target")
    sp = common(sub.add_parser("local-system", help="monodromy of a twist R x over Lambda(x)"),
                file_required=False)
    sp.add_argument("--matrix")
    sp.add_argument("--scalar")
    sp.add_argument("--target", help="a monodromy matrix to test for realizability")
    return p


def render(report, lines, fmt_):
    if fmt_ == "json":
        return dumps(report)
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code else OK
    for attr in ("cap", "env_cap", "degree_bound"):
        val = getattr(args, attr, None)
        if val is not None and val < (1 if attr != "cap" else 0):
            print("error: --%s must be positive" % attr.replace("_", "-"), file=sys.stderr)
            return INPUT
    try:
        status, report, lines = COMMANDS[args.command](args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return INPUT
    except (Refusal, NotConilpotentError, ConilpotencyError) as exc:
        print("refused: %s" % exc, file=sys.stderr)
        return REFUSED
    except StructureError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return FAIL
    report["status"] = status
    print(render(report, lines, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
