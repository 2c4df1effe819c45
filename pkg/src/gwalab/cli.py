"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verified mathematical property failed,
2 parse/usage error, 3 command inapplicable to the instance (for example
tor-witness on a smooth instance).  All randomness flows through --seed
(default: the GWA_LAB_SEED environment variable, else 0), and a fixed seed
reproduces reports byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cohomology import bimodule_action, build_n, cochain_d3, is_cocycle4, phi_map
from .envelope import ZeroPhi, build_differentials, total_d_squared, verify_homotopy
from .groebner import smoothness_test
from .parse import ParseError, parse_instance
from .pipeline import RelationFails, UnknownEntry, analyze, builtin_catalog, run_catalog
from .sampling import Sampler

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INAPPLICABLE = 3


def _default_seed() -> int:
    return int(os.environ.get("GWA_LAB_SEED", "0"))


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    print("== %s ==" % report.get("command", "report"))
    _emit_value(report, 0)


def _emit_value(value, depth):
    pad = "  " * depth
    if isinstance(value, dict):
        if "identity" in value and "ok" in value:
            status = "PASS" if value["ok"] else "FAIL"
            extra = ""
            if "target" in value:
                extra = " @ %s" % (tuple(value["target"]),)
            if "trial" in value:
                extra += " [trial %d]" % value["trial"]
            print("%s%s  %s%s" % (pad, status, value["identity"], extra))
            return
        for key in value:
            inner = value[key]
            if isinstance(inner, (dict, list)):
                print("%s%s:" % (pad, key))
                _emit_value(inner, depth + 1)
            else:
                print("%s%s: %s" % (pad, key, inner))
        return
    if isinstance(value, list):
        for item in value:
            _emit_value(item, depth)
        return
    print("%s%s" % (pad, value))


def _load_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    return parse_instance(text)


def _checks_ok(checks) -> bool:
    return all(c["ok"] for c in checks)


# -- commands -------------------------------------------------------------------

def cmd_smooth(args) -> int:
    inst = _load_instance(args.instance)
    verdict = smoothness_test(inst.algebra())
    report = {"command": "smooth", "instance": args.instance,
              "verdict": verdict.to_dict()}
    _emit(report, args.json)
    return EXIT_OK


def cmd_nakayama(args) -> int:
    inst = _load_instance(args.instance)
    W = inst.algebra()
    nu = W.nakayama_map()
    report = {"command": "nakayama", "instance": args.instance,
              "jacobian": str(nu.J), "images": nu.images(),
              "is_identity": nu.is_identity()}
    _emit(report, args.json)
    return EXIT_OK


def cmd_analyze(args) -> int:
    inst = _load_instance(args.instance)
    report = analyze(inst.algebra(), lam=inst.lam)
    _emit({"command": "analyze", "instance": args.instance,
           "report": report.to_dict()}, args.json)
    return EXIT_OK


def cmd_verify_htpy(args) -> int:
    inst = _load_instance(args.instance)
    W = inst.algebra()
    try:
        ds = build_differentials(W, depth=args.depth)
    except ZeroPhi:
        _emit({"command": "verify-htpy", "instance": args.instance,
               "ok": False, "error": "phi = 0: no free resolution to verify"},
              args.json)
        return EXIT_INAPPLICABLE
    rep1 = verify_homotopy(ds)
    rep2 = total_d_squared(ds)
    ok = rep1.ok and rep2.ok
    _emit({"command": "verify-htpy", "instance": args.instance,
           "depth": args.depth, "ok": ok,
           "suites": [rep1.to_dict(), rep2.to_dict()]}, args.json)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_roundtrip(args) -> int:
    inst = _load_instance(args.instance)
    W = inst.algebra()
    verdict = smoothness_test(W)
    if not verdict.smooth:
        _emit({"command": "roundtrip", "instance": args.instance,
               "ok": False,
               "error": "instance is not smooth; no certificate available"},
              args.json)
        return EXIT_INAPPLICABLE
    ds = build_differentials(W, depth=5)
    sampler = Sampler(args.seed)
    checks = []
    for trial in range(args.trials):
        n0 = sampler.cochain3(W, max_exp=args.max_degree, degree=2)
        m = cochain_d3(ds, n0)
        cocycle = is_cocycle4(ds, m)
        checks.append({"trial": trial, "identity": "coboundary is a cocycle",
                       "ok": cocycle.ok})
        n1 = build_n(ds, verdict.certificate, m)
        again = cochain_d3(ds, n1)
        checks.append({"trial": trial,
                       "identity": "d(build_n(d(n))) = d(n)",
                       "ok": again == m})
    ok = _checks_ok(checks)
    _emit({"command": "roundtrip", "instance": args.instance,
           "seed": args.seed, "trials": args.trials, "ok": ok,
           "checks": checks}, args.json)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_nakayama_verify(args) -> int:
    inst = _load_instance(args.instance)
    W = inst.algebra()
    nu = W.nakayama_map()
    sampler = Sampler(args.seed)
    checks = []
    for trial in range(args.trials):
        u = sampler.gwa_elem(W, max_exp=2, degree=2)
        v = sampler.gwa_elem(W, max_exp=2, degree=2)
        lhs = nu.apply(W.mul(u, v))
        rhs = W.mul(nu.apply(u), nu.apply(v))
        checks.append({"trial": trial,
                       "identity": "nu(u*v) = nu(u)*nu(v)",
                       "ok": lhs == rhs})
    for trial in range(args.trials):
        cls = sampler.canonical_class(W)
        base = phi_map(W, cls)
        for gen in ("x", "y", "z1", "z2"):
            acted = phi_map(W, bimodule_action(W, cls, gen, "right"))
            expect = W.mul(base, nu.apply(W.generator(gen)))
            checks.append({"trial": trial,
                           "identity": "Phi(cls <| %s) = Phi(cls) * nu(%s)"
                           % (gen, gen),
                           "ok": acted == expect})
            acted_l = phi_map(W, bimodule_action(W, cls, gen, "left"))
            expect_l = W.mul(W.generator(gen), base)
            checks.append({"trial": trial,
                           "identity": "Phi(%s |> cls) = %s * Phi(cls)"
                           % (gen, gen),
                           "ok": acted_l == expect_l})
    ok = _checks_ok(checks)
    _emit({"command": "nakayama-verify", "instance": args.instance,
           "seed": args.seed, "trials": args.trials, "ok": ok,
           "jacobian": str(nu.J), "checks": checks}, args.json)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_tor_witness(args) -> int:
    inst = _load_instance(args.instance)
    W = inst.algebra()
    verdict = smoothness_test(W)
    if verdict.smooth:
        _emit({"command": "tor-witness", "instance": args.instance,
               "ok": False, "error": "instance is smooth; no witness exists"},
              args.json)
        return EXIT_INAPPLICABLE
    if verdict.reason == "zero-phi":
        _emit({"command": "tor-witness", "instance": args.instance,
               "ok": True,
               "report": {"short_circuit": "phi = 0 forces infinite global "
                          "dimension; witness chain not needed"}}, args.json)
        return EXIT_OK
    lam = inst.lam if inst.lam is not None else verdict.common_zero
    if lam is None:
        _emit({"command": "tor-witness", "instance": args.instance,
               "ok": False,
               "error": "no rational common zero supplied or found; "
                        "witness unavailable over Q"}, args.json)
        return EXIT_INAPPLICABLE
    ds = build_differentials(W, depth=5)
    from .torwitness import run_witness_chain
    report = run_witness_chain(W, lam, ds)
    _emit({"command": "tor-witness", "instance": args.instance,
           "ok": report["ok"], "report": report}, args.json)
    return EXIT_OK if report["ok"] else EXIT_FAILED


def _parse_spec(text: str) -> dict:
    out = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ParseError("specialization must look like p=1,q=2")
        key, value = piece.split("=", 1)
        out[key.strip()] = Fraction(value.strip())
    return out


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = builtin_catalog()
        listing = []
        for name in sorted(entries):
            e = entries[name]
            listing.append({"name": name,
                            "status": "template" if e.is_template else "ready",
                            "params": e.data.params,
                            "description": e.data.description})
        _emit({"command": "catalog-list", "entries": listing}, args.json)
        return EXIT_OK

    if not args.name:
        print("catalog run needs an entry name", file=sys.stderr)
        return EXIT_USAGE
    specs = [_parse_spec(s) for s in (args.spec or [])]
    if not specs:
        specs = [{}]
    try:
        results = run_catalog(args.name, specs)
    except UnknownEntry as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except RelationFails as exc:
        _emit({"command": "catalog-run", "entry": args.name, "ok": False,
               "error": str(exc)}, args.json)
        return EXIT_FAILED
    except ParseError as exc:
        if "template" in str(exc):
            _emit({"command": "catalog-run", "entry": args.name, "ok": False,
                   "error": str(exc)}, args.json)
            return EXIT_INAPPLICABLE
        raise
    _emit({"command": "catalog-run", "entry": args.name, "ok": True,
           "results": results}, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwalab",
        description="Exact toolkit for generalized Weyl algebras over Q[z1,z2]")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized suites "
                             "(default: GWA_LAB_SEED or 0)")
    parser.add_argument("--json", action="store_true",
                        help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance", help="instance file")
        p.set_defaults(func=func)
        return p

    instance_cmd("smooth", cmd_smooth, "smoothness verdict with certificate")
    instance_cmd("nakayama", cmd_nakayama, "Nakayama twist data")
    instance_cmd("analyze", cmd_analyze, "full analysis report")

    p = instance_cmd("verify-htpy", cmd_verify_htpy,
                     "check the five structure identities and d.d = 0")
    p.add_argument("--depth", type=int, default=5,
                   help="number of columns to verify (default 5)")

    p = instance_cmd("roundtrip", cmd_roundtrip,
                     "randomized coboundary round-trips (needs smooth)")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--max-degree", type=int, default=3,
                   help="x/y exponent bound for random cochains")

    p = instance_cmd("nakayama-verify", cmd_nakayama_verify,
                     "multiplicativity and class-map compatibility checks")
    p.add_argument("--trials", type=int, default=10)

    instance_cmd("tor-witness", cmd_tor_witness,
                 "non-smoothness witness chain at a common zero")

    p = sub.add_parser("catalog", help="list or run bundled example entries")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", help="entry name (for run)")
    p.add_argument("--spec", action="append",
                   help="parameter specialization, e.g. p=1,q=2 (repeatable)")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    try:
        return args.func(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
