"""Command-line front end.

Exit status: 0 on success, 1 when an identity fails or a reconstruction is
rejected, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from typing import Sequence

from . import conjectures as cj
from . import identities as idl
from .algebra import NcPoly, dmap, dmap_via_key_identity, parse_composition, word_from_composition
from .errors import ZetaStarError
from .numerics import Evaluator, PrecisionConfig, ValueCache, default_cache_dir
from .products import PRODUCTS, reg_shuffle
from .reconstruct import DEFAULT_QMAX, reconstruct_pi_power, value_from_decimal
from .suite import run_all

ENV_PREFIX = "ZETASTAR_"


class UsageError(Exception):
    pass


def _setting(args, name: str, default, cast=int):
    """flag > environment variable > built-in default."""
    value = getattr(args, name, None)
    if value is not None:
        return value
    env = os.environ.get(ENV_PREFIX + name.upper())
    if env:
        try:
            return cast(env)
        except ValueError:
            raise UsageError(f"bad value for {ENV_PREFIX}{name.upper()}: {env!r}") from None
    return default


def _config(args) -> PrecisionConfig:
    try:
        return PrecisionConfig(digits=_setting(args, "digits", 50), guard=_setting(args, "guard", 10))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _qmax(args) -> int:
    return _setting(args, "qmax", DEFAULT_QMAX, cast=lambda s: int(float(s)) if "e" in s else int(s))


def _evaluator(args) -> Evaluator:
    cache = None
    if not getattr(args, "no_cache", False):
        directory = getattr(args, "cache_dir", None) or default_cache_dir()
        cache = ValueCache(directory)
    return Evaluator(_config(args), cache)


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()")
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def parse_element(text: str) -> NcPoly:
    """A composition ``3,1``, a word ``xxyy`` or a polynomial ``xy + 1/2 xxy``."""
    text = text.strip()
    if re.fullmatch(r"\d+(,\d+)*|\(\)", text) and not re.fullmatch(r"[01]", text):
        return NcPoly.word(word_from_composition(parse_composition(text)))
    return NcPoly.parse(text)


def _emit(args, kind: str, params: dict, result, text: str, started: float) -> None:
    if args.json:
        payload = {"kind": kind, "params": params, "result": result,
                   "elapsed_ms": round((time.perf_counter() - started) * 1000, 3)}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_eval(args, star: bool) -> int:
    started = time.perf_counter()
    ev = _evaluator(args)
    k = parse_composition(args.index)
    v = ev.mzsv(k) if star else ev.mzv(k)
    digits = ev.cfg.digits
    elapsed = round((time.perf_counter() - started) * 1000, 3)
    name = "zeta*" if star else "zeta"
    text = (f"{name}({','.join(map(str, k))}) = {v.to_decimal(digits)}\n"
            f"err <= {v.err_str()}  digits = {digits}  elapsed = {elapsed} ms")
    result = {"value": v.to_decimal(digits), "err": v.err_str(), "digits": digits}
    _emit(args, "eval-star" if star else "eval", {"index": list(k), "digits": digits},
          result, text, started)
    return 0


def cmd_product(args) -> int:
    started = time.perf_counter()
    u, v = parse_element(args.u), parse_element(args.v)
    p = PRODUCTS[args.which](u, v)
    _emit(args, "product", {"which": args.which, "u": str(u), "v": str(v)},
          {"polynomial": str(p), "terms": len(p)}, str(p), started)
    return 0


def cmd_dmap(args) -> int:
    started = time.perf_counter()
    p = parse_element(args.element)
    out = dmap_via_key_identity(p) if args.key_identity else dmap(p)
    _emit(args, "dmap", {"element": str(p), "key_identity": args.key_identity},
          {"polynomial": str(out), "terms": len(out)}, str(out), started)
    return 0


def cmd_reg(args) -> int:
    started = time.perf_counter()
    p = parse_element(args.element)
    out = reg_shuffle(p)
    _emit(args, "reg", {"element": str(p)}, {"polynomial": str(out), "terms": len(out)},
          str(out), started)
    return 0


def _identity_reports(args) -> list:
    a, b, c = args.abc
    n = args.n
    suite = args.suite
    if suite == "alpha":
        return [idl.check_alpha(n, a, b, c)]
    if suite == "beta":
        return [idl.check_beta(n, a, b, c)]
    if suite == "eq7":
        return idl.check_eq7(n, a, b, c)
    if suite == "eq59":
        return [idl.check_eq59(n, a, b, c)]
    if suite == "eq23":
        return [idl.check_eq23(max(n, 1), a, b)]
    if suite == "eq24":
        return [idl.check_eq24(max(n, 1), a, b)]
    if suite == "weight6":
        return list(idl.check_weight6_identities())
    if suite == "grid":
        return [r for _, thunk in idl.grid_checks(n) for r in thunk()]
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    started = time.perf_counter()
    if args.suite == "all":
        outcomes = run_all(_config(args), jobs=_setting(args, "jobs", 1))
        ok = all(o.holds for o in outcomes)
        width = max(len(o.name) for o in outcomes)
        lines = [f"{'PASS' if o.holds else 'FAIL'}  {o.name:<{width}}  {o.count:4d} reports  "
                 f"{o.elapsed * 1000:9.1f} ms" for o in outcomes]
        for o in outcomes:
            lines.extend(f"      {f}" for f in o.failures[:10])
        lines.append(f"{sum(o.holds for o in outcomes)}/{len(outcomes)} checks passed")
        _emit(args, "verify", {"suite": "all"}, {"holds": ok, "checks": [o.to_dict() for o in outcomes]},
              "\n".join(lines), started)
        return 0 if ok else 1
    if args.suite == "eds":
        max_weight = _setting(args, "max_weight", 7)
        ev = Evaluator(PrecisionConfig(digits=40, guard=_config(args).guard))
        rows, ok = [], True
        for pair in idl.enumerate_eds(max_weight):
            v = ev.eval_poly(pair.defect)
            good = abs(v) < 10 ** -30
            ok &= good
            rows.append({"w1": pair.w1, "w0": pair.w0, "defect": str(pair.defect),
                         "value": v.to_decimal(5), "holds": good})
        text = "\n".join(f"{'holds' if r['holds'] else 'FAILS'}  w1={r['w1']} w0={r['w0']}  "
                         f"Z(defect)={r['value']}" for r in rows)
        _emit(args, "verify", {"suite": "eds", "max_weight": max_weight},
              {"holds": ok, "pairs": rows}, text, started)
        return 0 if ok else 1
    reports = _identity_reports(args)
    ok = all(r.holds for r in reports)
    _emit(args, "verify", {"suite": args.suite, "n": args.n, "abc": list(args.abc)},
          {"holds": ok, "reports": [r.to_dict() for r in reports]},
          "\n".join(str(r) for r in reports), started)
    return 0 if ok else 1


def cmd_conjecture(args) -> int:
    started = time.perf_counter()
    cfg = _config(args)
    ev = _evaluator(args)
    qmax = _qmax(args)
    which = args.which
    if which in ("4.1", "4.3"):
        if args.S is None:
            raise UsageError("--S is required for orbit sums")
        variant = "conj41" if which == "4.1" else "conj43"
        reports = [cj.orbit_sum(args.S, variant, cfg, qmax, evaluator=ev)]
    elif which == "thm11":
        reports = [cj.check_thm11(args.n, cfg, qmax, evaluator=ev)]
    elif which == "eq6":
        reports = [cj.check_eq6(args.n, cfg, evaluator=ev)]
    elif which == "eq1":
        reports = [cj.check_eq1(args.n, args.m, cfg, evaluator=ev)]
    elif which in ("4.5a", "4.5b", "4.5c"):
        reports = [cj.check_conj45(which[-1], args.n, args.m, cfg, evaluator=ev)]
    elif which == "prop51":
        reports = [cj.check_prop51(max(args.n, 1), cfg, evaluator=ev)]
    elif which == "cyclic":
        reports = [cj.check_cyclic_sum_instance(args.n, cfg, evaluator=ev)]
    else:
        raise UsageError(f"unknown conjecture {which!r}")
    ok = all(r.verdict if hasattr(r, "verdict") else r.holds for r in reports)
    params = {"which": which, "S": list(args.S) if args.S is not None else None,
              "n": args.n, "m": args.m, "digits": cfg.digits, "qmax": str(qmax)}
    _emit(args, "conjecture", params, {"holds": ok, "reports": [r.to_dict() for r in reports]},
          "\n".join(str(r) for r in reports), started)
    return 0 if ok else 1


def cmd_reconstruct(args) -> int:
    started = time.perf_counter()
    cfg = _config(args)
    source = args.value.strip()
    if re.search(r"[.eE]", source):
        v = value_from_decimal(source, cfg)
        origin = "decimal"
    else:
        ev = _evaluator(args)
        k = parse_composition(source)
        v = ev.mzsv(k) if args.star else ev.mzv(k)
        origin = "zeta*" if args.star else "zeta"
    res = reconstruct_pi_power(v, args.w, cfg, _qmax(args))
    _emit(args, "reconstruct", {"input": source, "origin": origin, "w": args.w, "digits": cfg.digits},
          res.to_dict(), str(res), started)
    return 0 if res.accepted else 1


def cmd_cache(args) -> int:
    started = time.perf_counter()
    cache = ValueCache(getattr(args, "cache_dir", None) or default_cache_dir())
    if args.action == "path":
        _emit(args, "cache", {"action": "path"}, {"path": str(cache.path)}, str(cache.path), started)
    elif args.action == "clear":
        cache.clear()
        _emit(args, "cache", {"action": "clear"}, {"path": str(cache.path)}, "cache cleared", started)
    else:
        entries = cache.entries()
        rows = [{"star": e.star, "index": list(e.index), "digits": e.digits, "value": e.value}
                for e in entries]
        text = "\n".join(f"{'zeta*' if e.star else 'zeta'}({','.join(map(str, e.index))}) "
                         f"@{e.digits}: {e.value}" for e in entries) or "(empty)"
        _emit(args, "cache", {"action": "list"}, {"entries": rows}, text, started)
    return 0


# --------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--digits", type=int, default=None, help="target decimal digits (default 50)")
    p.add_argument("--guard", type=int, default=None, help="extra working digits (default 10)")
    p.add_argument("--qmax", type=int, default=None, help="largest accepted denominator")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cache-dir", default=None, help="value cache directory")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the value cache")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None, help="worker processes for suites")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetastar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, star in (("eval", False), ("eval-star", True)):
        p = sub.add_parser(name, help=f"evaluate {'zeta*' if star else 'zeta'} of an admissible index")
        p.add_argument("index", help="comma-separated index, e.g. 3,1")
        _add_common(p)
        p.set_defaults(func=lambda a, star=star: cmd_eval(a, star))

    p = sub.add_parser("product", help="harmonic, tilde or shuffle product of two elements")
    p.add_argument("which", choices=sorted(PRODUCTS))
    p.add_argument("u")
    p.add_argument("v")
    _add_common(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("dmap", help="apply d(wy) = gamma(w) y")
    p.add_argument("element")
    p.add_argument("--key-identity", action="store_true", help="use the block recursion")
    _add_common(p)
    p.set_defaults(func=cmd_dmap)

    p = sub.add_parser("reg", help="shuffle regularization of an H^1 element")
    p.add_argument("element")
    _add_common(p)
    p.set_defaults(func=cmd_reg)

    p = sub.add_parser("verify", help="exact identity checks")
    p.add_argument("suite", choices=["alpha", "beta", "eq7", "eq59", "eq23", "eq24",
                                     "weight6", "grid", "eds", "all"])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--abc", type=_int_list, default=(3, 1, 2))
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="numeric checks with rational reconstruction")
    p.add_argument("which", choices=["4.1", "4.3", "4.5a", "4.5b", "4.5c", "thm11", "eq1",
                                     "eq6", "prop51", "cyclic"])
    p.add_argument("--S", type=_int_list, default=None, help="j-vector, e.g. 1,0")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("reconstruct", help="recognize a value as p/q * pi^w")
    p.add_argument("value", help="decimal literal or index such as 3,1")
    p.add_argument("--w", type=int, required=True, help="power of pi")
    p.add_argument("--star", action="store_true", help="evaluate the index as zeta*")
    _add_common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("cache", help="inspect the persistent value cache")
    p.add_argument("action", choices=["list", "clear", "path"], nargs="?", default="list")
    _add_common(p)
    p.set_defaults(func=cmd_cache)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ZetaStarError, TypeError) as exc:
        print(f"zetastar: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
