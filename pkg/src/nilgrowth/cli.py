"""Command-line front end.

Subcommands: ``build`` persists a level stack, ``verify`` runs the named
check suite over a stored stack, ``hilbert`` and ``gk`` export growth data,
and ``probe`` tests powers of a polynomial for ideal membership.

Exit codes are fixed: 0 success, 1 verification failure, 2 configuration
error, 3 resource budget exceeded.  Reports are plain JSON with sorted keys
so identical configurations yield byte-identical output.
"""

import argparse
import json
import os
import random
import sys
from typing import Callable, Dict, List, Optional

from . import growth as growth_mod
from . import quotient as quotient_mod
from .construction import LevelStack
from .errors import BudgetExceededError, ConfigError, VerificationError
from .freealg import parse_poly
from .linear import BUDGET, code_to_word
from .quotient import QuotientTable
from .schedule import Schedule
from .store import MANIFEST_NAME, load_stack, save_stack

DEFAULTS = {
    "schedule": "default",
    "field": 2,
    "engine": "auto",
    "max_level": 6,
    "max_degree": 64,
    "budget_mb": 512,
    "out": ".",
    "suite": "all",
    "seed": 0,
    "format": "json",
}

SUITE_NAMES = ("8props", "ustack", "totalsize", "qadd", "wqsmall", "sdim",
               "tdim", "estimate", "ideal", "engines", "all")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}")
        unknown = set(file_cfg) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if not _is_prime(cfg["field"]):
        raise ConfigError(f"field must be a prime, got {cfg['field']}")
    if cfg["engine"] not in ("auto", "monomial", "dense"):
        raise ConfigError(f"unknown engine {cfg['engine']!r}")
    if cfg["max_level"] < 0 or cfg["max_degree"] < 1 or cfg["budget_mb"] < 1:
        raise ConfigError("budgets and ranges must be positive")
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError(f"unknown format {cfg['format']!r}")
    if cfg["suite"] not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {cfg['suite']!r}; "
                          f"choose from {', '.join(SUITE_NAMES)}")
    return cfg


def _apply_budget(budget_mb: int) -> int:
    """Translate the memory budget into the dense-degree cap (a degree-D
    elimination holds about 2^(2D-3) bytes) and install it; returns the
    previous cap so callers can restore it."""
    previous = BUDGET.max_dense_degree
    BUDGET.max_dense_degree = (budget_mb.bit_length() - 1 + 23) // 2
    return previous


def _load_schedule(cfg: dict) -> Schedule:
    src = cfg["schedule"]
    if src in ("default", "default-real"):
        return Schedule.default_real(field=cfg["field"])
    try:
        with open(src, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"schedule file not found: {src}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"schedule file is not valid JSON: {exc}")
    return Schedule.from_json(obj, field=cfg["field"])


def _load_store(cfg: dict) -> LevelStack:
    path = os.path.join(cfg["out"], MANIFEST_NAME)
    if not os.path.exists(path):
        raise ConfigError(f"no level store at {cfg['out']} (missing {MANIFEST_NAME})")
    return load_stack(cfg["out"])


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _envelope(cfg: dict, stack: Optional[LevelStack], reports: List[dict]) -> dict:
    failures = sum(1 for rep in reports if rep.get("status") == "fail")
    out = {
        "seed": cfg["seed"],
        "field": stack.field if stack is not None else cfg["field"],
        "engine": cfg["engine"],
        "reports": reports,
        "failures": failures,
    }
    if stack is not None:
        out["schedule_hash"] = stack.schedule.canonical_hash()
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(cfg: dict) -> int:
    schedule = _load_schedule(cfg)
    if cfg["engine"] == "dense" and (1 << cfg["max_level"]) > BUDGET.max_dense_degree:
        raise BudgetExceededError(
            f"dense engine at level {cfg['max_level']} needs degree "
            f"{1 << cfg['max_level']} > budget cap {BUDGET.max_dense_degree}")
    stack = LevelStack(schedule, field=cfg["field"], engine=cfg["engine"])
    stack.build_to(cfg["max_level"])
    manifest = save_stack(stack, cfg["out"])
    _emit({
        "manifest": manifest,
        "levels": stack.top() + 1,
        "cases": [st.case for st in stack.levels],
        "schedule_hash": stack.schedule.canonical_hash(),
        "seed": cfg["seed"],
    })
    return 0


def _suite_8props(cfg: dict, stack: LevelStack, table: QuotientTable) -> List[dict]:
    out = []
    for rep in stack.verify_conditions():
        status = "not applicable" if rep.vacuous else (
            "pass" if rep.holds else "fail")
        entry = {"check": "conditions",
                 "parameters": {"condition": rep.number, "level": rep.level},
                 "status": status}
        if rep.detail:
            entry["detail"] = rep.detail
        out.append(entry)
    return out


def _suite_ustack(cfg: dict, stack: LevelStack, table: QuotientTable) -> List[dict]:
    upto = min(stack.top(), cfg["max_level"])
    return [{"check": "ustack", "parameters": {"n": n, "m": m, "k": k},
             "status": "pass" if ok else "fail"}
            for n, m, k, ok in stack.check_ustack_all(upto)]


def _suite_totalsize(cfg, stack, table):
    return [quotient_mod.verify_totalsize(n, table)
            for n in range(1, min(cfg["max_degree"], 12) + 1)]


def _suite_qadd(cfg, stack, table):
    cap = min(cfg["max_degree"], 512)
    out = []
    for total in range(3, cap + 1):
        bits = [p for p in range(total.bit_length()) if total >> p & 1]
        for cut in range(1, len(bits)):
            k = sum(1 << p for p in bits[:cut])
            j = total - k
            out.append(quotient_mod.verify_qadd(j, k, table))
    return out


def _suite_wqsmall(cfg, stack, table):
    cap = min(cfg["max_degree"], 512)
    return [quotient_mod.verify_wqsmall(n, table)
            for n in range(3, cap + 1) if n & (n - 1)]


def _suite_sdim(cfg, stack, table):
    cap = min(cfg["max_degree"], 512)
    return [quotient_mod.verify_sdim(j, table) for j in range(2, cap + 1)]


def _suite_tdim(cfg, stack, table):
    cap = min(cfg["max_degree"], 512)
    return [quotient_mod.verify_tdim(j, table) for j in range(1, cap + 1)]


def _suite_estimate(cfg, stack, table):
    cap = min(cfg["max_degree"], 512)
    return [quotient_mod.verify_main_estimate(n, table)
            for n in range(2, cap + 1)]


def _suite_ideal(cfg, stack, table):
    return [quotient_mod.verify_ideal(min(cfg["max_degree"], 256), table)]


def _suite_engines(cfg, stack, table):
    out = [{"check": "store-integrity", "parameters": {"out": cfg["out"]},
            "status": "pass"}]  # load_stack verified hashes already
    top = min(stack.top(), 4)
    rng = random.Random(cfg["seed"])
    try:
        mono = LevelStack(stack.schedule, field=stack.field, engine="monomial",
                          foracle=stack.foracle).build_to(top)
        dense = LevelStack(stack.schedule, field=stack.field, engine="dense",
                           foracle=stack.foracle).build_to(top)
    except ConfigError as exc:
        out.append({"check": "engines-build", "parameters": {"top": top},
                    "status": "not applicable", "detail": str(exc)})
        return out
    for n in range(top + 1):
        ok = (mono.level(n).V == dense.level(n).V
              and mono.level(n).U == dense.level(n).U
              and stack.level(n).V == mono.level(n).V
              and stack.level(n).U == mono.level(n).U)
        out.append({"check": "engines-level", "parameters": {"n": n},
                    "status": "pass" if ok else "fail"})
    mono_table = QuotientTable(mono, engine="monomial")
    dense_table = QuotientTable(dense, engine="dense")
    for n in range(min(cfg["max_degree"], 4) + 1):
        ok = all(getattr(mono_table, name)(n) == getattr(dense_table, name)(n)
                 for name in ("E", "R", "S", "Q", "W"))
        out.append({"check": "engines-quotient", "parameters": {"n": n},
                    "status": "pass" if ok else "fail"})
    if stack.field == 2:
        um, ud = mono.level(top).U, dense.level(top).U
        mismatches = 0
        for _ in range(32):
            v = rng.getrandbits(um.ambient_dim)
            if um.contains_vector(v) != ud.contains_vector(v):
                mismatches += 1
        out.append({"check": "engines-membership",
                    "parameters": {"level": top, "samples": 32},
                    "status": "pass" if mismatches == 0 else "fail"})
    return out


SUITES: Dict[str, Callable] = {
    "8props": _suite_8props,
    "ustack": _suite_ustack,
    "totalsize": _suite_totalsize,
    "qadd": _suite_qadd,
    "wqsmall": _suite_wqsmall,
    "sdim": _suite_sdim,
    "tdim": _suite_tdim,
    "estimate": _suite_estimate,
    "ideal": _suite_ideal,
    "engines": _suite_engines,
}


def cmd_verify(cfg: dict) -> int:
    try:
        stack = _load_store(cfg)
    except VerificationError as exc:
        report = {"check": "store-integrity", "parameters": {"out": cfg["out"]},
                  "status": "fail", "detail": f"{exc}"}
        _emit(_envelope(cfg, None, [report]))
        return 1
    table = QuotientTable(stack, engine=cfg["engine"])
    names = list(SUITES) if cfg["suite"] == "all" else [cfg["suite"]]
    reports: List[dict] = []
    for name in names:
        reports.extend(SUITES[name](cfg, stack, table))
    envelope = _envelope(cfg, stack, reports)
    envelope["suite"] = cfg["suite"]
    _emit(envelope)
    return 1 if envelope["failures"] else 0


def _metadata(cfg: dict, stack: LevelStack) -> dict:
    return {"schedule_hash": stack.schedule.canonical_hash(),
            "field": stack.field, "engine": cfg["engine"], "seed": cfg["seed"]}


def cmd_hilbert(cfg: dict) -> int:
    stack = _load_store(cfg)
    table = QuotientTable(stack, engine=cfg["engine"])
    profile = growth_mod.hilbert(cfg["max_degree"], table)
    bound = growth_mod.check_growth_bound(profile)
    if cfg["format"] == "csv":
        path = os.path.join(cfg["out"], "hilbert.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(growth_mod.profile_to_csv(profile))
    else:
        path = os.path.join(cfg["out"], "hilbert.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(growth_mod.profile_to_json(profile, _metadata(cfg, stack)),
                      fh, sort_keys=True, indent=2)
            fh.write("\n")
    _emit({"path": path, "rows": profile.nmax, "bound": bound,
           "x_survives_all": all(profile.x_survives), "seed": cfg["seed"]})
    return 0 if bound["status"] == "pass" else 1


def cmd_gk(cfg: dict) -> int:
    stack = _load_store(cfg)
    table = QuotientTable(stack, engine=cfg["engine"])
    nmax = cfg["max_degree"]
    if nmax < 3:
        raise ConfigError("gk needs max_degree >= 3 for a non-empty window")
    profile = growth_mod.hilbert(nmax, table)
    bound = growth_mod.check_growth_bound(profile)
    window = (max(2, nmax // 16), nmax)
    slope = growth_mod.gk_slope(profile, window)
    result = {
        "bound": bound,
        "slope": {"fraction": f"{slope.numerator}/{slope.denominator}",
                  "float": float(slope),
                  "window": list(window)},
        "metadata": _metadata(cfg, stack),
        "seed": cfg["seed"],
    }
    path = os.path.join(cfg["out"], "gk.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(result, fh, sort_keys=True, indent=2)
        fh.write("\n")
    _emit(result)
    return 0 if bound["status"] == "pass" else 1


def cmd_probe(cfg: dict, poly_text: str, exponent: int) -> int:
    if exponent < 1:
        raise ConfigError("exponent must be positive")
    try:
        stack = _load_store(cfg)
    except ConfigError:
        stack = LevelStack(_load_schedule(cfg), field=cfg["field"],
                           engine=cfg["engine"])
    table = QuotientTable(stack, engine=cfg["engine"])
    try:
        poly = parse_poly(poly_text, field=cfg["field"])
    except ValueError as exc:
        raise ConfigError(f"bad polynomial: {exc}")
    if poly.is_zero():
        raise ConfigError("probe polynomial is zero")
    if poly.max_degree() * exponent > cfg["max_degree"]:
        raise ConfigError("probe degree exceeds max_degree")
    power = poly.power(exponent)
    components = []
    all_in = True
    for degree in power.degrees():
        part = power.parts[degree]
        sub = table.E(degree)
        inside = sub.contains_vector(part.to_vector())
        entry = {"degree": degree, "in_E": inside}
        if not inside:
            try:
                excl = table.excluded_words(degree)
                entry["offending_words"] = sorted(
                    code_to_word(c, degree) for c in part.coeffs if c in excl)
            except ConfigError:
                pass
        all_in = all_in and inside
        components.append(entry)
    _emit({"poly": poly_text, "exponent": exponent, "in_E": all_in,
           "components": components, "seed": cfg["seed"]})
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file mirroring the flags")
    common.add_argument("--schedule", help="schedule JSON path or 'default'")
    common.add_argument("--field", type=int, help="prime field order")
    common.add_argument("--engine", choices=("dense", "monomial", "auto"))
    common.add_argument("--max-level", dest="max_level", type=int)
    common.add_argument("--max-degree", dest="max_degree", type=int)
    common.add_argument("--budget-mb", dest="budget_mb", type=int)
    common.add_argument("--suite", choices=SUITE_NAMES)
    common.add_argument("--out", help="store / output directory")
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("json", "csv"))

    parser = argparse.ArgumentParser(
        prog="nilgrowth",
        description="Build, verify and measure the nil-algebra construction.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common],
                   help="build level spaces and persist them")
    sub.add_parser("verify", parents=[common],
                   help="run a verification suite over a stored stack")
    sub.add_parser("hilbert", parents=[common],
                   help="export the quotient Hilbert profile")
    sub.add_parser("gk", parents=[common],
                   help="growth bound check and log-log slope estimate")
    probe = sub.add_parser("probe", parents=[common],
                           help="test a polynomial power for ideal membership")
    probe.add_argument("--poly", required=True, help="polynomial text, e.g. 'xy+yx'")
    probe.add_argument("--exponent", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    previous_cap = None
    try:
        cfg = _merge_config(args)
        previous_cap = _apply_budget(cfg["budget_mb"])
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "hilbert":
            return cmd_hilbert(cfg)
        if args.command == "gk":
            return cmd_gk(cfg)
        if args.command == "probe":
            return cmd_probe(cfg, args.poly, args.exponent)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except VerificationError as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return 1
    finally:
        if previous_cap is not None:
            BUDGET.max_dense_degree = previous_cap


if __name__ == "__main__":
    sys.exit(main())
