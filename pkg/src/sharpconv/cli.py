"""Command-line front end.

Subcommands::

  sharpconv decide  --kind discrete-young --q 2 --q1 4/3 --q2 4/3 --s 0 --s1 0 --s2 0 --n 1
  sharpconv explain --kind A4 --q 2 --q1 4/3 --q2 4/3
  sharpconv probe   --op young --family box --q 2 --q1 2 --q2 2
  sharpconv sweep   --kind discrete-young --axis q=0:1:1/4 --axis q1=0:1:1/4 --axis q2=0:1:1/4 --check unweighted

Exit codes: decide/explain 0 holds, 1 fails; probe 0 Bounded, 1 Diverging,
2 Inconclusive; sweep 0 iff no disagreements. Usage errors give 64, domain
errors 65, budget/grid errors 66. Data goes to stdout; diagnostics go to stderr.

Environment: SHARPCONV_CONFIG names a JSON config file (``schema_version: 1``);
SHARPCONV_BACKEND selects the kernel backend (``cython`` or ``python``).
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from . import regions
from .config import resolve_config
from .errors import BudgetError, DegenerateInput, DomainError, GridError, ParseError, Unsupported
from .fitting import BOUNDED, DIVERGING, INCONCLUSIVE
from .index import (
    ExtendedExponent,
    FracTuple,
    YoungTuple,
    dual_frac_tuple,
    dual_young_tuple,
    parse_rational,
)

NOT_DIVERGING = "not-Diverging"

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET = 64, 65, 66

YOUNG_KINDS = ("discrete-young", "power-young", "bracket-young", "mod-multiplier")
FRAC_KINDS = ("frac-d", "frac-c")
KINDS = YOUNG_KINDS + ("mod-product", "embed-d", "embed-c", "young-d0", "young-c0") + FRAC_KINDS + (
    "capability-set",)
CONDITION_KINDS = ("A1", "A2", "A3", "A4", "C1", "C3", "C4")

# tuple fields per kind; exponent fields are marked by a leading "q" or "p"
FIELDS = {
    "young": ("q", "q1", "q2", "s", "s1", "s2", "n"),
    "mod-product": ("p", "p1", "p2", "q", "q1", "q2", "s", "s1", "s2", "n"),
    "embed": ("q1", "s1", "q2", "s2", "n"),
    "young0": ("q", "q1", "q2"),
    "frac": ("q", "p", "s", "t", "lambda", "n"),
    "capability": ("s", "s1", "s2", "t", "n"),
}
EXPONENT_FIELDS = {"q", "q1", "q2", "p", "p1", "p2"}
WEIGHT_DEFAULTS = {"s": "0", "s1": "0", "s2": "0", "t": "0", "n": "1"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _family_of(kind: str) -> str:
    if kind in YOUNG_KINDS or kind in ("A1", "A2", "A3", "A4"):
        return "young"
    if kind in FRAC_KINDS or kind in ("C1", "C3", "C4"):
        return "frac"
    if kind in ("embed-d", "embed-c"):
        return "embed"
    if kind in ("young-d0", "young-c0"):
        return "young0"
    return {"mod-product": "mod-product", "capability-set": "capability"}[kind]


def _field_values(kind: str, values: dict, optional_t: bool = False) -> dict:
    """Fill weight defaults and check that every exponent field is present."""
    out = {}
    for name in FIELDS[_family_of(kind)]:
        v = values.get(name)
        if v is None:
            if name == "t" and optional_t:
                continue
            if name in WEIGHT_DEFAULTS and not (name == "t" and kind == "capability-set"):
                v = WEIGHT_DEFAULTS[name]
            else:
                raise UsageError(f"--{name} is required for kind {kind}")
        out[name] = v
    return out


def _dim(v) -> int:
    if isinstance(v, int):
        return v
    r = parse_rational(v)
    if r.denominator != 1 or r < 1:
        raise DomainError(f"dimension must be a positive integer, got {v}")
    return int(r)


def build_tuple(kind: str, f: dict):
    fam = _family_of(kind)
    if fam == "young":
        return YoungTuple(f["q"], f["q1"], f["q2"], f["s"], f["s1"], f["s2"], _dim(f["n"]))
    if fam == "frac":
        return FracTuple(f["q"], f["p"], f["s"], f["t"], f["lambda"], _dim(f["n"]))
    if fam == "mod-product":
        return YoungTuple(f["q"], f["q1"], f["q2"], f["s"], f["s1"], f["s2"], _dim(f["n"]))
    raise UsageError(f"kind {kind} has no index tuple")


def decide(kind: str, f: dict) -> regions.Verdict:
    """Run the decider named by ``kind`` on raw field values."""
    fam = _family_of(kind)
    if fam in ("young", "frac"):
        return regions.DECIDERS[kind](build_tuple(kind, f))
    if fam == "mod-product":
        return regions.modulation_product_holds(f["p"], f["p1"], f["p2"], build_tuple(kind, f))
    if fam == "embed":
        fn = regions.embedding_discrete_holds if kind == "embed-d" else regions.embedding_continuous_holds
        return fn(f["q1"], f["s1"], f["q2"], f["s2"], _dim(f["n"]))
    if fam == "young0":
        fn = regions.unweighted_discrete_young_holds if kind == "young-d0" else \
            regions.unweighted_continuous_young_holds
        return fn(f["q"], f["q1"], f["q2"])
    return regions.capability_set_verdict(f["s"], f["s1"], f["s2"], _dim(f["n"]), f.get("t"))


def _add_tuple_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("tuple fields (exponents: integer, a/b or inf; weights: integer or a/b)")
    for name in ("q", "q1", "q2", "p", "p1", "p2", "s", "s1", "s2", "t", "n"):
        g.add_argument(f"--{name}", default=None)
    g.add_argument("--lambda", dest="lam", default=None, help="fractional-integral order")


def _tuple_args(args) -> dict:
    d = {k: getattr(args, k) for k in ("q", "q1", "q2", "p", "p1", "p2", "s", "s1", "s2", "t", "n")}
    d["lambda"] = args.lam
    return {k: v for k, v in d.items() if v is not None}


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="JSON config file (overrides $SHARPCONV_CONFIG)")
    p.add_argument("--cfg", action="append", default=[], metavar="KEY=JSON",
                   help="config override, e.g. --cfg workers=4")
    p.add_argument("--workers", type=int, default=None)


def _config(args) -> dict:
    overrides = {}
    for item in args.cfg:
        if "=" not in item:
            raise UsageError(f"--cfg expects KEY=VALUE, got {item!r}")
        key, raw = item.split("=", 1)
        try:
            overrides[key] = json.loads(raw)
        except json.JSONDecodeError:
            overrides[key] = raw
    if args.workers is not None:
        overrides["workers"] = args.workers
    try:
        return resolve_config(overrides, path=args.config)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _int_list(text: Optional[str]):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: Optional[str]):
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


# ---------------------------------------------------------------- decide / explain

def cmd_decide(args) -> int:
    kind = args.kind
    raw = _tuple_args(args)
    if kind in CONDITION_KINDS:
        v = regions.DECIDERS[kind](build_tuple(kind, _field_values(kind, raw)))
    else:
        v = decide(kind, _field_values(kind, raw, optional_t=(kind == "capability-set")))
    print(v.pretty() if args.pretty else v.to_json())
    return EXIT_OK if v.holds else EXIT_FAIL


# ---------------------------------------------------------------- probe

def cmd_probe(args) -> int:
    from . import capability, probes, riesz

    cfg = _config(args)
    raw = _tuple_args(args)
    op = args.op
    if op == "young":
        g = build_tuple("discrete-young", _field_values("discrete-young", raw))
        rep = probes.growth_probe(g, args.family or "box", _int_list(args.schedule), cfg, args.method)
    elif op == "dilation":
        g = build_tuple("discrete-young", _field_values("discrete-young", raw))
        rep = probes.dilation_probe(g, _float_list(args.lambdas), args.weight, cfg, args.method or "auto")
    elif op == "riesz":
        g = build_tuple("frac-d", _field_values("frac-d", raw))
        rep = riesz.frac_growth_probe(g, args.family or "flat", _int_list(args.schedule), cfg,
                                      args.method, c2_demo=args.c2_demo)
    else:
        f = _field_values("capability-set", raw)
        n = _dim(f["n"])
        mode = args.mode
        if mode == "sup":
            rep = capability.capability_sup_probe(f["s"], f["s1"], f["s2"], f["t"], n,
                                                  _int_list(args.schedule), cfg)
        else:
            rep = capability.capability_continuous_probe(f["s"], f["s1"], f["s2"], f["t"], n, mode,
                                                         _float_list(args.xs), cfg)
    sys.stdout.write(rep.to_csv() if args.csv else rep.to_json() + "\n")
    return {BOUNDED: EXIT_OK, DIVERGING: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[rep.verdict]


# ---------------------------------------------------------------- sweep

def _parse_axis(text: str):
    """``name=lo:hi:step``; exponent axes run over reciprocals 1/q (0 means inf)."""
    try:
        name, spec = text.split("=", 1)
        lo, hi, step = (parse_rational(x) for x in spec.split(":"))
    except (ValueError, ParseError) as exc:
        raise UsageError(f"--axis expects name=lo:hi:step with rationals, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise UsageError(f"--axis {name}: need step > 0 and lo <= hi")
    count = int((hi - lo) / step) + 1
    return name.strip(), [lo + i * step for i in range(count)]


def _axis_value(name: str, v: Fraction):
    if name in EXPONENT_FIELDS:
        if v < 0:
            raise DomainError(f"reciprocal exponent for {name} must be >= 0, got {v}")
        return ExtendedExponent(v)
    return v


def _text(v) -> str:
    return str(v)


def _expected_probe(kind: str, g, holds: bool, cfg):
    """(probe verdict, expectation) for a boundary-adjacent cell, or None when no probe applies.

    The probes witness necessity: a holding tuple must not diverge, and a failing
    tuple whose family exponent is positive must diverge.
    """
    from . import probes, riesz

    sched = cfg["verify_schedule"]
    if kind in ("discrete-young", "mod-multiplier"):
        alpha = probes.box_growth_exponent(g)
        if not holds and alpha <= 0:
            return None
        rep = probes.growth_probe(g, "box", sched, cfg)
        return rep.verdict, (NOT_DIVERGING if holds else DIVERGING)
    if kind == "power-young":
        from .index import dilation_exponent
        dil = dilation_exponent(g)
        if not holds and dil == 0:
            return None
        rep = probes.dilation_probe(g, config=cfg)
        return rep.verdict, (NOT_DIVERGING if holds else DIVERGING)
    if kind == "frac-d":
        alpha = riesz.alpha_frac(g)
        if not holds and alpha <= 0:
            return None
        rep = riesz.frac_growth_probe(g, "flat", sched, cfg)
        return rep.verdict, (NOT_DIVERGING if holds else DIVERGING)
    return None


def _sweep_row(job):
    """Decide (and optionally check/verify) one grid cell; module-level for worker processes."""
    kind, fields, checks, cfg = job
    try:
        v = decide(kind, fields)
    except DomainError as exc:
        return {"error": str(exc)}
    row = {"holds": v.holds, "matched": v.matched or ""}
    fam = _family_of(kind)
    for check in checks:
        ok = None
        if check == "exclusivity" and fam in ("young", "frac"):
            g = build_tuple(kind, fields)
            flags = regions.young_flags_of(g) if fam == "young" else regions.frac_flags_of(g)
            ok = sum(flags) <= 1
        elif check == "duality" and fam in ("young", "frac"):
            g = build_tuple(kind, fields)
            d = dual_young_tuple(g) if fam == "young" else dual_frac_tuple(g)
            ok = regions.DECIDERS[kind](d).holds == v.holds
        elif check == "unweighted" and fam == "young":
            g = build_tuple(kind, fields)
            if g.s == 0 and g.s1 == 0 and g.s2 == 0:
                ref = regions.unweighted_discrete_young_holds if kind in ("discrete-young", "mod-multiplier") \
                    else regions.unweighted_continuous_young_holds
                ok = ref(g.q, g.q1, g.q2).holds == v.holds
        row[check] = ok
    return row


def _verify_cell(job):
    kind, fields, holds, cfg = job
    try:
        res = _expected_probe(kind, build_tuple(kind, fields), holds, cfg)
    except (BudgetError, GridError, DegenerateInput, Unsupported, DomainError):
        return None
    return res


def _map(fn, jobs, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [fn(j) for j in jobs]


def cmd_sweep(args) -> int:
    cfg = _config(args)
    kind = args.kind
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}")
    fixed = _tuple_args(args)
    axes = [_parse_axis(a) for a in args.axis]
    names = [a for a, _ in axes]
    allowed = FIELDS[_family_of(kind)]
    for name in names:
        if name not in allowed:
            raise UsageError(f"axis {name!r} is not a field of kind {kind}")
        if name in fixed:
            raise UsageError(f"{name} is both an axis and a fixed field")
    size = 1
    for _, vals in axes:
        size *= len(vals)
    if size > cfg["max_grid"]:
        print(f"sweep: grid of {size} cells exceeds max_grid = {cfg['max_grid']}", file=sys.stderr)
        return EXIT_BUDGET
    base = {k: v for k, v in fixed.items()}
    cells = []
    for combo in itertools.product(*[vals for _, vals in axes]):
        f = dict(base)
        for name, v in zip(names, combo):
            f[name] = _axis_value(name, v)
        cells.append(_field_values(kind, f, optional_t=(kind == "capability-set")))
    workers = int(cfg.get("workers", 1) or 1)
    checks = list(args.check)
    rows = _map(_sweep_row, [(kind, c, checks, cfg) for c in cells], workers)

    verify = {}
    if args.verify:
        shape = [len(vals) for _, vals in axes]
        strides = [1] * len(shape)
        for i in range(len(shape) - 2, -1, -1):
            strides[i] = strides[i + 1] * shape[i + 1]
        adjacent = []
        for idx, row in enumerate(rows):
            if "error" in row:
                continue
            pos = [(idx // strides[a]) % shape[a] for a in range(len(shape))]
            for a in range(len(shape)):
                for step in (-1, 1):
                    p = pos[a] + step
                    if 0 <= p < shape[a]:
                        other = rows[idx + step * strides[a]]
                        if "error" not in other and other["holds"] != row["holds"]:
                            adjacent.append(idx)
                            break
                else:
                    continue
                break
        results = _map(_verify_cell, [(kind, cells[i], rows[i]["holds"], cfg) for i in adjacent], workers)
        verify = dict(zip(adjacent, results))

    out = csv.writer(sys.stdout, lineterminator="\n")
    field_names = [n for n in allowed if n != "t" or kind != "capability-set" or "t" in cells[0]]
    header = list(field_names) + ["holds", "matched"] + checks
    if args.verify:
        header += ["probe_verdict", "expected", "agree"]
    out.writerow(header)
    agree = disagree = errors = 0
    for idx, (cell, row) in enumerate(zip(cells, rows)):
        if "error" in row:
            errors += 1
            out.writerow([_text(cell.get(n, "")) for n in field_names] + ["error", row["error"]]
                         + [""] * (len(header) - len(field_names) - 2))
            continue
        line = [_text(cell.get(n, "")) for n in field_names] + [str(row["holds"]).lower(), row["matched"]]
        for check in checks:
            ok = row.get(check)
            line.append("" if ok is None else str(ok).lower())
            if ok is True:
                agree += 1
            elif ok is False:
                disagree += 1
        if args.verify:
            res = verify.get(idx)
            if res is None:
                line += ["", "", ""]
            else:
                got, want = res
                ok = (got != DIVERGING) if want == NOT_DIVERGING else (got == want)
                line += [got, want, str(ok).lower()]
                agree += ok
                disagree += not ok
        out.writerow(line)
    sys.stdout.flush()
    print(f"sweep: {len(cells)} cells, {agree} agreements, {disagree} disagreements, {errors} domain errors"
          + (f", {len(verify)} probed" if args.verify else ""), file=sys.stderr)
    return EXIT_OK if disagree == 0 else EXIT_FAIL


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sharpconv", description="Sharp weighted Young and fractional-integral index regions.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    for name, hlp in (("decide", "decide one tuple and print the verdict"),
                      ("explain", "print the full clause trace of one tuple")):
        p = sub.add_parser(name, help=hlp)
        kinds = KINDS + CONDITION_KINDS
        p.add_argument("--kind", required=name == "decide", default=None, choices=kinds)
        p.add_argument("--pretty", action="store_true", default=name == "explain",
                       help="human-readable table instead of JSON")
        p.add_argument("--json", dest="pretty", action="store_false")
        _add_tuple_flags(p)

    p = sub.add_parser("probe", help="run a numerical probe and print its report")
    p.add_argument("--op", required=True, choices=("young", "riesz", "capability", "dilation"))
    p.add_argument("--family", default=None,
                   help="young: box|critical|log; riesz: flat|log-f|log-g")
    p.add_argument("--schedule", default=None, help="comma-separated N (or K) values")
    p.add_argument("--lambdas", default=None, help="dilation: comma-separated lambdas in (0, 1]")
    p.add_argument("--weight", default="power", choices=("power", "bracket"))
    p.add_argument("--mode", default="sup", choices=("sup", "bracket", "power"),
                   help="capability: lattice sup over k, or a continuous form")
    p.add_argument("--xs", default=None, help="capability continuous: comma-separated |x| values")
    p.add_argument("--method", default=None, choices=("auto", "direct", "fft"))
    p.add_argument("--c2-demo", action="store_true")
    p.add_argument("--csv", action="store_true", help="emit frozen-column CSV instead of JSON")
    _add_tuple_flags(p)
    _add_config_flags(p)

    p = sub.add_parser("sweep", help="decide every tuple of a rational grid, emit CSV")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--axis", action="append", default=[], metavar="NAME=LO:HI:STEP",
                   help="grid axis; exponent axes are in reciprocals 1/q")
    p.add_argument("--check", action="append", default=[], choices=("unweighted", "duality", "exclusivity"))
    p.add_argument("--verify", action="store_true", help="probe every boundary-adjacent cell")
    _add_tuple_flags(p)
    _add_config_flags(p)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command == "explain" and args.kind is None:
            args.kind = "frac-d" if args.lam is not None else "discrete-young"
        handler = {"decide": cmd_decide, "explain": cmd_decide, "probe": cmd_probe, "sweep": cmd_sweep}
        return handler[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, GridError) as exc:
        print(f"sharpconv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ParseError, DegenerateInput, Unsupported) as exc:
        print(f"sharpconv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
