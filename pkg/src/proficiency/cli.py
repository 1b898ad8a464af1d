"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 computation error (overflow or
enumeration cap), 3 reference-table mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import reference
from .datasets_io import catalog, get_set, load_device_set, load_model
from .device_model import (
    average_set_power,
    expected_on_power,
    power_value_count,
    state_count,
    total_power,
)
from .errors import EnumerationCapError, StateSpaceOverflowError, ValidationError
from .information import analyze, max_entropy_report, parse_grid, source_entropy, sweep
from .probability import max_entropy_model, power_distribution, uniform_model
from .profile import (
    average_power,
    energy,
    estimate_p_hat,
    profile_csv_text,
    read_profile_csv,
    synthesize,
)
from .state_space import occupation_histogram

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


def fmt(x) -> str:
    if x is None:
        return "undefined"
    if isinstance(x, int):
        return str(x)
    return f"{x:.6g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _resolve_set(selector: str):
    if selector.lower() in {e.key for e in catalog()}:
        return get_set(selector)
    if Path(selector).is_file():
        return load_device_set(selector)
    raise ValidationError(f"{selector!r} is neither a catalog key nor a readable file")


def _resolve_model(args, device_set):
    if args.model is not None:
        return load_model(args.model, device_set)
    if args.p_hat is not None:
        return uniform_model(device_set, args.p_hat)
    return None


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    def clean(v):
        if isinstance(v, float):
            return float(fmt(v))
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, list):
            return [clean(x) for x in v]
        return v

    return json.dumps(clean(obj), indent=2) + "\n"


def _report_text(pairs, fmt_name: str) -> str:
    if fmt_name == "json":
        return _json_text(dict(pairs))
    if fmt_name == "csv":
        return _csv_text(["field", "value"], [[k, v if isinstance(v, str) else fmt(v)] for k, v in pairs])
    return _aligned(pairs)


def _aligned(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k:<{width}}  {fmt(v) if not isinstance(v, str) else v}\n" for k, v in pairs)


# -- verbs ---------------------------------------------------------------

def cmd_list(args) -> int:
    rows = []
    for e in catalog():
        s = e.set
        rows.append([e.key, s.name, s.n_devices, power_value_count(s), state_count(s), total_power(s)])
    _emit(_csv_text(["key", "name", "N", "S", "M", "P_total_w"], rows), args.out)
    return EXIT_OK


def cmd_info(args) -> int:
    s = _resolve_set(args.set)
    m = state_count(s)
    info = {
        "name": s.name,
        "devices": s.as_lists(),
        "N": s.n_devices,
        "S": power_value_count(s),
        "S_with_off": power_value_count(s, include_off=True),
        "M": m,
        "P_total_w": total_power(s),
        "P_av_w": average_set_power(s),
        "expected_on_power_w": expected_on_power(s),
        "H_max_bits": math.log2(m),
    }
    if args.format != "json":
        info["devices"] = json.dumps(info["devices"])
    _emit(_report_text(list(info.items()), args.format), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    s = _resolve_set(args.set)
    model = _resolve_model(args, s)
    report = max_entropy_report(s) if model is None else analyze(s, model)
    _emit(_report_text(list(report.to_dict().items()), args.format), args.out)
    return EXIT_OK


def cmd_occupation(args) -> int:
    s = _resolve_set(args.set)
    hist = occupation_histogram(s, engine=args.engine)
    model = _resolve_model(args, s)
    probs = hist.probabilities() if model is None else power_distribution(s, model).pmf
    rows = [[int(p), int(hist.counts[p]), fmt(float(probs[p]))] for p in hist.occupied]
    _emit(_csv_text(["power_w", "count", "probability"], rows), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    s = _resolve_set(args.set)
    grid = parse_grid(args.grid) if args.grid else None
    rows = [[fmt(r.p_hat), fmt(r.H), fmt(r.I_P), fmt(r.C)] for r in sweep(s, grid)]
    _emit(_csv_text(["p_hat", "H_bits", "IP_bits", "C"], rows), args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    s = _resolve_set(args.set)
    model = _resolve_model(args, s) or max_entropy_model(s)
    profile = synthesize(s, model, args.n, args.seed, dt=args.dt)
    _emit(profile_csv_text(profile), args.out)
    return EXIT_OK


def cmd_profile_stats(args) -> int:
    profile = read_profile_csv(args.profile)
    stats = {
        "n": len(profile),
        "dt_s": profile.dt,
        "energy_ws": energy(profile),
        "average_power_w": average_power(profile),
        "zero_fraction": float((profile.samples == 0).mean()),
    }
    if args.set:
        stats["p_hat_estimate"] = estimate_p_hat(profile, _resolve_set(args.set))
    _emit(_report_text(list(stats.items()), args.format), args.out)
    return EXIT_OK


def reference_cells():
    """Recompute every published table cell.

    Yields ``(table, set_key, quantity, label, computed, printed, tol)``.
    """
    ten_devices = get_set("b")
    for p, h in reference.TABLE3.items():
        yield ("table3", "on-off-10", "H", f"p_hat={p}",
               source_entropy(ten_devices, uniform_model(ten_devices, p)), h, reference.TOLERANCES["H"])
    for key, (i_p, c, c_hat) in reference.TABLE2.items():
        r = max_entropy_report(get_set(key))
        yield ("table2", key, "I_P_max", "", r.I_P_max, i_p, reference.TOLERANCES["I_P_max_t2"])
        yield ("table2", key, "C_max", "", r.C_max, c, reference.TOLERANCES["C_max"])
        yield ("table2", key, "c_hat", "", r.c_hat, c_hat, reference.TOLERANCES["c_hat_t2"])
    for key, by_p in reference.TABLE4.items():
        s = get_set(key)
        for p, (i_p, c) in by_p.items():
            r = analyze(s, uniform_model(s, p))
            yield ("table4", key, "I_P", f"p_hat={p}", r.I_P, i_p, reference.TOLERANCES["I_P"])
            yield ("table4", key, "C", f"p_hat={p}", r.C, c, reference.TOLERANCES["C"])
    for table, values, include_off, chat_tol in (
        ("table5", reference.TABLE5, False, reference.TOLERANCES["c_hat_t5"]),
        ("table7", reference.TABLE7, True, reference.TOLERANCES["c_hat_t7"]),
    ):
        for key, (S, M, h_max, i_p_max, c_max, c_hat) in values.items():
            s = get_set(key)
            r = max_entropy_report(s)
            yield (table, key, "S", "", power_value_count(s, include_off), S, 0)
            yield (table, key, "M", "", r.M, M, 0)
            yield (table, key, "H_max", "", r.H_max, h_max, reference.TOLERANCES["H_max"])
            yield (table, key, "I_P_max", "", r.I_P_max, i_p_max, reference.TOLERANCES["I_P_max"])
            yield (table, key, "C_max", "", r.C_max, c_max, reference.TOLERANCES["C_max"])
            yield (table, key, "c_hat", "", r.c_hat, c_hat, chat_tol)


def _within(computed, printed, tol) -> bool:
    if tol == 0:
        return computed == printed
    # half-ulp slack so that e.g. |0.795 - 0.80| == 0.005 is not decided by float noise
    return abs(computed - printed) <= tol + 1e-9


def cmd_tables(args) -> int:
    rows, failures = [], 0
    for table, key, qty, label, computed, printed, tol in reference_cells():
        if _within(computed, printed, tol):
            status, note = "ok", ""
        elif (table, key, qty) in reference.ERRATA:
            status, note = "KNOWN", reference.ERRATA[(table, key, qty)]
            failures += args.strict
        else:
            status, note = "MISMATCH", ""
            failures += 1
        rows.append([table, key, qty, label, fmt(computed), fmt(printed), fmt(tol), status, note])
    header = ["table", "set", "quantity", "condition", "computed", "printed", "tolerance", "status", "note"]
    _emit(_csv_text(header, rows), args.out)
    if failures:
        print(f"{failures} reference cell(s) outside tolerance", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="proficiency", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add_set(p, required=True):
        p.add_argument("--set", required=required, help="catalog key or device-set JSON path")

    def add_model(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--p-hat", type=float, help="uniform device probability")
        g.add_argument("--model", help="probability model JSON path")
        g.add_argument("--max-entropy", action="store_true", help="equally likely states (default)")

    def add_out(p, formats=False):
        p.add_argument("--out", help="output path (default: stdout)")
        if formats:
            p.add_argument("--format", choices=["text", "csv", "json"], default="text")

    p = sub.add_parser("list", help="list catalog sets")
    add_out(p)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("info", help="scalar characteristics of a set")
    add_set(p)
    add_out(p, formats=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("analyze", help="entropy, mutual information and proficiency")
    add_set(p)
    add_model(p)
    add_out(p, formats=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("occupation", help="occupation numbers as CSV")
    add_set(p)
    add_model(p)
    p.add_argument("--engine", choices=["convolve", "enumerate"], default="convolve")
    add_out(p)
    p.set_defaults(func=cmd_occupation)

    p = sub.add_parser("sweep", help="H, I_P and C over a p_hat grid as CSV")
    add_set(p)
    p.add_argument("--grid", help="start:stop:step (default 0.05:0.95:0.05)")
    add_out(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="synthesize a load profile CSV")
    add_set(p)
    add_model(p)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dt", type=float, default=1.0)
    add_out(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("profile-stats", help="energy, average power and p_hat of a profile CSV")
    p.add_argument("--profile", required=True)
    add_set(p, required=False)
    add_out(p, formats=True)
    p.set_defaults(func=cmd_profile_stats)

    p = sub.add_parser("tables", help="recompute the published tables and compare")
    p.add_argument("--strict", action="store_true", help="count documented errata as mismatches")
    add_out(p)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StateSpaceOverflowError, EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
