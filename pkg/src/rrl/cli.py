"""Command-line interface: props, spectrum, extremes, verify, sweep, consensus.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Timings go to stderr so that stdout and written files stay byte-identical
across repeated runs.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict

from . import conjectures, consensus, oracle, spectral, verify
from .core import AdmissibilityError, MatrixKind, RRLGraph, basic_properties

FORMATS = ("json", "csv", "table")
SWEEP_FORMATS = ("csv", "jsonl", "json", "table")
# argparse fields that do not change results and are kept out of the envelope
_EXECUTION_ONLY = ("func", "format", "out", "command", "workers")


class CLIError(Exception):
    """Validation problem reported with exit status 2."""


def round15(obj):
    """Recursively round floats to 15 significant digits; sets become sorted lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        return float(format(obj, ".15g"))
    if hasattr(obj, "item") and not hasattr(obj, "__len__"):
        return round15(obj.item())
    if isinstance(obj, dict):
        return {str(k): round15(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(round15(v) for v in obj)
    if isinstance(obj, (list, tuple)) or hasattr(obj, "tolist"):
        seq = obj.tolist() if hasattr(obj, "tolist") else obj
        return [round15(v) for v in seq]
    return obj


def _cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".15g")
    if isinstance(v, list):
        return "|".join(_cell(x) for x in v)
    if v is None:
        return ""
    return str(v)


def envelope(command: str, parameters: dict, payload, fmt: str = "json") -> dict:
    return {
        "command": command,
        "parameters": round15(parameters),
        "payload": round15(payload),
        "format": fmt,
    }


def render_json(command, parameters, payload) -> str:
    return json.dumps(envelope(command, parameters, payload), indent=2) + "\n"


def render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields = list(rows[0]) if rows else []
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_cell(round15(r.get(k))) for k in fields])
    return buf.getvalue()


def render_table(rows: list[dict]) -> str:
    if not rows:
        return "(empty)\n"
    fields = list(rows[0])
    cells = [[_cell(round15(r.get(k))) for k in fields] for r in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) for i, f in enumerate(fields)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def emit(args, payload, rows: list[dict]) -> str:
    """Render ``payload`` (json) or ``rows`` (csv, table) according to ``args.format``."""
    params = {k: v for k, v in vars(args).items() if k not in _EXECUTION_ONLY}
    if args.format == "json":
        text = render_json(args.command, params, payload)
    elif args.format == "csv":
        text = render_csv(rows)
    else:
        text = render_table(rows)
    _write(text, getattr(args, "out", None))
    return text


def _write(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _graph(args) -> RRLGraph:
    return RRLGraph(args.n, args.m)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_props(args) -> int:
    g = _graph(args)
    props = asdict(basic_properties(g))
    comparison = []
    if args.exact:
        if g.N > oracle.DENSE_MAX_N:
            raise CLIError(f"--exact supports N <= {oracle.DENSE_MAX_N}, got N={g.N}")
        exact = oracle.oracle_properties(g)
        pairs = [
            ("chromatic", props["chromatic_paper"], exact.get("exact_chromatic")),
            ("girth", props["girth_paper"], exact["exact_girth"]),
            ("diameter", props["diameter"], exact["exact_diameter"]),
            ("radius", props["radius"], exact["exact_radius"]),
        ]
        if "exact_chromatic" not in exact:
            _note(f"exact chromatic search skipped: N > {oracle.CHROMATIC_MAX_N}")
        for name, formula, ex in pairs:
            comparison.append(
                {"quantity": name, "formula": formula, "exact": ex, "mismatch": ex is not None and ex != formula}
            )
        props.update({k: exact.get(k) for k in ("exact_chromatic", "exact_girth", "exact_diameter", "exact_radius")})
        props["mismatch"] = any(r["mismatch"] for r in comparison)
    payload = {"N": g.N, "m": g.m, "properties": props}
    if args.exact:
        payload["comparison"] = comparison
        rows = comparison
    else:
        rows = [{"quantity": k, "value": v} for k, v in props.items()]
    emit(args, payload, rows)
    return 0


def cmd_spectrum(args) -> int:
    g = _graph(args)
    rep = spectral.full_spectrum(g, MatrixKind(args.kind))
    rows = [{"j": j, "value": float(v)} for j, v in enumerate(rep.values)]
    emit(args, {"N": g.N, "m": g.m, "kind": rep.matrix_kind.value, "rows": rows}, rows)
    return 0


def extremes_payload(g: RRLGraph) -> dict:
    r = spectral.extremal_report(g)
    out = {"N": g.N, "m": g.m}
    out.update(asdict(r))
    out["gamma_ties"] = sorted(r.gamma_ties)
    try:
        out["j_star_candidates"] = sorted(spectral.closed_form_jstar_candidates(g))
    except spectral.NoClosedForm:
        out["j_star_candidates"] = None
    return out


def cmd_extremes(args) -> int:
    payload = extremes_payload(_graph(args))
    emit(args, payload, [{"quantity": k, "value": v} for k, v in payload.items()])
    return 0


def _verify_rows(d: dict) -> list[dict]:
    rows = []
    for key, v in d.items():
        if isinstance(v, dict):
            rows += [{"quantity": f"{key}.{k}", "value": x} for k, x in v.items()]
        else:
            rows.append({"quantity": key, "value": v})
    return rows


def cmd_verify(args) -> int:
    if args.n_max < 4:
        raise CLIError(f"--n-max must be >= 4, got {args.n_max}")
    rep = verify.verify_range(
        args.n_max,
        n_min=args.n_min,
        tol=args.tol,
        dense_tol=args.dense_tol,
        dense_max=0 if args.no_dense else oracle.DENSE_MAX_N,
        workers=conjectures.worker_count(args.workers),
    )
    d = rep.as_dict()
    emit(args, d, _verify_rows(d))
    _note(f"verify: runtime {rep.runtime_s:.2f} s, {'ok' if rep.ok else 'FAILED'}")
    if not rep.ok:
        f = rep.first_failure
        _note(f"verify: first offending index N={f.N} m={f.m} j={f.j} kind={f.kind} deviation={f.deviation:.3e}")
        return 1
    return 0


def cmd_sweep(args) -> int:
    if args.n_min < 4 or args.n_max < args.n_min:
        raise CLIError(f"need 4 <= n-min <= n-max, got {args.n_min}, {args.n_max}")
    records, summary = conjectures.sweep(args.n_min, args.n_max, workers=conjectures.worker_count(args.workers))
    sd = summary.as_dict()
    if args.format == "csv":
        text = conjectures.to_csv_text(records)
    elif args.format == "jsonl":
        buf = io.StringIO()
        conjectures.write_jsonl(records, buf)
        text = buf.getvalue()
    elif args.format == "json":
        params = {k: v for k, v in vars(args).items() if k not in _EXECUTION_ONLY}
        text = render_json("sweep", params, {"summary": sd, "records": [r.row() for r in records]})
    else:
        text = render_table([r.row() for r in records])
    _write(text, args.out)
    summary_text = render_table([{"quantity": k, "value": v} for k, v in sd.items()])
    if args.out is not None:
        sys.stdout.write(summary_text)
    else:
        sys.stderr.write(summary_text)
    _note(f"sweep: runtime {summary.runtime_s:.2f} s")
    if summary.conj1_counterexamples or summary.conj2_counterexamples:
        _note(
            "WARNING: conjecture counterexamples found: "
            f"conj1={summary.conj1_counterexamples[:10]} conj2={summary.conj2_counterexamples[:10]}"
        )
    return 0


def cmd_consensus(args) -> int:
    g = _graph(args)
    run = consensus.run(g, args.steps, args.seed)
    try:
        rep = consensus.rate_report(run)
    except consensus.RateFitError as exc:
        raise CLIError(f"{exc}; try a different --steps") from exc
    payload = asdict(rep)
    if args.errors:
        payload["errors"] = run.trajectory_errors.tolist()
        rows = [{"t": t, "error": float(e)} for t, e in enumerate(run.trajectory_errors)]
    else:
        rows = [{"quantity": k, "value": v} for k, v in payload.items()]
    emit(args, payload, rows)
    return 0


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rrl", description="Spectral toolkit for regular ring lattices C_N^m.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--n", type=int, required=True, help="number of vertices N")
        sp.add_argument("--m", type=int, required=True, help="neighbours per side")
        sp.add_argument("--format", choices=FORMATS, default="table")
        sp.add_argument("--out", default=None, help="write output to this path")
        sp.set_defaults(func=func)
        return sp

    sp = graph_cmd("props", cmd_props, "topological quantities, optionally against exhaustive search")
    sp.add_argument("--exact", action="store_true", help="add oracle columns and a mismatch flag")

    sp = graph_cmd("spectrum", cmd_spectrum, "closed-form spectrum of one matrix kind")
    sp.add_argument("--kind", choices=[k.value for k in MatrixKind], default=MatrixKind.LAPLACIAN.value)

    graph_cmd("extremes", cmd_extremes, "extremal eigenvalues and indices")

    sp = graph_cmd("consensus", cmd_consensus, "simulate average consensus and fit the decay rate")
    sp.add_argument("--steps", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--errors", action="store_true", help="emit per-step error norms")

    sp = sub.add_parser("verify", help="closed forms against the oracles for all N <= n-max")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=4)
    sp.add_argument("--tol", type=_positive_float, default=1e-9)
    sp.add_argument("--dense-tol", type=_positive_float, default=1e-8)
    sp.add_argument("--no-dense", action="store_true", help="skip the dense eigensolver")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--format", choices=FORMATS, default="table")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="test both conjectures over a range of N")
    sp.add_argument("--n-min", type=int, default=4)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out", default=None, help="record file; the summary then goes to stdout")
    sp.add_argument("--format", choices=SWEEP_FORMATS, default="csv")
    sp.add_argument("--workers", type=int, default=None)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except (AdmissibilityError, CLIError, ValueError, TypeError) as exc:
        print(f"rrl {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except oracle.OracleError as exc:
        print(f"rrl {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except conjectures.TheoremViolation as exc:
        print(f"rrl {args.command}: consistency failure: {exc}", file=sys.stderr)
        return 1
    _note(f"{args.command}: done in {time.perf_counter() - t0:.3f} s")
    return code


if __name__ == "__main__":
    sys.exit(main())
