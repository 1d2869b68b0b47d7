"""Configuration-driven front end: run experiment sweeps, compare results.

``relaylink run <config.toml>`` executes every experiment block in the file
and writes one CSV per experiment plus a JSON manifest of the fully
resolved configurations.  ``relaylink table <csv>...`` aligns result files
on their shared SNR points and flags pairs whose confidence intervals do
not overlap.

Exit codes: 0 success, 2 invalid configuration or input, 3 numerical
failure in the analytic integrals.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .analytic import QuadratureError
from .simulator import BerCurve, SimConfig, sweep

CSV_HEADER = ["snr_db", "ber", "ci_low", "ci_high", "bit_errors", "bits",
              "source", "rule", "t", "r", "modulation", "seed"]

_REQUIRED = {"t": int, "r": int, "modulation": str, "snr_db": list,
             "trials": int, "seed": int}
_OPTIONAL = {"rule": str, "beta1": (int, float), "beta2": (int, float),
             "max_errors": int, "selection_metric": str}


class ConfigError(ValueError):
    """Invalid experiment file or experiment block."""


def _load_experiments(path: Path) -> tuple[dict, dict]:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}")
    experiments = doc.pop("experiment", None)
    output = doc.pop("output", {})
    if doc:
        raise ConfigError(f"{path}: unknown top-level section(s): "
                          + ", ".join(sorted(doc)))
    if not isinstance(experiments, dict) or not experiments:
        raise ConfigError(f"{path}: need at least one [experiment.<name>] block")
    if not isinstance(output, dict):
        raise ConfigError(f"{path}: [output] must be a table")
    return experiments, output


def _resolve_config(path: Path, name: str, block: dict,
                    seed_override=None, trials_override=None) -> SimConfig:
    if not isinstance(block, dict):
        raise ConfigError(f"{path}: experiment {name!r} must be a table")
    block = dict(block)
    where = f"{path}: experiment {name!r}"
    fields = {}
    for key, typ in _REQUIRED.items():
        if key not in block:
            raise ConfigError(f"{where}: missing required field {key!r}")
        value = block.pop(key)
        if not isinstance(value, typ) or isinstance(value, bool):
            raise ConfigError(f"{where}: field {key!r} must be of type {typ.__name__}")
        fields[key] = value
    for key, typ in _OPTIONAL.items():
        if key in block:
            value = block.pop(key)
            if not isinstance(value, typ) or isinstance(value, bool):
                raise ConfigError(f"{where}: field {key!r} has the wrong type")
            fields[key] = value
    if block:
        raise ConfigError(f"{where}: unknown field(s): " + ", ".join(sorted(block)))
    if seed_override is not None:
        fields["seed"] = seed_override
    if trials_override is not None:
        fields["trials"] = trials_override
    fields["snr_grid_db"] = fields.pop("snr_db")
    fields["master_seed"] = fields.pop("seed")
    try:
        return SimConfig(**fields)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}")


def _format(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_curve_csv(path: Path, curve: BerCurve) -> None:
    """One row per simulated point, then any analytic overlay rows."""
    cfg = curve.config
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for point in (*curve.points, *curve.analytic):
            writer.writerow([
                _format(point.snr_db), _format(point.ber),
                _format(point.ci_low), _format(point.ci_high),
                point.bit_errors, point.bits, point.source,
                cfg.rule, cfg.t, cfg.r, cfg.modulation, cfg.master_seed,
            ])


def _threads_from_env() -> int:
    raw = os.environ.get("RELAYLINK_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"RELAYLINK_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ConfigError("RELAYLINK_THREADS must be nonnegative")
    return n if n > 0 else (os.cpu_count() or 1)


def _cmd_run(args) -> int:
    path = Path(args.config)
    experiments, output = _load_experiments(path)
    out_dir = Path(args.out) if args.out else Path(output.get("dir", "."))
    threads = _threads_from_env()
    configs = {
        name: _resolve_config(path, name, block, args.seed, args.trials)
        for name, block in experiments.items()
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {"experiments": {}}
    for name, cfg in configs.items():
        curve = sweep(cfg, threads=threads)
        csv_name = f"{name}.csv"
        write_curve_csv(out_dir / csv_name, curve)
        entry = asdict(cfg)
        entry["csv"] = csv_name
        manifest["experiments"][name] = entry
        print(f"{name}: wrote {out_dir / csv_name}")
    manifest_path = out_dir / "run_manifest.json"
    with open(manifest_path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"manifest: {manifest_path}")
    return 0


def _read_curve(path: Path) -> dict[float, dict]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != CSV_HEADER:
                raise ConfigError(f"{path}: schema mismatch (expected header "
                                  f"{','.join(CSV_HEADER)})")
            rows = {}
            for row in reader:
                rec = dict(zip(CSV_HEADER, row))
                if rec["source"] != "simulated":
                    continue
                rows[float(rec["snr_db"])] = {
                    "ber": float(rec["ber"]),
                    "ci_low": float(rec["ci_low"]),
                    "ci_high": float(rec["ci_high"]),
                }
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file")
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: malformed row ({exc})")
    if not rows:
        raise ConfigError(f"{path}: no simulated points")
    return rows


def _grid_str(snrs) -> str:
    return "[" + ", ".join(f"{v:g}" for v in sorted(snrs)) + "]"


def _cmd_table(args) -> int:
    curves = []
    for spec in args.csv:
        p = Path(spec)
        curves.append((p.stem, _read_curve(p)))
    shared = set(curves[0][1])
    for _, rows in curves[1:]:
        shared &= set(rows)
    if not shared:
        grids = "; ".join(f"{name}: {_grid_str(rows)}" for name, rows in curves)
        raise ConfigError(f"no shared SNR points across inputs ({grids})")
    names = [name for name, _ in curves]
    header = ["snr_db"] + names + ["non_overlap"]
    lines = [header]
    for snr in sorted(shared):
        cells = [f"{snr:g}"]
        cells += [f"{rows[snr]['ber']:.6g}" for _, rows in curves]
        flags = []
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                a, b = curves[i][1][snr], curves[j][1][snr]
                if a["ci_high"] < b["ci_low"] or b["ci_high"] < a["ci_low"]:
                    flags.append(f"{names[i]}|{names[j]}")
        cells.append(" ".join(flags))
        lines.append(cells)
    widths = [max(len(row[i]) for row in lines) for i in range(len(header))]
    for row in lines:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaylink",
        description="Dual-hop DF cooperative MIMO BER experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run every experiment in a TOML file")
    p_run.add_argument("config", help="experiment file (TOML)")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the seed of every experiment")
    p_run.add_argument("--trials", type=int, default=None,
                       help="override the trial count of every experiment")
    p_run.add_argument("--out", default=None,
                       help="output directory (default: [output].dir or '.')")
    p_run.set_defaults(func=_cmd_run)

    p_table = sub.add_parser("table", help="compare result CSVs at shared SNRs")
    p_table.add_argument("csv", nargs="+", help="result files to compare")
    p_table.set_defaults(func=_cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
