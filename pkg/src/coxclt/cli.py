"""Command-line front end.

    coxclt moments --family coxeter --m 3 --k 4,6 --N 10,100 --out out/cox --plot
    coxclt limit --k 8 [--p 1/2]
    coxclt qpoly --k 6
    coxclt random --config cfg.json [--seed 7] [--out out/rand]
    coxclt verify lemma3

Exit codes: 0 success, 2 invalid arguments or config, 3 work cap exceeded,
4 I/O failure, 5 a verification suite found a counterexample.  Failures
print a one-line JSON error record on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional, Sequence

from . import report
from .coxeter import ClassExplosionError, CoxeterError, parse_entry
from .moments import MomentError, convergence_table, limit_moment_semicircle, limit_polynomial_q
from .partitions import PartitionError, enumerate_pair_partitions, partition_of_word
from .random_model import RandomModelConfig, WorkCapError, convergence_experiment, parse_rational
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_IO = 4
EXIT_VERIFY = 5

COMMANDS = ("moments", "limit", "qpoly", "random", "verify")


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    return [int(x) for x in str(text).replace(" ", "").split(",") if x]


@dataclass
class RunSpec:
    command: str
    family: Optional[str] = None
    m: Optional[str] = None
    p: Optional[str] = None
    seed: Optional[int] = None
    k: Optional[list[int]] = None
    N: Optional[list[int]] = None
    support: Optional[str] = None
    out: Optional[str] = None
    plot: bool = False
    cap: Optional[int] = None
    config: Optional[str] = None
    suite: Optional[str] = None
    partition: Optional[str] = None

    def to_argv(self) -> list[str]:
        argv = [self.command]
        if self.suite is not None:
            argv.append(self.suite)
        for f in fields(self):
            if f.name in ("command", "suite", "plot"):
                continue
            value = getattr(self, f.name)
            if value is None:
                continue
            if isinstance(value, list):
                value = ",".join(map(str, value))
            argv += [f"--{f.name}", str(value)]
        if self.plot:
            argv.append("--plot")
        return argv

    def to_text(self) -> str:
        return shlex.join(self.to_argv())

    @classmethod
    def from_text(cls, text: str) -> "RunSpec":
        return parse_args(shlex.split(text))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxclt", description="Moments of generator sums in Coxeter and Artin groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", choices=["coxeter", "artin"])
        p.add_argument("--m", help='off-diagonal Coxeter entry, integer or "inf"')
        p.add_argument("--p", help='commutation probability, e.g. "1/2"')
        p.add_argument("--seed", type=int)
        p.add_argument("--k", type=_int_list, help="comma-separated moment orders")
        p.add_argument("--N", type=_int_list, help="comma-separated numbers of generators")
        p.add_argument("--support", help='"three", "inf" or "mixed:3=1,inf=1"')
        p.add_argument("--out", help="output path prefix; writes .csv and .json")
        p.add_argument("--plot", action="store_true", help="also write an .svg convergence plot")
        p.add_argument("--cap", type=int, help="work cap (solver calls or N^r)")
        p.add_argument("--config", help="JSON config file; flags win on conflict")
        p.add_argument("--partition", help='pair partition as a word, e.g. "1,2,1,2"')

    for name in ("moments", "limit", "qpoly", "random"):
        common(sub.add_parser(name))
    v = sub.add_parser("verify")
    v.add_argument("suite", choices=SUITES)
    common(v)
    return parser


def parse_args(argv: Sequence[str]) -> RunSpec:
    ns = build_parser().parse_args(list(argv))
    values = {f.name: getattr(ns, f.name, None) for f in fields(RunSpec)}
    values["plot"] = bool(values["plot"])
    return RunSpec(**values)


def _merge_config(spec: RunSpec) -> dict:
    cfg: dict = {}
    if spec.config:
        with open(spec.config) as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
    flag_map = {"p": spec.p, "seed": spec.seed, "support": spec.support, "N_schedule": spec.N, "k_list": spec.k}
    for key, value in flag_map.items():
        if value is not None:
            cfg[key] = value
    for key in ("family", "m", "cap", "partition"):
        if getattr(spec, key) is not None:
            cfg[key] = getattr(spec, key)
    return cfg


def _write(prefix: str, suffix: str, text: str) -> None:
    path = prefix + suffix
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _emit(spec: RunSpec, csv_text: str, json_text: str, svg_text: Optional[str], out) -> None:
    if spec.out:
        _write(spec.out, ".csv", csv_text)
        _write(spec.out, ".json", json_text)
        if svg_text is not None:
            _write(spec.out, ".svg", svg_text)
        out.write(f"wrote {spec.out}.csv {spec.out}.json" + (f" {spec.out}.svg" if svg_text else "") + "\n")
    else:
        out.write(csv_text)


def cmd_moments(spec: RunSpec, out) -> int:
    cfg = _merge_config(spec)
    family = cfg.get("family", "coxeter")
    m = parse_entry(cfg.get("m", 3))
    ks = cfg.get("k_list") or [4]
    Ns = cfg.get("N_schedule") or [10, 100, 1000]
    kwargs = {"cap": int(cfg["cap"])} if "cap" in cfg else {}
    rep = convergence_table(family, Ns, ks, m=m, **kwargs)
    svg = report.moment_svg(rep) if spec.plot else None
    _emit(spec, report.moment_csv(rep), report.moment_json(rep), svg, out)
    return EXIT_OK


def cmd_limit(spec: RunSpec, out) -> int:
    ks = spec.k or [4]
    values = []
    for k in ks:
        if spec.p is not None:
            values.append(limit_polynomial_q(k)(parse_rational(spec.p)))
        else:
            values.append(Fraction(limit_moment_semicircle(k)))
    if len(ks) == 1:
        out.write(report.frac(values[0]) + "\n")
    else:
        for k, v in zip(ks, values):
            out.write(f"{k},{report.frac(v)}\n")
    return EXIT_OK


def cmd_qpoly(spec: RunSpec, out) -> int:
    for k in spec.k or [4]:
        poly = limit_polynomial_q(k)
        out.write(str(poly) + "\n" if len(spec.k or [4]) == 1 else f"{k}: {poly}\n")
    return EXIT_OK


def cmd_random(spec: RunSpec, out) -> int:
    cfg = _merge_config(spec)
    model = RandomModelConfig.from_dict(cfg)
    kwargs = {"work_cap": int(cfg["cap"])} if "cap" in cfg else {}
    if cfg.get("partition"):
        word = _int_list(cfg["partition"])
        partitions = [partition_of_word(word).as_pair_partition()]
    else:
        partitions = [v for k in model.k_list for v in enumerate_pair_partitions(k)]
    series = [convergence_experiment(model, v, **kwargs) for v in partitions]

    summary = []
    points: dict[int, list[tuple[int, float]]] = {}
    for k in sorted({v.k for v in partitions}):
        limit = limit_polynomial_q(k)(model.p) if not cfg.get("partition") else None
        for i, N in enumerate(model.N_schedule):
            total = sum((s.rows[i].value for s in series if s.partition.k == k), Fraction(0))
            row = {"N": N, "k": k, "pair_sum": report.frac(total), "pair_sum_float": float(total)}
            if limit is not None:
                row["limit"] = report.frac(limit)
                row["abs_diff"] = report.frac(abs(total - limit))
                points.setdefault(k, []).append((N, float(abs(total - limit))))
            summary.append(row)
    metadata = {"config": model.to_dict(), "partitions": [str(v) for v in partitions]}
    svg = report.convergence_svg(points, f"random model p={model.p}") if spec.plot else None
    _emit(spec, report.series_csv(series), report.series_json(series, summary, metadata), svg, out)
    return EXIT_OK


def cmd_verify(spec: RunSpec, out) -> int:
    kwargs = {}
    if spec.seed is not None:
        kwargs["seed"] = spec.seed
    res = run_suite(spec.suite, **kwargs)
    out.write(json.dumps(res.as_dict(), sort_keys=True) + "\n")
    return EXIT_OK if res.passed else EXIT_VERIFY


HANDLERS = {"moments": cmd_moments, "limit": cmd_limit, "qpoly": cmd_qpoly, "random": cmd_random, "verify": cmd_verify}


def _error(kind: str, exc: Exception, code: int, err) -> int:
    err.write(json.dumps({"error": kind, "message": str(exc), "exit_code": code}) + "\n")
    return code


def run(spec: RunSpec, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return HANDLERS[spec.command](spec, out)
    except (WorkCapError, ClassExplosionError) as exc:
        return _error("cap_exceeded", exc, EXIT_CAP, err)
    except OSError as exc:
        return _error("io_failure", exc, EXIT_IO, err)
    except (UsageError, MomentError, CoxeterError, PartitionError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _error("invalid_config", exc, EXIT_INVALID, err)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        spec = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
