"""Command-line front end. All tabular output is CSV.

Payoffs are always given as ``x,y,z,w``: reward, sucker's payoff, temptation,
punishment. Exit status: 0 success, 1 validation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import mapping, montecarlo, quantum_game, validate
from .errors import DomainError
from .mapping import Restriction
from .quantum_game import GAMMA_SLACK, HALF_PI, PDPayoffs

DEFAULT_DISTANCES = (11, 12)
MODES = ("analytic", "mc", "zero_t")


@dataclass(frozen=True)
class SweepSpec:
    restriction: Restriction
    payoffs: PDPayoffs
    temperature: float = 1.0
    gamma_min: float = 0.0
    gamma_max: float = HALF_PI
    steps: int = 200
    distances: tuple = DEFAULT_DISTANCES
    mode: str = "analytic"
    n_spins: int = 256
    sweeps: int = 4000
    burn_in: int = 1000
    thin: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}")
        lo, hi = -GAMMA_SLACK, HALF_PI + GAMMA_SLACK
        if not (lo <= self.gamma_min < self.gamma_max <= hi):
            raise DomainError("need 0 <= gamma_min < gamma_max <= pi/2")
        if self.steps < 2:
            raise DomainError("steps must be >= 2")
        if self.mode != "zero_t" and not (self.temperature > 0 and math.isfinite(self.temperature)):
            raise DomainError("temperature must be positive")
        if any(q < 0 for q in self.distances):
            raise DomainError("distances must be non-negative")
        if self.mode == "mc" and any(q >= self.n_spins for q in self.distances):
            raise DomainError("every distance must be smaller than --n-spins")

    def grid(self) -> np.ndarray:
        return np.linspace(self.gamma_min, self.gamma_max, self.steps)

    def header(self) -> list[str]:
        cols = ["gamma", "alpha", "beta", "magnetization"]
        cols += [f"corr_q{q}" for q in self.distances]
        if self.mode == "mc":
            cols += ["magnetization_stderr"] + [f"corr_q{q}_stderr" for q in self.distances]
        if self.mode == "zero_t":
            cols.append("phase")
        return cols


def sweep_rows(spec: SweepSpec) -> Iterator[list]:
    r, p = spec.restriction, spec.payoffs
    for index, gamma in enumerate(spec.grid()):
        eq = mapping.game_params(r, gamma, p)
        row = [gamma, eq.alpha, eq.beta_field]
        if spec.mode == "analytic":
            row.append(mapping.game_magnetization(r, gamma, spec.temperature, p))
            row += [mapping.game_correlation(r, gamma, spec.temperature, q, p)
                    for q in spec.distances]
        elif spec.mode == "zero_t":
            if r is not Restriction.QVD:
                raise DomainError("zero_t mode is defined for the qvd restriction only")
            label, m0 = mapping.zero_T_phase(gamma, p)
            row.append(float(m0))
            row += [mapping.zero_T_correlation(gamma, q, p) for q in spec.distances]
            row.append(label.value)
        else:
            cfg = montecarlo.McConfig(n_spins=spec.n_spins, sweeps=spec.sweeps,
                                      burn_in=spec.burn_in, thin=spec.thin,
                                      seed=spec.seed ^ index)
            run = montecarlo.metropolis_run(eq.at(spec.temperature), cfg, spec.distances)
            row.append(run.magnetization.mean)
            row += [run.correlations[q].mean for q in spec.distances]
            row.append(run.magnetization.std_error)
            row += [run.correlations[q].std_error for q in spec.distances]
        yield row


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(out, header: Sequence[str], rows) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _open_output(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _payoffs(text: str) -> PDPayoffs:
    try:
        return PDPayoffs.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _add_sweep_args(p: argparse.ArgumentParser, with_mode: bool) -> None:
    p.add_argument("--restriction", choices=[r.value for r in Restriction], required=True)
    p.add_argument("--payoffs", type=_payoffs, required=True, help="x,y,z,w")
    p.add_argument("--temperature", type=float, default=1.0)
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, default=HALF_PI)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--distance", type=int, action="append", dest="distances",
                   help="correlation distance q (repeatable; default 11 and 12)")
    if with_mode:
        p.add_argument("--mode", choices=MODES, default="analytic")
    p.add_argument("--n-spins", type=int, default=256)
    p.add_argument("--sweeps", type=int, default=4000)
    p.add_argument("--burn-in", type=int, default=1000)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--output", default="-", help="CSV path, or - for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ising-qpd",
        description="Quantum prisoner's dilemma on the 1D Ising chain (CSV output).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_sweep_args(sub.add_parser("sweep", help="sweep entanglement gamma"), with_mode=True)
    _add_sweep_args(sub.add_parser("mc", help="Monte Carlo sweep (sweep --mode mc)"),
                    with_mode=False)

    p = sub.add_parser("critical", help="critical entanglements gamma0, gamma1, gamma2")
    p.add_argument("--payoffs", type=_payoffs, required=True, help="x,y,z,w")

    p = sub.add_parser("table", help="3x3 quantized payoff table")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--payoffs", type=_payoffs, required=True, help="x,y,z,w")
    p.add_argument("--output", default="-")

    p = sub.add_parser("validate", help="run the cross-oracle validation suites")
    p.add_argument("--scale", choices=("quick", "full"), default="quick")
    return parser


def cmd_sweep(args, mode: str) -> int:
    spec = SweepSpec(
        restriction=Restriction(args.restriction), payoffs=args.payoffs,
        temperature=args.temperature, gamma_min=args.gamma_min, gamma_max=args.gamma_max,
        steps=args.steps, distances=tuple(args.distances or DEFAULT_DISTANCES), mode=mode,
        n_spins=args.n_spins, sweeps=args.sweeps, burn_in=args.burn_in, thin=args.thin,
        seed=args.seed,
    )
    if mode == "zero_t" and spec.restriction is not Restriction.QVD:
        raise DomainError("zero_t mode is defined for the qvd restriction only")
    if mode == "mc":
        print(f"# rng={montecarlo.RNG_NAME} seed={spec.seed} per_point_seed=seed^index",
              file=sys.stderr)
    out, close = _open_output(args.output)
    try:
        write_csv(out, spec.header(), sweep_rows(spec))
    finally:
        if close:
            out.close()
    return 0


def _opt(value) -> str:
    return "absent" if value is None else _fmt(value)


def cmd_critical(args) -> int:
    p = args.payoffs
    cp = mapping.critical_points(p)
    alpha = mapping.game_params(Restriction.QVD, 0.0, p).alpha
    lines = [
        f"gamma0={'undefined' if cp.gamma0 is None else _fmt(cp.gamma0)}",
        f"gamma1={_opt(cp.gamma1)}",
        f"gamma2={_opt(cp.gamma2)}",
        f"three_phase={'true' if cp.three_phase else 'false'}",
        f"alpha_qvd={_fmt(alpha)}",
    ]
    print("\n".join(lines))
    return 0


def cmd_table(args) -> int:
    table = quantum_game.ewl_payoff_table(args.gamma, args.payoffs)
    labels = table.labels
    rows = [[lab, *table.payoff[i]] for i, lab in enumerate(labels)]
    out, close = _open_output(args.output)
    try:
        write_csv(out, ["row", *labels], rows)
    finally:
        if close:
            out.close()
    return 0


def cmd_validate(args) -> int:
    ok = True
    for result in validate.run_suites(args.scale):
        print(result.line(), flush=True)
        for detail in result.failures[:10]:
            print(f"  failure: {detail}")
        ok &= result.ok
    print("overall=" + ("pass" if ok else "FAIL"))
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return cmd_sweep(args, args.mode)
        if args.command == "mc":
            return cmd_sweep(args, "mc")
        if args.command == "critical":
            return cmd_critical(args)
        if args.command == "table":
            return cmd_table(args)
        return cmd_validate(args)
    except DomainError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
