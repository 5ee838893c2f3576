"""Time the Apery small diagonals as the truncation order grows.

    python3 scripts/apery_timing.py --max-order 7 --kernel both
"""

import argparse
import time
from dataclasses import dataclass

from algdiag import oracles
from algdiag.pipelines import diag_from_expr

KERNELS = {
    "five": ("1/((1-x1)*((1-x2)*(1-x3)*(1-x4)*(1-x5) - x1*x2*x3))", "x1,x2,x3,x4,x5"),
    "four": ("1/((1-x1-x2)*(1-x3-x4) - x1*x2*x3*x4)", "x1,x2,x3,x4"),
}


@dataclass(frozen=True)
class TimingConfig:
    kernels: tuple = ("four", "five")
    min_order: int = 1
    max_order: int = 6
    budget_seconds: float = 120.0


def run(cfg: TimingConfig) -> None:
    for name in cfg.kernels:
        expr, vars = KERNELS[name]
        for N in range(cfg.min_order, cfg.max_order + 1):
            t0 = time.perf_counter()
            f = diag_from_expr("small", expr, vars, N)
            dt = time.perf_counter() - t0
            ok = [f.coeff((n,)) for n in range(N + 1)] == oracles.apery(N)
            print(f"{name:>4}  N={N:<2}  window={len(vars.split(',')) * N:<3}  {dt:8.2f}s  {'ok' if ok else 'MISMATCH'}")
            if dt > cfg.budget_seconds:
                break


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kernel", choices=("four", "five", "both"), default="both")
    ap.add_argument("--min-order", type=int, default=1)
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--budget", type=float, default=120.0, help="stop a kernel once one order exceeds this")
    args = ap.parse_args()
    kernels = ("four", "five") if args.kernel == "both" else (args.kernel,)
    run(TimingConfig(kernels, args.min_order, args.max_order, args.budget))


if __name__ == "__main__":
    main()
