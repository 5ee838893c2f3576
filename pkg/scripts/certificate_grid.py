"""Monomial diagonal certificates D((xt)^i t^j F) = x^i h^j over an (i, j) grid.

Prints one row per annihilator with a pass mark per cell.

    python3 scripts/certificate_grid.py --size 4 --order 10
"""

import argparse
from dataclasses import dataclass
from itertools import product

from algdiag.denef_lipshitz import monomial_diagonal_certificate
from algdiag.hensel import AlgebraicSeriesSpec
from algdiag.parser import parse_poly


@dataclass(frozen=True)
class GridConfig:
    annihilators: tuple = ("t^2+2*t-x", "t^2-t+x", "t-x", "t^2+2*t+x", "t^3+t-x^2")
    vars: str = "x,t"
    size: int = 4
    order: int = 10


def run(cfg: GridConfig) -> bool:
    all_ok = True
    print(f"{'annihilator':<14} " + " ".join(f"{i}{j}" for i, j in product(range(cfg.size), repeat=2)))
    for text in cfg.annihilators:
        spec = AlgebraicSeriesSpec.of(parse_poly(text, cfg.vars))
        marks = []
        for i, j in product(range(cfg.size), repeat=2):
            ok = monomial_diagonal_certificate(spec, i, j, cfg.order).passed
            all_ok &= ok
            marks.append(" +" if ok else " X")
        print(f"{text:<14}" + "".join(marks))
    return all_ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=4)
    ap.add_argument("--order", type=int, default=10)
    ap.add_argument("annihilators", nargs="*")
    args = ap.parse_args()
    cfg = GridConfig(size=args.size, order=args.order)
    if args.annihilators:
        cfg = GridConfig(tuple(args.annihilators), size=args.size, order=args.order)
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
