"""Integer triangles with R/r = N: evaluate known rows exactly and search small N."""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from ecdioph.problems import instance, solve
from ecdioph.problems.base import heron16
from ecdioph.search import SearchBudget

KNOWN = [
    (26, 11, 39, 49), (74, 259, 475, 729), (218, 115, 5239, 5341), (250, 97, 10051, 10125),
    (394, 12017, 2356695, 2365193), (458, 395, 100989, 101251), (586, 3809, 18411, 22201),
    (602, 833, 14703, 15523), (674, 535, 170471, 170859), (866, 3025, 5629, 8649),
]


@dataclass
class RatioConfig:
    stop: int = 100
    bound: int = 30


def ratio(a, b, c):
    return Fraction(2 * a * b * c * (a + b + c), heron16(a, b, c))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stop", type=int, default=RatioConfig.stop)
    ap.add_argument("--bound", type=int, default=RatioConfig.bound)
    cfg = RatioConfig(**vars(ap.parse_args()))
    for N, a, b, c in KNOWN:
        print(f"R/r({a}, {b}, {c}) = {ratio(a, b, c)}  expected {N}")
    budget = SearchBudget(max_uv=cfg.bound, max_param=cfg.bound)
    for N in range(3, cfg.stop + 1):
        res = solve(instance("circum_in", N=N), budget)
        if res.records:
            print(N, [int(v) for v in res.records[0].solution])


if __name__ == "__main__":
    main()
