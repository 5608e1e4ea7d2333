"""Which N are sums of two rational cubes, found by point search within a bound."""
import argparse
import time
from dataclasses import dataclass

from ecdioph.exactnum import fmt_rational
from ecdioph.problems import instance, solve
from ecdioph.search import SearchBudget


@dataclass
class ScanConfig:
    stop: int = 50
    bound: int = 100


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stop", type=int, default=ScanConfig.stop)
    ap.add_argument("--bound", type=int, default=ScanConfig.bound)
    cfg = ScanConfig(**vars(ap.parse_args()))
    budget = SearchBudget(max_uv=cfg.bound, max_param=cfg.bound)
    t0 = time.time()
    hits = 0
    for N in range(1, cfg.stop + 1):
        res = solve(instance("two_cubes", N=N), budget)
        if res.records:
            hits += 1
            a, b = res.records[0].solution
            assert a**3 + b**3 == N
            print(f"{N:3d}  ({fmt_rational(a)})^3 + ({fmt_rational(b)})^3  [{res.records[0].provenance}]")
        else:
            print(f"{N:3d}  {res.status}")
    print(f"# {hits} of {cfg.stop} solved in {time.time() - t0:.0f}s")


if __name__ == "__main__":
    main()
