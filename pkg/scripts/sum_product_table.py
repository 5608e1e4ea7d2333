"""Smallest solutions of x + y + z = N = xyz for a range of N, as a LaTeX-style table."""
import argparse
import time
from dataclasses import dataclass

from ecdioph.exactnum import fmt_rational
from ecdioph.problems import instance, solve
from ecdioph.search import SearchBudget


@dataclass
class TableConfig:
    start: int = 1
    stop: int = 20
    bound: int = 134
    workers: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=TableConfig.start)
    ap.add_argument("--stop", type=int, default=TableConfig.stop)
    ap.add_argument("--bound", type=int, default=TableConfig.bound)
    ap.add_argument("--workers", type=int, default=TableConfig.workers)
    cfg = TableConfig(**vars(ap.parse_args()))
    budget = SearchBudget(max_uv=cfg.bound, max_param=cfg.bound, worker_count=cfg.workers)
    print("N & x & y & z")
    for N in range(cfg.start, cfg.stop + 1):
        t0 = time.time()
        try:
            res = solve(instance("eq_sum_product", N=N), budget)
        except ValueError as e:
            print(f"{N} & {e}")
            continue
        if res.records:
            row = " & ".join(fmt_rational(v) for v in res.records[0].solution)
            print(f"{N} & {row}    % {time.time() - t0:.1f}s")
        else:
            print(f"{N} & {res.status}")


if __name__ == "__main__":
    main()
