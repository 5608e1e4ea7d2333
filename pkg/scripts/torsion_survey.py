"""Torsion structure of every one-parameter family curve over a parameter range."""
import argparse
from collections import Counter
from dataclasses import dataclass

from ecdioph.problems import REGISTRY, instance
from ecdioph.problems.base import SingularParameter
from ecdioph.torsion import torsion_subgroup


@dataclass
class SurveyConfig:
    start: int = 2
    stop: int = 30


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=SurveyConfig.start)
    ap.add_argument("--stop", type=int, default=SurveyConfig.stop)
    cfg = SurveyConfig(**vars(ap.parse_args()))
    for name, fam in sorted(REGISTRY.items()):
        if not fam.has_curve or len(fam.params) != 1:
            continue
        seen, odd = Counter(), []
        for v in range(cfg.start, cfg.stop + 1):
            try:
                E = fam.curve(instance(name, **{fam.params[0]: v}).p)
            except SingularParameter:
                continue
            s = torsion_subgroup(E).structure
            seen[s] += 1
            if fam.meta.torsion and s != fam.meta.torsion:
                odd.append((v, s))
        print(f"{name:18s} expected {fam.meta.torsion or '?':10s} seen {dict(seen)}  exceptions {odd}")


if __name__ == "__main__":
    main()
