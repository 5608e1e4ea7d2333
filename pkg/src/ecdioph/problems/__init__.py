"""Problem family registry and the solving pipeline."""
from . import base, triangles, quadrics, cubics, powers, geometry  # noqa: F401  (registration)
from .base import (
    REGISTRY, DegenerateParameter, FamilyInstance, FamilyMeta, SingularParameter, SolutionRecord,
    get_family, instance,
)
from .driver import (
    SolveResult, build_curve, enumerate_points, integer_lemma_check, parametric, solve, to_solution, verify,
)
from .geometry import count_magic_squares
from .powers import multigrade_check


def families():
    return sorted(REGISTRY)


__all__ = [
    "REGISTRY", "DegenerateParameter", "FamilyInstance", "FamilyMeta", "SingularParameter",
    "SolutionRecord", "get_family", "instance", "SolveResult", "build_curve", "enumerate_points",
    "integer_lemma_check", "parametric", "solve", "to_solution", "verify", "count_magic_squares",
    "multigrade_check", "families",
]
