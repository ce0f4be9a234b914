"""Classification and verification lab for principal 2-blocks of finite groups
with semidihedral Sylow 2-subgroups, over GF(2)."""

import json as _json

from ._core import (
    Group,
    TameblocksError,
    build,
    canonical_rep,
    cartan_bar,
    olsson_ell,
    sylow2,
    two_part,
)
from . import _core as __core

__all__ = [
    "Group",
    "TameblocksError",
    "build",
    "canonical_rep",
    "cartan_bar",
    "cartan_double",
    "classify",
    "distinguish",
    "inspect",
    "module_lab",
    "olsson_ell",
    "paper_suite",
    "sylow2",
    "two_part",
]


def classify(group, seed=1):
    """Full classification report for a Group or a recipe string."""
    if isinstance(group, str):
        group = build(group, seed=seed)
    return _json.loads(__core.classify_json(group, seed))


def inspect(group, seed=1):
    """Two-local report: n, fusion pattern, involution classes, centralizer."""
    if isinstance(group, str):
        group = build(group, seed=seed)
    return _json.loads(__core.inspect_json(group, seed))


def paper_suite(tier="core", seed=20260809):
    """Run the acceptance battery and return the ledger."""
    return _json.loads(__core.paper_suite_json(tier, seed))


def module_lab(group, subgroup, op, seed=1):
    """split, scott or vertex on the permutation module k[G/H]."""
    return _json.loads(__core.module_lab_json(group, subgroup, op, seed))


def distinguish(n):
    """Witness that the two centralizer-level Cartan matrices differ."""
    return _json.loads(__core.distinguish_json(n))


def cartan_double(entries):
    """Entrywise doubling of a Cartan matrix given as nested lists."""
    return [[2 * x for x in row] for row in entries]
