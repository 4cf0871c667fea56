"""Polyhedral GPT data model: theories, states, effects, measurements.

A theory is a cone in V-form: generator rays normalized to the unit
hyperplane plus the order-unit covector. States and effects are bare
coordinate tuples; validity is decided by the checking functions here
(cone membership by LP, effect bounds by direct evaluation).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import simplex
from .linalg import dot, rat, rat_str, rank, vec_sub
from .simplex import Arith

EXACT = "exact"
FLOAT = "float"
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Theory:
    name: str
    dim: int
    unit: tuple
    generators: tuple
    numeric_mode: str = EXACT

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if len(self.unit) != self.dim:
            raise ValueError("unit length != dim")
        if self.numeric_mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown numeric_mode {self.numeric_mode!r}")
        if not self.generators:
            raise ValueError("theory needs at least one generator")
        arith = self.arith()
        for g in self.generators:
            if len(g) != self.dim:
                raise ValueError("generator length != dim")
            if not arith.is_zero(dot(self.unit, g) - 1):
                raise ValueError(f"generator not normalized to u = 1: {g}")

    def arith(self) -> Arith:
        return Arith(None if self.numeric_mode == EXACT else DEFAULT_TOL)

    @property
    def num_generators(self) -> int:
        return len(self.generators)


def make_theory(name: str, unit: Sequence, generators: Sequence[Sequence],
                numeric_mode: str = EXACT) -> Theory:
    if numeric_mode == EXACT:
        unit = tuple(rat(v) for v in unit)
        generators = tuple(tuple(rat(v) for v in g) for g in generators)
    else:
        unit = tuple(float(v) for v in unit)
        generators = tuple(tuple(float(v) for v in g) for g in generators)
    return Theory(name, len(unit), unit, generators, numeric_mode)


@dataclass(frozen=True)
class Measurement:
    """Finite effect family summing to the order unit."""

    effects: tuple

    def __post_init__(self):
        if not self.effects:
            raise ValueError("measurement needs at least one effect")

    def __len__(self):
        return len(self.effects)


# --- validity checks -------------------------------------------------------

@dataclass
class ValidationReport:
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def validate_theory(t: Theory) -> ValidationReport:
    arith = t.arith()
    tol = 0.0 if arith.exact else arith.tol
    unit_ok = all(arith.is_zero(dot(t.unit, g) - 1) for g in t.generators)
    spanning = rank(t.generators, tol=tol) == t.dim
    g0 = t.generators[0]
    diffs = [vec_sub(g, g0) for g in t.generators[1:]]
    affine_ok = rank(diffs, tol=tol) == t.dim - 1
    return ValidationReport({
        "unit_normalization": unit_ok,
        "spanning": spanning,
        "affine_rank": affine_ok,
    })


def _combination_weights(vectors, target, arith: Arith, affine: bool):
    """Nonnegative weights a with sum(a_j vectors[j]) = target; with
    affine=True additionally sum(a) = 1. None when no such weights exist."""
    d = len(target)
    zero = arith.zero()
    one = zero + 1
    rows = [[zero + v[j] for v in vectors] for j in range(d)]
    rhs = [zero + x for x in target]
    if affine:
        rows.append([one] * len(vectors))
        rhs.append(one)
    costs = [zero] * len(vectors)
    res = simplex.solve_standard_min(costs, rows, rhs, arith=arith)
    if res.status == simplex.STALLED:
        raise ArithmeticError("membership LP stalled in float mode")
    return res.x if res.status == simplex.OPTIMAL else None


def convex_weights(t: Theory, x: Sequence):
    if len(x) != t.dim:
        raise ValueError("dimension mismatch")
    return _combination_weights(t.generators, x, t.arith(), affine=True)


def conic_weights(t: Theory, x: Sequence):
    """Weights showing x lies in the cone spanned by the generators."""
    if len(x) != t.dim:
        raise ValueError("dimension mismatch")
    return _combination_weights(t.generators, x, t.arith(), affine=False)


def is_state(t: Theory, x: Sequence) -> bool:
    if len(x) != t.dim:
        raise ValueError("dimension mismatch")
    if not t.arith().is_zero(dot(t.unit, x) - 1):
        return False
    return convex_weights(t, x) is not None


def is_effect(t: Theory, e: Sequence) -> bool:
    if len(e) != t.dim:
        raise ValueError("dimension mismatch")
    arith = t.arith()
    for g in t.generators:
        v = dot(e, g)
        if arith.is_neg(v) or arith.is_pos(v - 1):
            return False
    return True


def is_measurement(t: Theory, m: Measurement) -> bool:
    if not all(is_effect(t, e) for e in m.effects):
        return False
    arith = t.arith()
    total = m.effects[0]
    for e in m.effects[1:]:
        total = tuple(a + b for a, b in zip(total, e))
    return all(arith.is_zero(a - b) for a, b in zip(total, t.unit))


def reduce_to_pure_states(t: Theory) -> Theory:
    """Drop every generator that is a convex combination of the others;
    the survivors are exactly the extreme points of the state space."""
    arith = t.arith()
    unique = []
    for g in t.generators:
        if not any(all(arith.is_zero(a - b) for a, b in zip(g, h)) for h in unique):
            unique.append(g)
    keep = []
    for i, g in enumerate(unique):
        others = unique[:i] + unique[i + 1:]
        if not others or _combination_weights(others, g, arith, affine=True) is None:
            keep.append(g)
    return Theory(t.name, t.dim, t.unit, tuple(keep), t.numeric_mode)


def linearly_independent(states: Sequence[Sequence]) -> bool:
    if not states:
        return True
    exact = all(isinstance(v, (int, Fraction)) for s in states for v in s)
    tol = 0.0 if exact else DEFAULT_TOL
    return rank(states, tol=tol) == len(states)


# --- JSON schema -----------------------------------------------------------

def _coord_to_json(v):
    if isinstance(v, Fraction):
        return rat_str(v)
    return v


def _coord_from_json(v, mode):
    if mode == FLOAT:
        return float(v)
    return rat(v)


def theory_to_json(t: Theory) -> dict:
    doc = {
        "name": t.name,
        "dim": t.dim,
        "unit": [_coord_to_json(v) for v in t.unit],
        "generators": [[_coord_to_json(v) for v in g] for g in t.generators],
    }
    if t.numeric_mode != EXACT:
        doc["numeric_mode"] = t.numeric_mode
    return doc


def theory_from_json(doc: dict) -> Theory:
    try:
        mode = doc.get("numeric_mode", EXACT)
        t = make_theory(doc["name"],
                        [_coord_from_json(v, mode) for v in doc["unit"]],
                        [[_coord_from_json(v, mode) for v in g] for g in doc["generators"]],
                        numeric_mode=mode)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed theory JSON: {exc}") from exc
    if t.dim != doc["dim"]:
        raise ValueError(f"declared dim {doc['dim']} != coordinate length {t.dim}")
    return t


def save_theory(t: Theory, path) -> None:
    with open(path, "w") as fh:
        json.dump(theory_to_json(t), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_theory(path) -> Theory:
    with open(path) as fh:
        return theory_from_json(json.load(fh))
