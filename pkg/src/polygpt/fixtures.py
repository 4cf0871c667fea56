"""Bundled named instances with their documented expected results.

Each fixture carries the theory, any named states/effects (as generator
indices or explicit coordinates), and the expected answers that the test
suite and CLI re-derive on every run.
"""

from __future__ import annotations

from fractions import Fraction

from .families import classical_simplex, codeword_state_index, hypercube_theory, \
    ngon_theory, prism_product, simplex_power
from .linalg import rat_str
from .theory import Theory, theory_to_json


def _cube_index(theory: Theory, coords) -> int:
    target = tuple(Fraction(c) for c in coords)
    return theory.generators.index(target)


def appendix_c_triple() -> dict:
    cube = hypercube_theory(3)
    states = {
        "omega1": (1, 1, 1, 1),
        "omega2": (1, -1, 1, -1),
        "omega3": (1, -1, -1, 1),
        "rho0": (1, -1, 1, 1),
        "rho1": (1, 1, -1, -1),
        "sigma1": (1, -1, -1, -1),
        "sigma2": (1, 1, -1, 1),
        "sigma3": (1, 1, 1, -1),
    }
    effects = {
        "e1": ("1/2", "1/2", 0, 0),
        "e2": ("1/2", 0, 0, "-1/2"),
        "e3": ("1/2", 0, "-1/2", 0),
    }
    return {
        "name": "appendix-c-triple",
        "theory": theory_to_json(cube),
        "states": {k: [rat_str(Fraction(v)) for v in vec] for k, vec in states.items()},
        "state_indices": {k: _cube_index(cube, v) for k, v in states.items()},
        "effects": effects,
        "triple": ["omega1", "omega2", "omega3"],
        "expected": {
            "perfect": False,
            "p_success_uniform": "2/3",
            "delta_conditions_hold": True,
            "effects_form_measurement": False,
            "effect_sum": ["3/2", "1/2", "-1/2", "-1/2"],
        },
    }


def example_10_triple() -> dict:
    theory = simplex_power(2, 2)
    codewords = [(1, 1), (1, 2), (2, 1)]
    indices = [codeword_state_index(2, w) for w in codewords]
    return {
        "name": "example-10-triple",
        "theory": theory_to_json(theory),
        "codewords": codewords,
        "state_indices": {f"omega{i + 1}": idx for i, idx in enumerate(indices)},
        "triple": ["omega1", "omega2", "omega3"],
        "expected": {
            "perfect": False,
            "ordering_certificate_in_cone": True,  # omega2 + omega3 - omega1 in C
        },
    }


def square_fixture() -> dict:
    return {
        "name": "square",
        "theory": theory_to_json(hypercube_theory(2)),
        "expected": {
            "pairwise_clique": 4,
            "edges_n2": 6,
            "edges_n3": 0,
        },
    }


def pentagon_fixture() -> dict:
    return {
        "name": "pentagon",
        "theory": theory_to_json(ngon_theory(5)),
        "expected": {
            "pairwise_clique": 2,
            "adjacent_distinguishable": False,
            "distance2_distinguishable": True,
        },
    }


def cube_fixture() -> dict:
    return {
        "name": "cube",
        "theory": theory_to_json(hypercube_theory(3)),
        "expected": {
            "pairwise_clique": 8,
            "edges_n2": 28,
        },
    }


def simplex3_prism_fixture() -> dict:
    t = prism_product(classical_simplex(3), classical_simplex(3))
    return {
        "name": "s3-prism-s3",
        "theory": theory_to_json(t),
        "expected": {
            "dim": 5,
            "num_generators": 9,
            "pairwise_clique": 9,
        },
    }


def fixtures() -> dict:
    table = [appendix_c_triple(), example_10_triple(), square_fixture(),
             pentagon_fixture(), cube_fixture(), simplex3_prism_fixture()]
    return {f["name"]: f for f in table}
