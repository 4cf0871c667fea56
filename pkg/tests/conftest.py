"""Shared helpers: seeded instance generators and independent oracles."""

import itertools
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from polygpt import lp
from polygpt.linalg import invert, solve_square
from polygpt.theory import Theory, reduce_to_pure_states


def random_rational(rng, span=12, den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_planar_points(rng, n):
    pts = set()
    while len(pts) < n:
        pts.add((random_rational(rng), random_rational(rng)))
    return sorted(pts)


def random_planar_theory(seed, min_pts=4, max_pts=7):
    """Random rational vertex set in the plane, lifted to a dim-3 theory
    and reduced to its extreme points."""
    rng = random.Random(seed)
    pts = random_planar_points(rng, rng.randint(min_pts, max_pts))
    gens = tuple((Fraction(1), x, y) for x, y in pts)
    t = Theory(f"planar-{seed}", 3, (Fraction(1), Fraction(0), Fraction(0)), gens)
    return reduce_to_pure_states(t)


def random_lifted_theory(seed, dim_range=(3, 4), gens_range=(3, 6)):
    """Random polytope theory in dimension 3 or 4 for property sweeps."""
    rng = random.Random(seed)
    d = rng.randint(*dim_range)
    n = rng.randint(*gens_range)
    pts = set()
    while len(pts) < n:
        pts.add(tuple(random_rational(rng, span=6, den=3) for _ in range(d - 1)))
    gens = tuple((Fraction(1),) + p for p in sorted(pts))
    unit = tuple(Fraction(1 if i == 0 else 0) for i in range(d))
    return reduce_to_pure_states(Theory(f"random-{seed}", d, unit, gens))


def random_invertible_matrix(rng, d):
    while True:
        m = [[random_rational(rng, span=3, den=2) for _ in range(d)] for _ in range(d)]
        inv = invert(m)
        if inv is not None:
            return m, inv


# --- LP oracles --------------------------------------------------------------

def boxed_random_lp(seed, num_vars=None, extra_rows=None, box=6):
    """Random bounded LP: a full variable box plus a few random rows.
    Bounded and pointed by construction, so vertex enumeration is a
    complete oracle."""
    rng = random.Random(seed)
    n = num_vars or rng.randint(1, 3)
    k = extra_rows if extra_rows is not None else rng.randint(0, 4)
    rows = []
    for i in range(n):
        e = [Fraction(1 if j == i else 0) for j in range(n)]
        rows.append((e, lp.LE, Fraction(box)))
        rows.append((e, lp.GE, Fraction(-box)))
    for _ in range(k):
        row = [random_rational(rng, span=4, den=2) for _ in range(n)]
        rel = rng.choice([lp.LE, lp.GE])
        rows.append((row, rel, random_rational(rng, span=8, den=2)))
    objective = [random_rational(rng, span=5, den=2) for _ in range(n)]
    return lp.problem(objective, rows, n)


def enumerate_feasible_vertices(prob):
    """All basic feasible points: every n-subset of constraints solved as
    equalities, kept when the full system is satisfied."""
    n = prob.num_vars
    vertices = []
    for subset in itertools.combinations(range(len(prob.constraints)), n):
        a = [prob.constraints[i][0] for i in subset]
        b = [prob.constraints[i][2] for i in subset]
        x = solve_square(a, b)
        if x is not None and lp.check_solution(prob, x):
            vertices.append(x)
    return vertices


def brute_force_optimum(prob):
    """Best vertex value, or None when no feasible vertex exists."""
    best = None
    for x in enumerate_feasible_vertices(prob):
        val = sum(c * v for c, v in zip(prob.objective, x))
        if best is None or val > best:
            best = val
    return best


# --- polygon oracle ----------------------------------------------------------

def ngon_pair_separable_by_direction(n, i, j, steps=2000, margin=1e-6):
    """Supporting-line search on the regular n-gon: a direction whose
    maximum over the vertices is attained only at vertex i and whose
    minimum only at vertex j certifies the pair."""
    verts = [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
             for k in range(n)]
    for s in range(steps):
        theta = 2 * math.pi * s / steps
        d = (math.cos(theta), math.sin(theta))
        values = [d[0] * x + d[1] * y for x, y in verts]
        hi, lo = max(values), min(values)
        top = [k for k, v in enumerate(values) if v > hi - margin]
        bottom = [k for k, v in enumerate(values) if v < lo + margin]
        if top == [i] and bottom == [j]:
            return True
    return False


def interior_angle_sum_exceeds_pi(n) -> bool:
    """Adjacent-vertex criterion for the regular n-gon: distinguishability
    of neighbours needs alpha_i + alpha_{i+1} <= pi."""
    interior = math.pi * (n - 2) / n
    return 2 * interior > math.pi
