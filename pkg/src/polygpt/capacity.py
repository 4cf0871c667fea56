"""Memory-capacity formulas, verification runs, and the probabilistic
construction.

Covers the pairwise compression factor, brute verification of the
hypercube construction (closed-form witnesses cross-checked against the
LP), parameter evaluation and failure bound for the random simplex-power
construction, Monte Carlo sampling of random codes, and the parallel
supporting-hyperplanes check for point sets.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .discrimination import is_perfectly_distinguishable, pairwise_distinguishable, \
    verify_witness
from .exactlog import floor_of_log2_squared, floor_of_ratio_to_log2, log2_value, \
    power_of_two_exponent
from .families import codeword_state_index, hypercube_effect, hypercube_theory, \
    simplex_power
from .linalg import rat
from .theory import Measurement, Theory, reduce_to_pure_states, theory_from_json, theory_to_json


# --- compression factors ----------------------------------------------------

def d_pairwise(m: int) -> int:
    """Minimal GPT dimension hosting 2^m pairwise distinguishable states."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return m + 1


def kappa_pairwise(m: int) -> float:
    """Pairwise compression factor m / log2(m + 1), certified to ~15 digits."""
    d = d_pairwise(m)
    exp = power_of_two_exponent(Fraction(d))
    if exp is not None:
        return m / exp
    return m / log2_value(Fraction(d))


def tournament_count(n: int, n_arity: int = 2) -> int:
    """Measurements needed to single out one of n states that are mutually
    N-wise distinguishable: ceil((n-1)/(N-1))."""
    if n < 1 or n_arity < 2:
        raise ValueError("need n >= 1 and N >= 2")
    return -((-(n - 1)) // (n_arity - 1))


# --- hypercube verification --------------------------------------------------

@dataclass
class CapacityReport:
    n_arity: int
    m: int
    dimension: int
    kappa: float
    achieved_set_size: int
    verified: bool


def _closed_form_pair_witness(theory: Theory, i: int, j: int) -> bool:
    """Check the face-effect witness on a vertex pair differing at some
    coordinate; the LP is the independent second route."""
    a, b = theory.generators[i], theory.generators[j]
    m = theory.dim - 1
    k = next(pos for pos in range(1, m + 1) if a[pos] != b[pos])
    e = hypercube_effect(m, k)
    complement = tuple(u - v for u, v in zip(theory.unit, e))
    if a[k] == 1:
        meas = Measurement((e, complement))
    else:
        meas = Measurement((complement, e))
    return verify_witness(theory, [a, b], meas)


def _hypercube_pair_worker(args):
    doc, pairs = args
    theory = theory_from_json(doc)
    return [(_closed_form_pair_witness(theory, i, j),
             pairwise_distinguishable(theory, i, j)) for i, j in pairs]


def verify_hypercube_memory(m: int, workers: int = 1) -> CapacityReport:
    """Run both the closed-form witnesses and the exact LP over all vertex
    pairs of the m-cube theory; verified only when every pair passes both."""
    if not 1 <= m <= 8:
        raise ValueError("m must lie in 1..8 for the pairwise sweep")
    theory = hypercube_theory(m)
    pairs = list(itertools.combinations(range(theory.num_generators), 2))
    if workers > 1 and len(pairs) >= 8:
        doc = theory_to_json(theory)
        chunk = max(1, len(pairs) // (workers * 4))
        jobs = [(doc, pairs[i:i + chunk]) for i in range(0, len(pairs), chunk)]
        results = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_hypercube_pair_worker, jobs):
                results.extend(part)
    else:
        results = [(_closed_form_pair_witness(theory, i, j),
                    pairwise_distinguishable(theory, i, j)) for i, j in pairs]
    verified = all(w and l for w, l in results)
    return CapacityReport(2, m, theory.dim, kappa_pairwise(m),
                          theory.num_generators, verified)


# --- probabilistic construction ----------------------------------------------

def probabilistic_params(n_arity: int, m: int) -> Tuple[int, int, int]:
    """(q, l, dim) for the random simplex-power construction; floors are
    evaluated with certified enclosures, never guessed."""
    if n_arity < 2:
        raise ValueError("N must be >= 2")
    if m < 2:
        raise ValueError("m must be >= 2 so that q >= 1")
    if 2 ** m < n_arity:
        raise ValueError("need at least N states: 2^m >= N")
    q = floor_of_log2_squared(Fraction(m))
    ratio = Fraction(2 * q, n_arity * (n_arity - 1))
    base = max(ratio, Fraction(2))
    l = floor_of_ratio_to_log2(Fraction(2 * n_arity * m), base)
    return q, l, l * (q - 1) + 1


def failure_probability_bound(q: int, l: int, m_codewords: int, n_arity: int) -> Fraction:
    """Union bound on a random M-codeword code having some N-subset with
    no discriminating component: C(M,N) (1 - prod_k (1 - k/q))^l."""
    if n_arity > q:
        raise ValueError("bound is vacuous for N > q (the product is not positive)")
    if q < 1 or l < 0 or m_codewords < 0:
        raise ValueError("parameters out of range")
    product = Fraction(1)
    for k in range(1, n_arity):
        product *= 1 - Fraction(k, q)
    return math.comb(m_codewords, n_arity) * (1 - product) ** l


class SplitMix64:
    """Tiny splittable PRNG: platform-stable, seeded, forkable per trial."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def derive(self, index: int) -> "SplitMix64":
        child = SplitMix64(self.state ^ (0xA5A5A5A5A5A5A5A5 + index))
        child.next_u64()
        return child


@dataclass(frozen=True)
class RandomCode:
    q: int
    l: int
    codewords: tuple  # distinct tuples over symbols 1..q
    seed: int

    def __post_init__(self):
        if len(set(self.codewords)) != len(self.codewords):
            raise ValueError("codewords must be distinct")
        for w in self.codewords:
            if len(w) != self.l or any(not 1 <= s <= self.q for s in w):
                raise ValueError(f"bad codeword {w}")


def sample_random_code(q: int, l: int, m_codewords: int, seed: int) -> RandomCode:
    """Draw M distinct codewords with i.i.d. uniform symbols; collisions
    are redrawn (distinctness is required for distinguishability)."""
    if m_codewords > q ** l:
        raise ValueError(f"cannot draw {m_codewords} distinct codewords from {q}^{l}")
    rng = SplitMix64(seed)
    seen = set()
    words = []
    while len(words) < m_codewords:
        w = tuple(rng.randrange(q) + 1 for _ in range(l))
        if w not in seen:
            seen.add(w)
            words.append(w)
    return RandomCode(q, l, tuple(words), seed)


def component_discriminates(code: RandomCode, subset: Sequence[int], component: int) -> bool:
    """Whether the chosen component shows pairwise distinct symbols on the
    selected codewords (giving a classical readout on that factor)."""
    symbols = [code.codewords[i][component] for i in subset]
    return len(set(symbols)) == len(symbols)


def verify_nwise_by_components(code: RandomCode, n_arity: int) -> bool:
    """Sufficient condition for N-wise mutual distinguishability: every
    N-subset of codewords has some all-distinct component."""
    indices = range(len(code.codewords))
    for subset in itertools.combinations(indices, n_arity):
        if not any(component_discriminates(code, subset, c) for c in range(code.l)):
            return False
    return True


@dataclass
class RandomSearchReport:
    n_arity: int
    m: Optional[float]
    q: int
    l: int
    dimension: int
    kappa_lower_bound: Optional[float]
    bound: Fraction
    failures: int
    trials: int
    empirical_failure: float
    seed: int


def _mc_chunk_worker(args):
    q, l, m_codewords, n_arity, seeds = args
    failures = 0
    for s in seeds:
        code = sample_random_code(q, l, m_codewords, s)
        if not verify_nwise_by_components(code, n_arity):
            failures += 1
    return failures


def randomized_search(n_arity: int, m: Optional[int] = None, trials: int = 100,
                      seed: int = 0, q: Optional[int] = None, l: Optional[int] = None,
                      m_codewords: Optional[int] = None, workers: int = 1,
                      max_dimension: int = 10 ** 6) -> RandomSearchReport:
    """Monte Carlo over random codes: empirical failure fraction of the
    component check next to the exact union bound."""
    if q is None or l is None:
        if m is None:
            raise ValueError("give m, or explicit q and l")
        q, l, _ = probabilistic_params(n_arity, m)
    if m_codewords is None:
        if m is None:
            raise ValueError("give m, or an explicit codeword count")
        m_codewords = 2 ** m
    dim = l * (q - 1) + 1
    if dim > max_dimension or m_codewords > q ** l:
        raise ValueError("parameters are beyond desk scale")
    if n_arity > q:
        raise ValueError("q < N: no component can ever discriminate")
    bound = failure_probability_bound(q, l, m_codewords, n_arity)

    root = SplitMix64(seed)
    trial_seeds = [root.derive(i).next_u64() for i in range(trials)]
    if workers > 1 and trials >= 8:
        chunk = max(1, trials // (workers * 4))
        jobs = [(q, l, m_codewords, n_arity, trial_seeds[i:i + chunk])
                for i in range(0, trials, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(_mc_chunk_worker, jobs))
    else:
        failures = _mc_chunk_worker((q, l, m_codewords, n_arity, trial_seeds))

    eff_m = math.log2(m_codewords) if m is None else float(m)
    kappa_lb = eff_m / log2_value(Fraction(dim)) if dim > 1 else None
    return RandomSearchReport(n_arity, eff_m, q, l, dim, kappa_lb, bound,
                              failures, trials,
                              failures / trials if trials else 0.0, seed)


def code_states_theory(code: RandomCode):
    """Materialize the simplex-power theory and the generator indices of the
    codewords (desk-scale instances only)."""
    theory = simplex_power(code.q, code.l)
    indices = [codeword_state_index(code.q, w) for w in code.codewords]
    return theory, indices


def nwise_distinguishable_by_lp(code: RandomCode, n_arity: int) -> bool:
    """Ground-truth N-wise mutual distinguishability of the codeword states
    by the exact LP over every N-subset."""
    theory, indices = code_states_theory(code)
    for subset in itertools.combinations(indices, n_arity):
        states = [theory.generators[i] for i in subset]
        if not is_perfectly_distinguishable(theory, states, validate=False).distinguishable:
            return False
    return True


# --- parallel supporting hyperplanes ------------------------------------------

def danzer_grunbaum_check(points: Sequence[Sequence]) -> bool:
    """Whether every pair of the (rational) points admits two parallel
    hyperplanes supporting the set, one through each point. Non-extreme
    points fail immediately; extreme pairs are decided by the pairwise LP
    on the lifted theory."""
    pts = [tuple(rat(v) for v in p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    if not pts:
        raise ValueError("need at least one point")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points must share a dimension")
    lifted = tuple((Fraction(1),) + p for p in pts)
    unit = tuple(Fraction(1 if i == 0 else 0) for i in range(n + 1))
    theory = Theory("lifted-points", n + 1, unit, lifted)
    reduced = reduce_to_pure_states(theory)
    if reduced.num_generators < len(pts):
        return False  # some point is a convex combination of the others
    for i, j in itertools.combinations(range(len(pts)), 2):
        if not pairwise_distinguishable(theory, i, j):
            return False
    return True
