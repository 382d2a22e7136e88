"""
Convex hull membership over binary generators.

The exact backend decides ``v ∈ conv(S)`` with a phase-1 simplex over
``fractions.Fraction`` using Bland's rule, so there are no tolerances and
the pivoting terminates. ``lp`` (scipy HiGHS) and ``nnls`` are float
backends kept for cross-checking.
"""

import itertools
import logging
import warnings
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog, nnls

from .errors import DimensionMismatch
from .vectors import BinaryVector

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 12
BACKENDS = ("exact", "lp", "nnls")

Number = Union[int, Fraction]
Probe = Union[BinaryVector, Sequence[Number]]


def _row_forced_zero(row: Sequence[Fraction], rhs: Fraction) -> bool:
    return rhs == 0 and all(x >= 0 for x in row)


def feasible_point(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number],
                   presolve: bool = True) -> Optional[List[Fraction]]:
    """
    Find x ≥ 0 with ``matrix @ x == rhs`` in exact arithmetic.

    Parameters:
    -----------
    matrix : sequence of rows
    rhs : sequence
    presolve : bool, default=True
        Drop variables fixed at zero by a zero row with non-negative
        coefficients before pivoting.

    Returns:
    --------
    list of Fraction or None
        A basic feasible solution, or None if the system is infeasible.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    b = [Fraction(x) for x in rhs]
    if len(rows) != len(b):
        raise DimensionMismatch(f"{len(rows)} rows but {len(b)} right-hand sides")
    n = len(rows[0]) if rows else 0
    if any(len(row) != n for row in rows):
        raise DimensionMismatch("Rows of different lengths")

    # presolve: a row with zero target and non-negative coefficients fixes
    # every variable it mentions at zero
    fixed = set()
    for row, target in zip(rows, b):
        if presolve and _row_forced_zero(row, target):
            fixed.update(j for j, x in enumerate(row) if x > 0)
    free = [j for j in range(n) if j not in fixed]
    reduced = []
    for row, target in zip(rows, b):
        kept = [row[j] for j in free]
        if all(x == 0 for x in kept):
            if target != 0:
                return None
            continue
        reduced.append((kept, target))

    x = [Fraction(0)] * n
    if not reduced:
        return x
    solution = _phase_one([r for r, _ in reduced], [t for _, t in reduced])
    if solution is None:
        return None
    for j, value in zip(free, solution):
        x[j] = value
    return x


def _phase_one(rows: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    m, n = len(rows), len(rows[0])
    tableau = []
    for k in range(m):
        sign = -1 if b[k] < 0 else 1
        artificial = [Fraction(1) if j == k else Fraction(0) for j in range(m)]
        tableau.append([sign * x for x in rows[k]] + artificial + [sign * b[k]])
    basis = [n + k for k in range(m)]
    # reduced costs of the auxiliary objective (sum of artificials); last
    # entry is minus its current value
    cost = [-sum(tableau[k][j] for k in range(m)) for j in range(n)]
    cost += [Fraction(0)] * m + [-sum(tableau[k][-1] for k in range(m))]

    pivots = 0
    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        leaving, best = None, None
        for k in range(m):
            a = tableau[k][entering]
            if a > 0:
                ratio = tableau[k][-1] / a
                if best is None or ratio < best or (ratio == best and basis[k] < basis[leaving]):
                    leaving, best = k, ratio
        if leaving is None:
            # the auxiliary objective is bounded below by zero
            raise RuntimeError("Phase-one objective became unbounded")
        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering
        pivots += 1
    logger.debug("phase one finished after %d pivots (%dx%d)", pivots, m, n)
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for k, var in enumerate(basis):
        if var < n:
            x[var] = tableau[k][-1]
    return x


def _pivot(tableau: List[List[Fraction]], cost: List[Fraction], row: int, col: int) -> None:
    pivot = tableau[row][col]
    tableau[row] = [x / pivot for x in tableau[row]]
    prow = tableau[row]
    for k, other in enumerate(tableau):
        factor = other[col]
        if k != row and factor != 0:
            tableau[k] = [x - factor * y for x, y in zip(other, prow)]
    factor = cost[col]
    if factor != 0:
        cost[:] = [x - factor * y for x, y in zip(cost, prow)]


def _as_values(v: Probe) -> List[Fraction]:
    if isinstance(v, BinaryVector):
        return v.to_fractions()
    return [Fraction(x) for x in v]


def _as_rows(gens: Sequence[BinaryVector]) -> List[List[int]]:
    return [g.to_list() for g in gens]


def hull_member(gens: Sequence[BinaryVector], v: Probe, backend: str = "exact",
                presolve: bool = True) -> Tuple[bool, Optional[list]]:
    """
    Decide whether ``v`` is a convex combination of ``gens``.

    Parameters:
    -----------
    gens : sequence of BinaryVector
        Generators; an empty sequence has an empty hull.
    v : BinaryVector or sequence of rationals
        Probe point.
    backend : str, default='exact'
        - 'exact': rational phase-one simplex
        - 'lp': scipy.optimize.linprog with HiGHS
        - 'nnls': non-negative least squares with an appended row of ones
    presolve : bool, default=True
        Exact backend only. Drop generators that miss a coordinate of ``v``
        sitting at 0 or 1, and zero-forced variables, before the simplex.

    Returns:
    --------
    in_hull : bool
    weights : list or None
        λ aligned with ``gens`` when ``in_hull`` (Fractions for the exact
        backend, floats otherwise).

    Raises:
    -------
    DimensionMismatch
        If ``v`` and the generators differ in length.
    """
    if backend not in BACKENDS:
        raise ValueError(f"Unknown backend: {backend}. Use 'exact', 'lp' or 'nnls'")
    gens = list(gens)
    target = _as_values(v)
    for g in gens:
        if g.length != len(target):
            raise DimensionMismatch(
                f"Generator of length {g.length} against probe of length {len(target)}")
    if not gens:
        return False, None
    if backend == "exact":
        return _exact_member(gens, target, presolve)
    if backend == "lp":
        return _lp_member(gens, target)
    return _nnls_member(gens, target)


def _exact_member(gens: List[BinaryVector], target: List[Fraction],
                  presolve: bool = True) -> Tuple[bool, Optional[list]]:
    if any(x < 0 or x > 1 for x in target):
        return False, None
    keep = list(range(len(gens)))
    if presolve:
        # generators lie in [0,1]^d: a coordinate at a bound can only be met by
        # generators sitting at that bound
        keep = [j for j in keep
                if all((t != 0 or bit == 0) and (t != 1 or bit == 1)
                       for t, bit in zip(target, gens[j].to_list()))]
        if not keep:
            return False, None
    return _solve_columns(gens, keep, target, presolve)


def _solve_columns(gens: List[BinaryVector], keep: List[int], target: List[Fraction],
                   presolve: bool) -> Tuple[bool, Optional[list]]:
    columns = _as_rows([gens[j] for j in keep])
    matrix = [[col[i] for col in columns] for i in range(len(target))]
    matrix.append([1] * len(keep))
    solution = feasible_point(matrix, target + [Fraction(1)], presolve=presolve)
    if solution is None:
        return False, None
    weights = [Fraction(0)] * len(gens)
    for j, value in zip(keep, solution):
        weights[j] = value
    return True, weights


def _system(gens: List[BinaryVector], target: List[Fraction]):
    points = np.array(_as_rows(gens), dtype=float)
    A = np.r_[points.T, np.ones((1, points.shape[0]))]
    b = np.r_[np.array([float(x) for x in target]), np.ones(1)]
    return A, b


def _lp_member(gens, target):
    A, b = _system(gens, target)
    res = linprog(np.zeros(A.shape[1]), A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    if res.status == 0:
        return True, res.x.tolist()
    if res.status != 2:
        warnings.warn(f"linprog ended with status {res.status}: {res.message}")
    return False, None


def _nnls_member(gens, target):
    A, b = _system(gens, target)
    w, norm = nnls(A, b)
    inside = bool(np.isclose(norm, 0))
    return inside, (w.tolist() if inside else None)


def _binary_probes(d: int, trials: int, seed: int):
    if d <= EXHAUSTIVE_LIMIT:
        for bits in range(1 << d):
            yield BinaryVector(d, bits)
        return
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        yield BinaryVector.from_bits(int(x) for x in rng.integers(0, 2, size=d))


def check_binary_hull_lemma(gens: Sequence[BinaryVector], trials: int = 256,
                            seed: int = 0, presolve: bool = False) -> bool:
    """
    Check that the only binary points of conv(gens) are the generators.

    Every binary vector is probed when the dimension is at most
    ``EXHAUSTIVE_LIMIT``; otherwise ``trials`` random binary vectors are.
    By default each probe is decided by the full rational program over all
    generators. With ``presolve`` the bound reduction leaves only the
    generators equal to a binary probe, which is much faster but no longer
    an independent check.
    """
    gens = list(gens)
    if not gens:
        return True
    members = set(gens)
    d = gens[0].length
    probed = 0
    for v in _binary_probes(d, trials, seed):
        probed += 1
        inside, _ = hull_member(gens, v, presolve=presolve)
        if inside and v not in members:
            logger.info("binary point %s lies in the hull of %d generators", v, len(gens))
            return False
    logger.debug("hull lemma held on %d binary probes in dimension %d", probed, d)
    return True


def check_hull_monotonicity(s1: Sequence[BinaryVector], s2: Sequence[BinaryVector],
                            probes: Sequence[Probe]) -> bool:
    """For S1 ⊆ S2, every probe in conv(S1) must be in conv(S2)."""
    if not set(s1) <= set(s2):
        raise ValueError("s1 must be a subset of s2")
    for v in probes:
        if hull_member(s1, v)[0] and not hull_member(s2, v)[0]:
            return False
    return True


def random_convex_point(gens: Sequence[BinaryVector], rng: np.random.Generator,
                        denominator: int = 12) -> List[Fraction]:
    """A rational point of conv(gens) with random integer weights over ``denominator``."""
    gens = list(gens)
    cuts = sorted(int(x) for x in rng.integers(0, denominator + 1, size=len(gens) - 1))
    bounds = [0] + cuts + [denominator]
    weights = [Fraction(hi - lo, denominator) for lo, hi in zip(bounds, bounds[1:])]
    d = gens[0].length
    return [sum((w * g[i] for w, g in zip(weights, gens)), Fraction(0)) for i in range(d)]


def all_binary_vectors(d: int):
    return [BinaryVector.from_bits(bits) for bits in itertools.product((0, 1), repeat=d)]
