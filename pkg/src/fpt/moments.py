"""Passage-time moments from the differentiated system, and r-th passage
laws as products of passage and return PGFs.

Differentiating the one-step system once and setting z = 1 gives
mu_i = 1 + sum_{k != j} p_ik * mu_k; differentiating twice gives
s_i = sum_{k != j} p_ik * (2*mu_k + s_k) for the second factorial moment
s = E(X(X-1)).  Solving these small rational systems avoids ever forming
the PGF, which is the cheap route; the PGF-derivative route is kept as an
independent cross-check in the tests.

Infinite moments (target not reached with certainty) are reported by an
explicit flag, never a sentinel number.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .exact import RationalFunction, solve_linear_system
from .markov import PmfPrefix, StochasticMatrix, reach_vector
from .solver import solve_all_for_target


@dataclass(frozen=True)
class MomentReport:
    """Per-source passage-time moments toward one target.

    Vectors are indexed by source state minus 1.  Entries are None exactly
    where finite[] is False; the diagonal slot holds return-time moments.
    """
    target: int
    means: Tuple[Optional[Fraction], ...]
    second_factorial: Tuple[Optional[Fraction], ...]
    variances: Tuple[Optional[Fraction], ...]
    finite: Tuple[bool, ...]


@dataclass(frozen=True)
class RthPassagePgf:
    """PGF of the time of the r-th visit to target, starting from source."""
    source: int
    target: int
    order: int
    pgf: RationalFunction


def _certain_sources(P: StochasticMatrix, j: int):
    """0-based non-target sources that hit j with probability 1.

    This set is closed under non-target transitions: if i hits j almost
    surely, so does every state i can step to without passing j.
    """
    h = reach_vector(P, j)
    certain = [k for k in range(P.n) if k != j - 1 and h[k] == 1]
    return certain, h


def mean_first_passage(P: StochasticMatrix, j: int) -> List[Optional[Fraction]]:
    """Mean passage times mu[i-1] = E(steps from i to first hit of j).

    Sources that miss j with positive probability get None (infinite mean);
    the j slot is the mean return time.
    """
    P.check_state(j)
    certain, h = _certain_sources(P, j)
    pos = {k: a for a, k in enumerate(certain)}
    m = len(certain)
    rows = [[(Fraction(1) if a == b else Fraction(0)) - P.rows[certain[a]][certain[b]]
             for b in range(m)] for a in range(m)]
    try:
        sol = solve_linear_system(rows, [Fraction(1)] * m) if m else []
    except ArithmeticError:
        sol = None
    mu: List[Optional[Fraction]] = [None] * P.n
    if sol is not None:
        for k, a in pos.items():
            mu[k] = sol[a]
        jj = j - 1
        if h[jj] == 1:
            acc = Fraction(1)
            ok = True
            for k in range(P.n):
                if k == jj or P.rows[jj][k] == 0:
                    continue
                if mu[k] is None:
                    ok = False
                    break
                acc += P.rows[jj][k] * mu[k]
            if ok:
                mu[jj] = acc
    return mu


def second_factorial_moment(P: StochasticMatrix, j: int) -> List[Optional[Fraction]]:
    """s[i-1] = E(X(X-1)) for the passage time from i to j; None if infinite."""
    P.check_state(j)
    mu = mean_first_passage(P, j)
    certain, h = _certain_sources(P, j)
    certain = [k for k in certain if mu[k] is not None]
    pos = {k: a for a, k in enumerate(certain)}
    m = len(certain)
    rows = [[(Fraction(1) if a == b else Fraction(0)) - P.rows[certain[a]][certain[b]]
             for b in range(m)] for a in range(m)]
    rhs = [sum((P.rows[k][l] * 2 * mu[l] for l in certain), Fraction(0))
           for k in certain]
    try:
        sol = solve_linear_system(rows, rhs) if m else []
    except ArithmeticError:
        sol = None
    s: List[Optional[Fraction]] = [None] * P.n
    if sol is not None:
        for k, a in pos.items():
            s[k] = sol[a]
        jj = j - 1
        if h[jj] == 1 and mu[jj] is not None:
            acc = Fraction(0)
            ok = True
            for k in range(P.n):
                if k == jj or P.rows[jj][k] == 0:
                    continue
                if mu[k] is None or s[k] is None:
                    ok = False
                    break
                acc += P.rows[jj][k] * (2 * mu[k] + s[k])
            if ok:
                s[jj] = acc
    return s


def variance_first_passage(P: StochasticMatrix, j: int) -> List[Optional[Fraction]]:
    """Var(X) = s + mu - mu^2, exact; None wherever a moment is infinite."""
    mu = mean_first_passage(P, j)
    s = second_factorial_moment(P, j)
    return [None if (m is None or sk is None) else sk + m - m * m
            for m, sk in zip(mu, s)]


def moment_report(P: StochasticMatrix, j: int) -> MomentReport:
    mu = mean_first_passage(P, j)
    s = second_factorial_moment(P, j)
    var = [None if (m is None or sk is None) else sk + m - m * m
           for m, sk in zip(mu, s)]
    finite = tuple(m is not None and sk is not None for m, sk in zip(mu, s))
    return MomentReport(target=j, means=tuple(mu), second_factorial=tuple(s),
                        variances=tuple(var), finite=finite)


def rth_passage_pgf(P: StochasticMatrix, i: int, j: int, r: int) -> RthPassagePgf:
    """PGF of the r-th hit of j from i: the passage PGF times r-1 copies of
    the return PGF, since the hit times between visits are independent by
    the Markov property.
    """
    if r < 1:
        raise ValueError("order must be >= 1")
    pgfs = solve_all_for_target(P, j)
    P.check_state(i)
    pgf = pgfs[i].pgf
    if r > 1:
        pgf = pgf * pgfs[j].pgf ** (r - 1)
    return RthPassagePgf(source=i, target=j, order=r, pgf=pgf)


def rth_passage_pmf(P: StochasticMatrix, i: int, j: int, r: int,
                    depth: int) -> PmfPrefix:
    """P(r-th hit of j happens on step k) for k = 1..depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    rp = rth_passage_pgf(P, i, j, r)
    coeffs = rp.pgf.series(depth + 1)
    values = tuple(coeffs[1:])
    return PmfPrefix(source=i, target=j, values=values,
                     mass=sum(values, Fraction(0)))
