"""Closed-form first-passage PGFs from the marked-path linear system.

For a fixed target j the unknowns are the generating functions from every
other source, coupled by psi_i = z*p_ij + sum_{k != j} p_ik * z * psi_k.
Rearranged, that is (I - zQ)psi = z*b where Q drops row/column j.  The
system is solved fraction-free (Bareiss) over the polynomial ring, so every
intermediate is an exact polynomial and the only division into the rational
function field happens once at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .exact import ONE, ZERO, Polynomial, RationalFunction, exact_div
from .markov import StochasticMatrix, reach_vector


@dataclass(frozen=True)
class PassagePgf:
    """First-passage PGF from source to target, with defectiveness data.

    reach_mass is the probability the target is ever hit; defective means
    reach_mass < 1, i.e. the passage-time law has total mass below 1.
    """
    source: int
    target: int
    pgf: RationalFunction
    reach_mass: Fraction
    defective: bool


@dataclass(frozen=True)
class PgfSystem:
    """The (n-1) x (n-1) system (I - zQ)psi = rhs for one target state.

    matrix[a][b] is a degree <= 1 polynomial; sources lists the 1-based
    source state corresponding to each row/unknown.
    """
    target: int
    sources: Tuple[int, ...]
    matrix: Tuple[Tuple[Polynomial, ...], ...]
    rhs: Tuple[Polynomial, ...]


def build_system(P: StochasticMatrix, j: int) -> PgfSystem:
    """Assemble the target-j linear system over polynomial coefficients."""
    P.check_state(j)
    sources = tuple(s for s in range(1, P.n + 1) if s != j)
    matrix = []
    for a, sa in enumerate(sources):
        row = []
        for b, sb in enumerate(sources):
            p = P.rows[sa - 1][sb - 1]
            row.append(Polynomial([1, -p]) if a == b else Polynomial([0, -p]))
        matrix.append(tuple(row))
    rhs = tuple(Polynomial([0, P.rows[s - 1][j - 1]]) for s in sources)
    return PgfSystem(target=j, sources=sources, matrix=tuple(matrix), rhs=rhs)


def _bareiss_solve(system: PgfSystem) -> Tuple[List[Polynomial], Polynomial]:
    """Fraction-free Gauss-Jordan elimination on the augmented system.

    Returns (numerators, det): unknown a equals numerators[a] / det.  No
    pivoting is needed: the pivot at step k is the k-th leading principal
    minor of I - zQ, which has constant term 1 and is therefore nonzero.
    All interior divisions are exact polynomial divisions.
    """
    m = len(system.sources)
    aug = [list(system.matrix[r]) + [system.rhs[r]] for r in range(m)]
    prev = ONE
    for k in range(m):
        piv = aug[k][k]
        for r in range(m):
            if r == k:
                continue
            ark = aug[r][k]
            for c in range(m + 1):
                if c == k:
                    continue
                aug[r][c] = exact_div(piv * aug[r][c] - ark * aug[k][c], prev)
            aug[r][k] = ZERO
        prev = piv
    det = prev if m else ONE
    return [aug[r][m] for r in range(m)], det


def solve_all_for_target(P: StochasticMatrix, j: int) -> Dict[int, PassagePgf]:
    """One elimination yields the passage PGFs from every source to j.

    The return-time PGF (source = j) is recovered by substituting the
    solved functions back into the target's own one-step equation
    psi_jj = z*p_jj + sum_{k != j} p_jk * z * psi_kj, which keeps the
    eliminated system at size n-1.
    """
    system = build_system(P, j)
    nums, det = _bareiss_solve(system)
    h = reach_vector(P, j)
    out: Dict[int, PassagePgf] = {}
    for a, s in enumerate(system.sources):
        rf = RationalFunction(nums[a], det)
        out[s] = PassagePgf(source=s, target=j, pgf=rf,
                            reach_mass=h[s - 1], defective=h[s - 1] < 1)
    ret_num = Polynomial([0, P.rows[j - 1][j - 1]]) * det
    for a, s in enumerate(system.sources):
        ret_num = ret_num + Polynomial([0, P.rows[j - 1][s - 1]]) * nums[a]
    out[j] = PassagePgf(source=j, target=j,
                        pgf=RationalFunction(ret_num, det),
                        reach_mass=h[j - 1], defective=h[j - 1] < 1)
    return out


def solve_pgf(P: StochasticMatrix, i: int, j: int) -> PassagePgf:
    """Closed-form PGF of the first passage (or first return, if i = j)."""
    P.check_state(i)
    return solve_all_for_target(P, j)[i]


def pgf_3state_closed_form(P: StochasticMatrix, i: int, j: int) -> PassagePgf:
    """Direct 3-state closed form, used as an independent cross-check.

    For a 3-state chain with (i, j) relabeled to (1, 3) and the remaining
    state as 2, the PGF is
        (p13*z + (p12*p23 - p13*p22)*z^2)
        / (1 - (p11 + p22)*z + (p11*p22 - p12*p21)*z^2).
    Only i != j is covered.
    """
    if P.n != 3:
        raise ValueError("closed form requires exactly 3 states")
    P.check_state(i)
    P.check_state(j)
    if i == j:
        raise ValueError("closed form covers only i != j")
    mid = next(s for s in (1, 2, 3) if s not in (i, j))
    p = lambda a, b: P.rows[a - 1][b - 1]
    p11, p12, p13 = p(i, i), p(i, mid), p(i, j)
    p21, p22, p23 = p(mid, i), p(mid, mid), p(mid, j)
    num = Polynomial([0, p13, p12 * p23 - p13 * p22])
    den = Polynomial([1, -(p11 + p22), p11 * p22 - p12 * p21])
    h = reach_vector(P, j)[i - 1]
    return PassagePgf(source=i, target=j, pgf=RationalFunction(num, den),
                      reach_mass=h, defective=h < 1)
