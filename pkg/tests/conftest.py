import random
from fractions import Fraction

import pytest

from fpt import Polynomial, RationalFunction, StochasticMatrix

PAPER_CSV = ".2,.4,.4\n.3,.3,.4\n.5,.4,.1\n"

# psi13 / psi23 numerator and denominator as displayed in the 3-state
# worked example; NOTE they share the factor (1 + z/10), so the canonical
# reduced form is (2/5 z)/(1 - 3/5 z).
PSI13_NUM = Polynomial([0, Fraction(2, 5), Fraction(1, 25)])
PSI13_DEN = Polynomial([1, Fraction(-1, 2), Fraction(-3, 50)])
PSI33_NUM = Polynomial([0, Fraction(1, 10), Fraction(31, 100), Fraction(3, 100)])


@pytest.fixture
def paper_chain():
    return StochasticMatrix([
        ["0.2", "0.4", "0.4"],
        ["0.3", "0.3", "0.4"],
        ["0.5", "0.4", "0.1"],
    ])


@pytest.fixture
def psi13():
    return RationalFunction(PSI13_NUM, PSI13_DEN)


@pytest.fixture
def psi33():
    return RationalFunction(PSI33_NUM, PSI13_DEN)


def random_fraction(rng, span=9, maxden=9):
    return Fraction(rng.randint(-span, span), rng.randint(1, maxden))


def random_polynomial(rng, max_degree=5, span=9):
    return Polynomial([random_fraction(rng, span)
                       for _ in range(rng.randint(0, max_degree + 1))])


def random_stochastic(rng, n, allow_zero=True):
    rows = []
    for _ in range(n):
        lo = 0 if allow_zero else 1
        w = [rng.randint(lo, 6) for _ in range(n)]
        if sum(w) == 0:
            w[rng.randrange(n)] = 1
        t = sum(w)
        rows.append([Fraction(x, t) for x in w])
    return StochasticMatrix(rows)


def random_irreducible(rng, n):
    # strictly positive entries force irreducibility
    return random_stochastic(rng, n, allow_zero=False)


def fresh_rng(seed):
    return random.Random(seed)
