"""Exact arithmetic: rationals, dense polynomials in z, rational functions.

Everything is built on fractions.Fraction and is bit-exact; no floats appear
anywhere on the computational path.  All values are immutable after
construction and every operation is a pure function, so concurrent use is
safe without locking.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

Coeff = Union[Fraction, int, str]


def as_fraction(x: Coeff) -> Fraction:
    """Coerce an int, Fraction, "p/q" string or decimal string to Fraction.

    Decimal strings are read exactly ("0.4" -> 2/5).  Floats are rejected:
    Fraction(0.4) would capture the binary approximation, which silently
    breaks exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string, int or Fraction")
    return Fraction(x)


class Polynomial:
    """Dense polynomial in z; coeffs[k] is the coefficient of z^k.

    Trailing zero coefficients are trimmed, so the zero polynomial has an
    empty coefficient tuple and every other polynomial has a nonzero leading
    coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Coeff]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = as_fraction(other)
            return Polynomial([c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Polynomial(out)

    def __rmul__(self, other: Coeff) -> "Polynomial":
        return self.__mul__(other)

    def __divmod__(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        """Euclidean division; other must be nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn = other.coeffs
        lead = dn[-1]
        dq = len(rem) - len(dn)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(dn) - 1] / lead
            quot[k] = c
            if c != 0:
                for m, d in enumerate(dn):
                    rem[k + m] -= c * d
        return Polynomial(quot), Polynomial(rem)

    def eval(self, x: Coeff) -> Fraction:
        """Horner evaluation at an exact point."""
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial([c / lead for c in self.coeffs])


ZERO = Polynomial()
ONE = Polynomial([1])
Z = Polynomial([0, 1])


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Division known to be remainder-free; raises if it is not."""
    q, r = divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm over the rationals."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.monic()


class RationalFunction:
    """Reduced quotient of two polynomials in canonical form.

    Canonical means: numerator and denominator share no nonconstant factor,
    and the denominator's constant term is 1.  The scaling is always possible
    here because every denominator that arises is det(I - zQ), whose constant
    term is 1, and reduction cannot introduce a root at z = 0.  Canonical
    form makes equality structural, so __eq__ compares coefficient tuples.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Polynomial = ONE):
        if denominator.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if numerator.is_zero():
            self.numerator = ZERO
            self.denominator = ONE
            return
        g = poly_gcd(numerator, denominator)
        if g.degree > 0:
            numerator = exact_div(numerator, g)
            denominator = exact_div(denominator, g)
        c0 = denominator.coeff(0)
        if c0 == 0:
            raise ValueError("non-expandable at z=0: denominator constant term is 0")
        self.numerator = numerator * (1 / c0)
        self.denominator = denominator * (1 / c0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.numerator == other.numerator
                and self.denominator == other.denominator)

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.numerator * other.denominator - other.numerator * self.denominator,
            self.denominator * other.denominator)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            raise ValueError("negative powers not supported")
        out = RationalFunction(ONE)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "RationalFunction":
        """Quotient-rule derivative, re-canonicalized."""
        n, d = self.numerator, self.denominator
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def eval(self, x: Coeff) -> Fraction:
        x = as_fraction(x)
        dv = self.denominator.eval(x)
        if dv == 0:
            raise ZeroDivisionError(f"pole at evaluation point z={x}")
        return self.numerator.eval(x) / dv

    def series(self, terms: int) -> List[Fraction]:
        """Maclaurin coefficients c_0..c_{terms-1}.

        Uses the linear recurrence c_k = n_k - sum_{m=1..min(k, deg d)}
        d_m * c_{k-m}, valid because the canonical denominator has constant
        term 1.
        """
        if terms < 0:
            raise ValueError("terms must be >= 0")
        d = self.denominator.coeffs
        out: List[Fraction] = []
        for k in range(terms):
            c = self.numerator.coeff(k)
            for m in range(1, min(k, len(d) - 1) + 1):
                c -= d[m] * out[k - m]
            out.append(c)
        return out

    def render(self, decimal: bool = False) -> str:
        """Text form "(n0 + n1*z + ...) / (1 + d1*z + ...)"."""
        return (f"({_poly_text(self.numerator, decimal)})"
                f" / ({_poly_text(self.denominator, decimal)})")


def _pow10_exponent(den: int) -> Optional[int]:
    """If den = 2^a * 5^b, smallest k with den | 10^k, else None."""
    a = 0
    while den % 2 == 0:
        den //= 2
        a += 1
    b = 0
    while den % 5 == 0:
        den //= 5
        b += 1
    return max(a, b) if den == 1 else None


def decimal_string(x: Fraction) -> Optional[str]:
    """Exact decimal expansion, or None when it does not terminate."""
    k = _pow10_exponent(x.denominator)
    if k is None:
        return None
    scaled = abs(x.numerator) * 10 ** k // x.denominator
    sign = "-" if x < 0 else ""
    if k == 0:
        return f"{sign}{scaled}"
    digits = str(scaled).rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def format_rational(x: Fraction, decimal: bool = False, annotate: bool = True) -> str:
    """Render a Fraction as "p/q", or in decimal mode as an exact decimal
    when one exists, falling back to "p/q (~0.123457)" so a rounded value
    never masquerades as exact.  annotate=False drops the parenthetical
    (used inside polynomial strings).
    """
    if not decimal:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    s = decimal_string(x)
    if s is not None:
        return s
    frac = f"{x.numerator}/{x.denominator}"
    if annotate:
        return f"{frac} (~{float(x):.6g})"
    return frac


def _poly_text(p: Polynomial, decimal: bool) -> str:
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            term = format_rational(mag, decimal, annotate=False)
        else:
            base = "z" if k == 1 else f"z^{k}"
            if mag == 1:
                term = base
            else:
                term = f"{format_rational(mag, decimal, annotate=False)}*{base}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def solve_linear_system(rows: Sequence[Sequence[Fraction]],
                        rhs: Sequence[Fraction]) -> List[Fraction]:
    """Exact Gaussian elimination with partial pivoting over Fraction.

    Raises ArithmeticError on a singular matrix.
    """
    m = len(rows)
    aug = [list(rows[r]) + [rhs[r]] for r in range(m)]
    for k in range(m):
        piv = next((r for r in range(k, m) if aug[r][k] != 0), None)
        if piv is None:
            raise ArithmeticError("singular linear system")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        for r in range(k + 1, m):
            f = aug[r][k] / pk
            if f == 0:
                continue
            for c in range(k, m + 1):
                aug[r][c] -= f * aug[k][c]
    sol = [Fraction(0)] * m
    for k in range(m - 1, -1, -1):
        s = aug[k][m] - sum(aug[k][c] * sol[c] for c in range(k + 1, m))
        sol[k] = s / aug[k][k]
    return sol
