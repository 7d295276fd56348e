"""Exact resultants and mapping degrees of polynomial multiplication.

The degree of the multiplication map on monic polynomials of even degrees
m = 2k and n = 2l is computed combinatorially: pick a regular value that is
a product of k+l distinct irreducible quadratics, enumerate its monic
factorizations of type (m, n), and certify that every factorization carries
resultant sign +1.  All determinants are fraction-free and exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import IntMatrix


class ZeroPolynomial(ValueError):
    """Operation undefined for the zero polynomial."""


class PreconditionViolated(ValueError):
    """Input polynomials violate a stated hypothesis."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coefficient {x!r} is not an exact rational")


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with exact rational coefficients, ascending.

    Canonical form: no trailing zero coefficients; the zero polynomial has
    an empty coefficient tuple and degree -1.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.coefficients and self.coefficients[-1] == 0:
            raise ValueError("leading coefficient is zero; not canonical")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "IntPolynomial":
        vals = [_as_fraction(c) for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        return cls(tuple(vals))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls.from_coefficients([1])

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "IntPolynomial":
        return cls.from_coefficients([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def leading_coefficient(self) -> Fraction:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial.from_coefficients(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return IntPolynomial.from_coefficients(
                [c * other for c in self.coefficients])
        if isinstance(other, IntPolynomial):
            if self.is_zero() or other.is_zero():
                return IntPolynomial.zero()
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coefficients):
                if a:
                    for j, b in enumerate(other.coefficients):
                        out[i + j] += a * b
            return IntPolynomial.from_coefficients(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def coefficients_json(self) -> list:
        """Coefficients as JSON-safe values (int where integral)."""
        return [int(c) if c.denominator == 1 else str(c)
                for c in self.coefficients]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_product(polys: Sequence[IntPolynomial]) -> IntPolynomial:
    out = IntPolynomial.one()
    for p in polys:
        out = out * p
    return out


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> IntMatrix:
    """The (m+n) x (m+n) Sylvester matrix of p (degree m) and q (degree n).

    Rows hold descending coefficient windows: n shifted copies of p's
    coefficients followed by m shifted copies of q's.  Its determinant is
    the resultant, the product of all root differences scaled by the
    leading coefficients.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("Sylvester matrix needs nonzero polynomials")
    m, n = p.degree, q.degree
    size = m + n
    pc = list(reversed(p.coefficients))
    qc = list(reversed(q.coefficients))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return IntMatrix.from_rows(rows, cols=size)


def bareiss_determinant(m: IntMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Integer matrices stay in integer arithmetic throughout; rational
    matrices run the same recurrence over Fraction.
    """
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    integral = m.is_integral()
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return Fraction(0) if not integral else 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if integral else num / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(p: IntPolynomial, q: IntPolynomial) -> Fraction:
    """Resultant of p and q as an exact rational.

    Multiplicative in each argument and antisymmetric up to the sign
    (-1)^(deg p * deg q); zero exactly when p and q share a root.
    """
    det = bareiss_determinant(sylvester_matrix(p, q))
    return Fraction(det)


def _normalize_factors(factors) -> tuple[IntPolynomial, ...]:
    if isinstance(factors, IntPolynomial):
        return (factors,)
    return tuple(factors)


def resultant_positivity_check(p_factors, q_factors) -> bool:
    """Certify that the resultant of two root-disjoint real-root-free monic
    polynomials is strictly positive.

    Inputs are the quadratic factorizations (a single quadratic may be
    passed bare).  Each factor must be monic of degree 2 with negative
    discriminant, and all factors across both inputs must be pairwise
    distinct; violations raise PreconditionViolated.  The resultant is then
    computed exactly and checked positive.
    """
    ps = _normalize_factors(p_factors)
    qs = _normalize_factors(q_factors)
    if not ps or not qs:
        raise PreconditionViolated("empty factor list")
    for f in ps + qs:
        if f.degree != 2 or not f.is_monic():
            raise PreconditionViolated(f"factor {f} is not a monic quadratic")
        c0, c1, _ = f.coefficients
        disc = c1 * c1 - 4 * c0
        if disc >= 0:
            raise PreconditionViolated(
                f"factor {f} has real roots (discriminant {disc})")
    seen = list(ps) + list(qs)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] == seen[j]:
                raise PreconditionViolated(f"repeated factor {seen[i]}")
    value = resultant(poly_product(ps), poly_product(qs))
    if value <= 0:
        raise RuntimeError(
            f"resultant {value} is not positive; positivity argument violated")
    return True


@dataclass(frozen=True)
class FactorizationCertificate:
    """All monic factorizations target = p * q of the fixed degree type,
    with the resultant sign recorded per pair."""

    target: IntPolynomial
    pairs: tuple[tuple[IntPolynomial, IntPolynomial, int], ...]

    def __post_init__(self) -> None:
        for p, q, _ in self.pairs:
            if p * q != self.target:
                raise ValueError(f"pair ({p}, {q}) does not multiply to target")
        for i in range(len(self.pairs)):
            for j in range(i + 1, len(self.pairs)):
                if self.pairs[i][:2] == self.pairs[j][:2]:
                    raise ValueError("duplicate factorization pair")

    def to_json(self) -> dict:
        return {
            "target": self.target.coefficients_json(),
            "pairs": [
                {"p": p.coefficients_json(), "q": q.coefficients_json(),
                 "resultant_sign": s}
                for p, q, s in self.pairs
            ],
        }


def _quadratic_family(count: int, shifts: Sequence[int] | None) -> list[IntPolynomial]:
    if shifts is None:
        shifts = range(1, count + 1)
    shifts = [int(c) for c in shifts]
    if len(shifts) != count:
        raise ValueError(f"need {count} quadratic shifts, got {len(shifts)}")
    if len(set(shifts)) != count or any(c <= 0 for c in shifts):
        raise ValueError("quadratic shifts must be distinct positive integers")
    return [IntPolynomial.from_coefficients([c, 0, 1]) for c in shifts]


def degree_monic_multiplication(
        m: int, n: int,
        quadratic_shifts: Sequence[int] | None = None,
) -> tuple[int, FactorizationCertificate]:
    """Mapping degree of monic-polynomial multiplication in degrees (m, n).

    Both degrees must be even and positive.  The regular value is the
    product of quadratics x^2 + c over distinct positive shifts c (defaults
    to 1..(m+n)/2); the degree is the signed count of its ordered monic
    factorizations into degrees m and n, each contributing its exact
    resultant sign, which the construction forces to be +1.
    """
    if m < 2 or n < 2 or m % 2 or n % 2:
        raise ValueError(f"degrees must be positive even integers, got ({m}, {n})")
    k, l = m // 2, n // 2
    quads = _quadratic_family(k + l, quadratic_shifts)
    target = poly_product(quads)

    pairs = []
    signed_count = 0
    for subset in itertools.combinations(range(k + l), k):
        chosen = set(subset)
        p = poly_product([quads[i] for i in subset])
        q = poly_product([quads[i] for i in range(k + l) if i not in chosen])
        if p * q != target:
            raise RuntimeError("factorization does not reproduce the target")
        value = resultant(p, q)
        sign = 1 if value > 0 else (-1 if value < 0 else 0)
        if sign != 1:
            raise RuntimeError(
                f"resultant of ({p}, {q}) is {value}; expected positive")
        pairs.append((p, q, sign))
        signed_count += sign
    return signed_count, FactorizationCertificate(target, tuple(pairs))


def degree_sphere_multiplication(
        m: int, n: int,
        quadratic_shifts: Sequence[int] | None = None,
) -> int:
    """Absolute mapping degree of multiplication on spheres of nonzero
    polynomials: twice the monic degree, since (p, q) and (-p, -q) hit a
    regular value with the same sign.  The global sign depends on
    orientation conventions and is not modeled; the value is reported as a
    positive integer.
    """
    count, _ = degree_monic_multiplication(m, n, quadratic_shifts)
    return 2 * count
