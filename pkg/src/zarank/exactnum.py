"""Exact arithmetic for positive reals of the form prod_i b_i^{e_i}.

The bound formulas evaluate to products and sums of rational powers of
positive rationals (e.g. 8^(2/3) * 5^(1/2)).  Floats cannot compare such
values reliably, so every value is kept in a canonical prime-factored
form: a PowerProduct is a map prime -> rational exponent, and a PowerSum
is a rational-coefficient combination of PowerProducts.

Single power products compare exactly: p^(a) <= q^(b) is decided by
clearing exponent denominators and comparing big integers.  Sums compare
exactly when they share the same irrational parts (termwise), and
otherwise through interval arithmetic with escalating precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

import mpmath

Rational = Union[int, Fraction]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n <= 0:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 41
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class ComparisonUndecided(Exception):
    """Raised when interval refinement cannot separate two sums."""


class PowerProduct:
    """An exact positive real ``prod p^e`` with p prime and e rational."""

    __slots__ = ("exps",)

    def __init__(self, exps: Mapping[int, Fraction] | None = None):
        cleaned = {}
        if exps:
            for p, e in exps.items():
                e = Fraction(e)
                if e != 0:
                    cleaned[p] = e
        self.exps: dict[int, Fraction] = cleaned

    @classmethod
    def one(cls) -> "PowerProduct":
        return cls()

    @classmethod
    def from_rational(cls, q: Rational) -> "PowerProduct":
        q = Fraction(q)
        if q <= 0:
            raise ValueError(f"PowerProduct values are positive, got {q}")
        exps: dict[int, Fraction] = {}
        for p, m in factorize(q.numerator).items():
            exps[p] = exps.get(p, Fraction(0)) + m
        for p, m in factorize(q.denominator).items():
            exps[p] = exps.get(p, Fraction(0)) - m
        return cls(exps)

    @classmethod
    def from_base_exp(cls, base: Rational, exp: Rational) -> "PowerProduct":
        """base**exp for a positive rational base and rational exponent."""
        return cls.from_rational(base) ** Fraction(exp)

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        exps = dict(self.exps)
        for p, e in other.exps.items():
            exps[p] = exps.get(p, Fraction(0)) + e
        return PowerProduct(exps)

    def __truediv__(self, other: "PowerProduct") -> "PowerProduct":
        exps = dict(self.exps)
        for p, e in other.exps.items():
            exps[p] = exps.get(p, Fraction(0)) - e
        return PowerProduct(exps)

    def __pow__(self, q: Rational) -> "PowerProduct":
        q = Fraction(q)
        return PowerProduct({p: e * q for p, e in self.exps.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PowerProduct) and self.exps == other.exps

    def __hash__(self) -> int:
        return hash(frozenset(self.exps.items()))

    def is_one(self) -> bool:
        return not self.exps

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for e in self.exps.values())

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        val = Fraction(1)
        for p, e in self.exps.items():
            val *= Fraction(p) ** int(e)
        return val

    def split_rational(self) -> tuple[Fraction, "PowerProduct"]:
        """Factor into (rational part, residue with exponents in [0,1))."""
        coeff = Fraction(1)
        residue: dict[int, Fraction] = {}
        for p, e in self.exps.items():
            whole = math.floor(e)
            frac = e - whole
            if whole:
                coeff *= Fraction(p) ** whole
            if frac:
                residue[p] = frac
        return coeff, PowerProduct(residue)

    def compare(self, other: "PowerProduct") -> int:
        """Exact three-way comparison: -1, 0 or +1."""
        diff = self / other
        if diff.is_one():
            return 0
        lcm = 1
        for e in diff.exps.values():
            lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
        hi = 1
        lo = 1
        for p, e in diff.exps.items():
            m = int(e * lcm)
            if m > 0:
                hi *= p**m
            else:
                lo *= p**(-m)
        return (hi > lo) - (hi < lo)

    def __le__(self, other: "PowerProduct") -> bool:
        return self.compare(other) <= 0

    def __lt__(self, other: "PowerProduct") -> bool:
        return self.compare(other) < 0

    def log_mpf(self) -> mpmath.mpf:
        """Natural log at current mpmath working precision."""
        total = mpmath.mpf(0)
        for p, e in self.exps.items():
            total += mpmath.mpf(e.numerator) / e.denominator * mpmath.log(p)
        return total

    def mpf(self) -> mpmath.mpf:
        return mpmath.exp(self.log_mpf())

    def __float__(self) -> float:
        with mpmath.workprec(80):
            return float(self.mpf())

    def base_exp_pairs(self) -> list[tuple[int, Fraction]]:
        return sorted(self.exps.items())

    def __repr__(self) -> str:
        if self.is_one():
            return "1"
        return "*".join(f"{p}^({e})" for p, e in self.base_exp_pairs())


class PowerSum:
    """A finite sum ``sum_j c_j * X_j`` with c_j rational > 0 and X_j products.

    Terms are keyed by the fractional part of their exponent vector, so
    rationally-commensurable terms merge and sums that are formally equal
    compare as equal without any numerics.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PowerProduct, Fraction] | None = None):
        self.terms: dict[PowerProduct, Fraction] = {}
        if terms:
            for prod, coeff in terms.items():
                self._add(prod, Fraction(coeff))

    def _add(self, prod: PowerProduct, coeff: Fraction) -> None:
        if coeff == 0:
            return
        extra, residue = prod.split_rational()
        c = self.terms.get(residue, Fraction(0)) + coeff * extra
        if c == 0:
            self.terms.pop(residue, None)
        else:
            if c < 0:
                raise ValueError("PowerSum terms must stay positive")
            self.terms[residue] = c

    @classmethod
    def from_product(cls, prod: PowerProduct, coeff: Rational = 1) -> "PowerSum":
        s = cls()
        s._add(prod, Fraction(coeff))
        return s

    @classmethod
    def zero(cls) -> "PowerSum":
        return cls()

    def __add__(self, other: "PowerSum") -> "PowerSum":
        out = PowerSum()
        out.terms = dict(self.terms)
        for prod, coeff in other.terms.items():
            out._add(prod, coeff)
        return out

    def scale(self, coeff: Rational) -> "PowerSum":
        coeff = Fraction(coeff)
        out = PowerSum()
        for prod, c in self.terms.items():
            out._add(prod, c * coeff)
        return out

    def times_product(self, prod: PowerProduct) -> "PowerSum":
        out = PowerSum()
        for residue, c in self.terms.items():
            out._add(residue * prod, c)
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PowerSum) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_rational(self) -> bool:
        return all(r.is_one() for r in self.terms)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("sum has irrational terms")
        return sum(self.terms.values(), Fraction(0))

    def term_list(self) -> list[tuple[Fraction, PowerProduct]]:
        return sorted(
            ((c, r) for r, c in self.terms.items()),
            key=lambda t: repr(t[1]),
        )

    def bounds(self, prec: int) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Rigorous-enough enclosure at `prec` bits of working precision.

        mpmath's exp/log are accurate to ~1 ulp; the padding below is a
        generous cover for the handful of operations per term.
        """
        with mpmath.workprec(prec):
            pad = mpmath.mpf(2) ** (16 - prec)
            lo = mpmath.mpf(0)
            hi = mpmath.mpf(0)
            for residue, coeff in self.terms.items():
                c = mpmath.mpf(coeff.numerator) / coeff.denominator
                v = c * residue.mpf()
                lo += v * (1 - pad)
                hi += v * (1 + pad)
            return lo, hi

    def compare(self, other: "PowerSum", max_prec: int = 4096) -> int:
        """Exact three-way comparison, escalating precision as needed."""
        if self.terms == other.terms:
            return 0
        if self.is_rational() and other.is_rational():
            a, b = self.as_rational(), other.as_rational()
            return (a > b) - (a < b)
        prec = 64
        while prec <= max_prec:
            alo, ahi = self.bounds(prec)
            blo, bhi = other.bounds(prec)
            if ahi < blo:
                return -1
            if alo > bhi:
                return 1
            prec *= 2
        # Last resort: cancel common terms and retry the rational test.
        diff_self, diff_other = _cancel(self, other)
        if diff_self.terms == diff_other.terms:
            return 0
        raise ComparisonUndecided(f"cannot separate {self} and {other}")

    def __le__(self, other: "PowerSum") -> bool:
        return self.compare(other) <= 0

    def __float__(self) -> float:
        with mpmath.workprec(80):
            lo, hi = self.bounds(80)
            return float((lo + hi) / 2)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{r!r}" for c, r in self.term_list())


def _cancel(a: PowerSum, b: PowerSum) -> tuple[PowerSum, PowerSum]:
    ra, rb = PowerSum(), PowerSum()
    for residue in set(a.terms) | set(b.terms):
        ca = a.terms.get(residue, Fraction(0))
        cb = b.terms.get(residue, Fraction(0))
        if ca > cb:
            ra.terms[residue] = ca - cb
        elif cb > ca:
            rb.terms[residue] = cb - ca
    return ra, rb


def product_from_pairs(pairs: Iterable[tuple[Rational, Rational]]) -> PowerProduct:
    """Build prod base^exp from (base, exp) pairs with positive rational bases."""
    out = PowerProduct.one()
    for base, exp in pairs:
        out = out * PowerProduct.from_base_exp(base, exp)
    return out
