"""Bound calculus: the extremal bound functions and their exact identities.

Everything here is exact.  Exponents are Fractions computed in a cleared
form that never divides by zero when some dimension equals 1, values are
PowerProducts/PowerSums (see exactnum), and every identity check reports
rational residuals or exact power-product comparisons rather than float
differences.

Conventions for k = 1: the product bound E is identically 1, the full
bound F and the classical counting bound degenerate to n_1 (every vertex
may be a hyperedge on its own).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import (
    ComparisonUndecided,
    PowerProduct,
    PowerSum,
    Rational,
)


@dataclass(frozen=True)
class DimProfile:
    """Ambient dimensions d_1..d_k of the k vertex classes."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) < 1:
            raise ValueError("need at least one dimension")
        if any(d < 1 or d != int(d) for d in self.dims):
            raise ValueError(f"dimensions must be positive integers: {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def k(self) -> int:
        return len(self.dims)

    def drop(self, i: int) -> "DimProfile":
        return DimProfile(self.dims[:i] + self.dims[i + 1:])

    def subset(self, idx: Sequence[int]) -> "DimProfile":
        return DimProfile(tuple(self.dims[i] for i in idx))

    def decrement(self, i: int) -> "DimProfile":
        if self.dims[i] < 2:
            raise ValueError(f"d_{i} = {self.dims[i]} cannot be decremented")
        dims = list(self.dims)
        dims[i] -= 1
        return DimProfile(tuple(dims))


@dataclass(frozen=True)
class SizeProfile:
    """Class sizes n_1..n_k, paired with a DimProfile of the same length."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        if len(self.sizes) < 1:
            raise ValueError("need at least one size")
        if any(n < 1 or n != int(n) for n in self.sizes):
            raise ValueError(f"sizes must be positive integers: {self.sizes}")
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))

    @property
    def k(self) -> int:
        return len(self.sizes)

    def drop(self, i: int) -> "SizeProfile":
        return SizeProfile(self.sizes[:i] + self.sizes[i + 1:])

    def subset(self, idx: Sequence[int]) -> "SizeProfile":
        return SizeProfile(tuple(self.sizes[i] for i in idx))


@dataclass(frozen=True)
class ExponentVector:
    alphas: tuple[Fraction, ...]

    @property
    def k(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class BoundValue:
    """Exact bound value: a sum of power-product terms plus a float view.

    `pairs` keeps one (base, exponent) list per term in the original
    n_i^alpha style for display; `value` is the canonical exact sum.
    """

    value: PowerSum
    pairs: tuple[tuple[tuple[Fraction, Fraction], ...], ...]
    epsilon: Fraction = Fraction(0)
    approx: float = field(default=0.0)

    @staticmethod
    def build(terms: Sequence[Sequence[tuple[Rational, Rational]]],
              epsilon: Rational = 0) -> "BoundValue":
        total = PowerSum.zero()
        pairs = []
        for term in terms:
            prod = PowerProduct.one()
            canon = []
            for base, exp in term:
                base = Fraction(base)
                exp = Fraction(exp)
                canon.append((base, exp))
                prod = prod * PowerProduct.from_base_exp(base, exp)
            total = total + PowerSum.from_product(prod)
            pairs.append(tuple(canon))
        return BoundValue(
            value=total,
            pairs=tuple(pairs),
            epsilon=Fraction(epsilon),
            approx=float(total),
        )

    def __float__(self) -> float:
        return self.approx


def exponents(d: DimProfile) -> ExponentVector:
    """Exact exponents alpha_i of the product bound, in cleared form.

    alpha_i = 1 - prod_{l != i}(d_l - 1) /
              [(k-1) prod_l (d_l - 1) + sum_l prod_{j != l}(d_j - 1)]

    which agrees with 1 - (1/(d_i-1)) / (k-1 + sum_l 1/(d_l-1)) whenever
    all d_l >= 2 and extends it continuously to a single d_l = 1.  With
    two or more dimensions equal to 1 the cleared form is 0/0 and the
    directional limits disagree, so that case is rejected.
    """
    dims = d.dims
    k = d.k
    if k >= 2 and sum(1 for x in dims if x == 1) >= 2:
        raise ValueError(
            f"exponents undefined for {dims}: more than one d_i equals 1")
    prod_all = math.prod(x - 1 for x in dims)
    partials = []
    for i in range(k):
        partials.append(math.prod(dims[l] - 1 for l in range(k) if l != i))
    denom = (k - 1) * prod_all + sum(partials)
    alphas = tuple(1 - Fraction(partials[i], denom) for i in range(k))
    for a in alphas:
        if not 0 <= a <= 1:
            raise AssertionError(f"exponent {a} out of [0,1] for {dims}")
    return ExponentVector(alphas)


def eval_E(d: DimProfile, n: SizeProfile) -> BoundValue:
    """The product bound prod n_i^{alpha_i} as an exact power product."""
    if d.k != n.k:
        raise ValueError("profile lengths differ")
    alphas = exponents(d).alphas
    term = [(Fraction(n.sizes[i]), alphas[i]) for i in range(d.k)]
    return BoundValue.build([term])


def _f_terms(d: DimProfile, n: SizeProfile,
             eps: Fraction) -> list[list[tuple[Fraction, Fraction]]]:
    """All terms of the full bound as (base, exponent) lists, k >= 1.

    Subset terms for |I| >= 2, then the k trailing terms prod_{j != i} n_j
    (the expansion of (sum 1/n_i) prod n_i).
    """
    k = d.k
    sizes = n.sizes
    terms: list[list[tuple[Fraction, Fraction]]] = []
    for r in range(2, k + 1):
        for idx in itertools.combinations(range(k), r):
            sub_alphas = exponents(d.subset(idx)).alphas
            inside = set(idx)
            term = []
            for pos, i in enumerate(idx):
                term.append((Fraction(sizes[i]), sub_alphas[pos] + eps))
            for i in range(k):
                if i not in inside:
                    term.append((Fraction(sizes[i]), Fraction(1)))
            terms.append(term)
    for i in range(k):
        term = [(Fraction(sizes[j]), Fraction(1)) for j in range(k) if j != i]
        if not term:
            term = [(Fraction(1), Fraction(1))]
        terms.append(term)
    return terms


def eval_F(d: DimProfile, n: SizeProfile, eps: Rational = 0) -> BoundValue:
    """The full multi-term bound, iterating all 2^k - k - 1 subsets.

    For k = 1 the subset sum is empty and the bound degenerates; we
    return n_1, the trivial 1-uniform edge bound, mirroring the k = 1
    convention of the classical counting bound.
    """
    if d.k != n.k:
        raise ValueError("profile lengths differ")
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if d.k == 1:
        return BoundValue.build([[(Fraction(n.sizes[0]), Fraction(1))]], eps)
    return BoundValue.build(_f_terms(d, n, eps), eps)


def _f_value_literal(d: DimProfile, n: SizeProfile, eps: Fraction) -> PowerSum:
    """Literal sum including the degenerate k = 1 case (value 1).

    The dominance hypothesis plugs (k-1)-part subprofiles into F; for
    k = 2 the literal trailing term (1/n)*n = 1 is what makes that
    hypothesis reduce to the paper-side condition n_j >= n_i^{1/d_i}.
    """
    total = PowerSum.zero()
    for term in _f_terms(d, n, eps):
        prod = PowerProduct.one()
        for base, exp in term:
            prod = prod * PowerProduct.from_base_exp(base, exp)
        total = total + PowerSum.from_product(prod)
    return total


@dataclass(frozen=True)
class MatrixIdentityReport:
    dims: tuple[int, ...]
    alphas: tuple[Fraction, ...]
    residuals: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals)


def check_matrix_identity(d: DimProfile) -> MatrixIdentityReport:
    """Verify alpha_i = sum_{j != i} d_j (1 - alpha_j) in exact rationals."""
    alphas = exponents(d).alphas
    residuals = []
    for i in range(d.k):
        rhs = sum((d.dims[j] * (1 - alphas[j]) for j in range(d.k) if j != i),
                  Fraction(0))
        residuals.append(alphas[i] - rhs)
    return MatrixIdentityReport(d.dims, alphas, tuple(residuals))


@dataclass(frozen=True)
class ScalingReport:
    special_index: int
    r: Fraction
    lhs_r_exponent: Fraction
    size_exponents: tuple[Fraction, ...]
    lhs_value: PowerProduct
    rhs_value: PowerProduct

    @property
    def ok(self) -> bool:
        # Formal identity: the residual exponent of r must vanish and the
        # concrete power products must coincide.
        return self.lhs_r_exponent == 0 and self.lhs_value == self.rhs_value


def check_scaling_identity(d: DimProfile, n: SizeProfile, r: Rational,
                           special_index: int) -> ScalingReport:
    """Exact check of r^{sum_{j != i} d_j} E(..., n_j/r^{d_j}, ..., n_i/r) = E(n).

    `special_index` is 0-based: coordinate i is scaled by r, every other
    coordinate j by r^{d_j}.  Compared two ways: formally (the exponent
    of the symbol r on the left side must cancel to zero; the n_j
    exponents match by construction) and concretely on power products.
    """
    if d.k != n.k:
        raise ValueError("profile lengths differ")
    i = special_index
    if not 0 <= i < d.k:
        raise ValueError(f"special index {i} out of range")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    alphas = exponents(d).alphas
    lead = sum(d.dims[j] for j in range(d.k) if j != i)
    r_exp = Fraction(lead)
    for j in range(d.k):
        scale_pow = Fraction(1) if j == i else Fraction(d.dims[j])
        r_exp -= scale_pow * alphas[j]

    lhs = PowerProduct.from_base_exp(r, lead)
    for j in range(d.k):
        scale_pow = 1 if j == i else d.dims[j]
        base = Fraction(n.sizes[j]) / r**scale_pow
        lhs = lhs * PowerProduct.from_base_exp(base, alphas[j])
    rhs = PowerProduct.one()
    for j in range(d.k):
        rhs = rhs * PowerProduct.from_base_exp(n.sizes[j], alphas[j])
    return ScalingReport(i, r, r_exp, alphas, lhs, rhs)


@dataclass(frozen=True)
class MonotonicityReport:
    index: int
    hypothesis_met: bool
    failed_pairs: tuple[tuple[int, int], ...]
    holds: Optional[bool]
    lhs_float: Optional[float]
    rhs_float: Optional[float]


def check_monotonicity(d: DimProfile, n: SizeProfile, i: int,
                       eps: Rational = 0) -> MonotonicityReport:
    """Decrementing d_i can only lower the full bound, under the side
    condition n_i >= n_j^{1/d_j} for all j != i (checked exactly as
    n_i^{d_j} >= n_j).

    When the hypothesis fails this is reported, not asserted.  The
    comparison itself is exact: the two bounds share the same term
    structure and are compared termwise as power products, falling back
    to an interval comparison of the sums if any single term resists.
    """
    if d.k != n.k:
        raise ValueError("profile lengths differ")
    if d.dims[i] < 2:
        raise ValueError(f"d_{i} must be >= 2 to decrement")
    eps = Fraction(eps)
    failed = tuple((i, j) for j in range(d.k)
                   if j != i and n.sizes[i] ** d.dims[j] < n.sizes[j])
    if failed:
        return MonotonicityReport(i, False, failed, None, None, None)

    lower_d = d.decrement(i)
    lo_terms = _f_terms(lower_d, n, eps)
    hi_terms = _f_terms(d, n, eps)
    termwise = True
    for lo, hi in zip(lo_terms, hi_terms):
        lo_prod = PowerProduct.one()
        for base, exp in lo:
            lo_prod = lo_prod * PowerProduct.from_base_exp(base, exp)
        hi_prod = PowerProduct.one()
        for base, exp in hi:
            hi_prod = hi_prod * PowerProduct.from_base_exp(base, exp)
        if lo_prod.compare(hi_prod) > 0:
            termwise = False
            break
    lo_sum = _f_value_literal(lower_d, n, eps)
    hi_sum = _f_value_literal(d, n, eps)
    if termwise:
        holds = True
    else:
        try:
            holds = lo_sum.compare(hi_sum) <= 0
        except ComparisonUndecided:
            holds = False
    return MonotonicityReport(i, True, (), holds,
                              float(lo_sum), float(hi_sum))


@dataclass(frozen=True)
class DominanceReport:
    hypothesis_met: bool
    failed_indices: tuple[int, ...]
    constant: Fraction
    holds: Optional[bool]
    ratio: Optional[float]


def check_dominance(d: DimProfile, n: SizeProfile,
                    eps: Rational = 0) -> DominanceReport:
    """Under the hypothesis n_i^{-1/d_i} prod n_j >= n_i * F(d w/o i,
    n w/o i) for every i, the product term dominates the full bound:
    E(n) prod n_i^eps >= F(n) / 2^{k+1}.

    The constant 1/2^{k+1} is safe because the full bound has 2^k - 1
    terms and, under the hypothesis, each is at most the product term.
    The measured ratio E prod n^eps / F is reported so a sharper
    constant can be read off.
    """
    if d.k != n.k:
        raise ValueError("profile lengths differ")
    eps = Fraction(eps)
    k = d.k
    failed = []
    for i in range(k):
        lhs = PowerProduct.from_base_exp(n.sizes[i], Fraction(-1, d.dims[i]))
        for j in range(k):
            lhs = lhs * PowerProduct.from_base_exp(n.sizes[j], 1)
        sub = _f_value_literal(d.drop(i), n.drop(i), eps)
        rhs = sub.times_product(PowerProduct.from_base_exp(n.sizes[i], 1))
        try:
            if PowerSum.from_product(lhs).compare(rhs) < 0:
                failed.append(i)
        except ComparisonUndecided:
            failed.append(i)
    constant = Fraction(1, 2 ** (k + 1))
    if failed:
        return DominanceReport(False, tuple(failed), constant, None, None)

    alphas = exponents(d).alphas
    dominant = PowerProduct.one()
    for i in range(k):
        dominant = dominant * PowerProduct.from_base_exp(n.sizes[i],
                                                         alphas[i] + eps)
    full = _f_value_literal(d, n, eps)
    # Termwise: every term of F is at most the dominant term, hence
    # F <= (2^k - 1) * dominant <= dominant / constant.
    termwise = True
    for term in _f_terms(d, n, eps):
        prod = PowerProduct.one()
        for base, exp in term:
            prod = prod * PowerProduct.from_base_exp(base, exp)
        if prod.compare(dominant) > 0:
            termwise = False
            break
    if termwise:
        holds = True
    else:
        try:
            holds = PowerSum.from_product(dominant).compare(
                full.scale(constant)) >= 0
        except ComparisonUndecided:
            holds = False
    with_eps = PowerSum.from_product(dominant)
    ratio = float(with_eps) / float(full)
    return DominanceReport(True, (), constant, holds, ratio)


def erdos_bound(k: int, u: Sequence[int], n: SizeProfile) -> BoundValue:
    """Shape of the classical counting bound:
    (n_k^{-1/(u_1...u_{k-1})} + n_1^{-1} + ... + n_{k-1}^{-1}) prod n_i.

    Constant-free.  For k = 1 the bracket is degenerate and the bound is
    defined as n_1 (every vertex can be a hyperedge).
    """
    if k < 1 or len(u) != k or n.k != k:
        raise ValueError("inconsistent arity")
    if any(x < 1 for x in u):
        raise ValueError("pattern sizes must be positive")
    if k == 1:
        return BoundValue.build([[(Fraction(n.sizes[0]), Fraction(1))]])
    uprod = math.prod(u[:-1])
    terms = []
    lead = [(Fraction(n.sizes[k - 1]), Fraction(-1, uprod))]
    lead += [(Fraction(n.sizes[i]), Fraction(1)) for i in range(k)]
    terms.append(lead)
    for i in range(k - 1):
        term = [(Fraction(n.sizes[i]), Fraction(-1))]
        term += [(Fraction(n.sizes[j]), Fraction(1)) for j in range(k)]
        terms.append(term)
    return BoundValue.build(terms)
