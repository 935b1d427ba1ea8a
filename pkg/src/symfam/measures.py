"""Biased product measures, threshold location, and lemma verifiers.

The p-biased measure gives a subset x of [n] weight p^|x| (1-p)^(n-|x|),
so a family's measure depends only on its size profile. At dyadic
p = a/2^b the measure of any family is an integer over 2^(b*n); every
verifier below uses that integer form, so the lemma checks carry no
floating-point tolerance at all. Floating point is used only for curve
evaluation and bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import (
    ContractViolationError,
    NotApplicableError,
    UniverseMismatchError,
    UnreachableLevelError,
)
from .families import (
    SetFamily,
    SizeProfile,
    complement_family,
    cross_intersecting,
    intersection_family,
    r_wise_intersecting,
    size_profile,
    upset_closure,
)

MAX_DYADIC_BITS = 16
BISECT_TOL = 1e-9
BISECT_MAX_ITER = 200
MONOTONE_GRID = 32
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class BiasedMeasureValue:
    """A measure value in [0,1], exact when p was dyadic.

    When populated, exact_numerator / exact_denominator equals the
    measure exactly and exact_denominator = 2**(b*n) for p = a/2^b.
    """

    value: float
    exact_numerator: int | None = None
    exact_denominator: int | None = None

    @property
    def exact(self) -> Fraction | None:
        if self.exact_numerator is None:
            return None
        return Fraction(self.exact_numerator, self.exact_denominator)


def _as_profile(family_or_profile) -> SizeProfile:
    if isinstance(family_or_profile, SizeProfile):
        return family_or_profile
    if isinstance(family_or_profile, SetFamily):
        return size_profile(family_or_profile)
    raise TypeError(f"expected SetFamily or SizeProfile, got {type(family_or_profile)!r}")


def _dyadic(p) -> tuple[int, int] | None:
    """(a, b) with p = a/2^b in lowest terms and b <= MAX_DYADIC_BITS, else None."""
    frac = Fraction(p)
    den = frac.denominator
    if den > (1 << MAX_DYADIC_BITS) or den & (den - 1):
        return None
    return frac.numerator, den.bit_length() - 1


def biased_measure(family_or_profile, p) -> BiasedMeasureValue:
    """Sum of W_j p^j (1-p)^(n-j) over the size profile W."""
    prof = _as_profile(family_or_profile)
    if not 0 <= p <= 1:
        raise ValueError(f"bias must lie in [0,1], got {p}")
    n = prof.n
    dyadic = _dyadic(p)
    if dyadic is not None:
        a, b = dyadic
        c = (1 << b) - a
        num = sum(w * a**j * c ** (n - j) for j, w in enumerate(prof.counts) if w)
        den = 1 << (b * n)
        return BiasedMeasureValue(float(Fraction(num, den)), num, den)
    pf = float(p)
    value = math.fsum(
        w * pf**j * (1.0 - pf) ** (n - j) for j, w in enumerate(prof.counts) if w
    )
    return BiasedMeasureValue(min(max(value, 0.0), 1.0))


def measure_fn(family_or_profile) -> Callable[[float], float]:
    """The measure as a plain function of p, for curves and bisection."""
    prof = _as_profile(family_or_profile)
    return lambda p: biased_measure(prof, p).value


def threshold_point(measure: Callable[[float], float], epsilon: float) -> float:
    """p* with measure(p*) = epsilon, for a non-decreasing measure function.

    Bisects until the bracket is narrower than 1e-9 and the value is
    within 1e-9 of the target (at most 200 iterations). A sampled grid
    guards against non-monotone inputs before bisection starts.
    """
    lo_val, hi_val = measure(0.0), measure(1.0)
    prev = lo_val
    for i in range(1, MONOTONE_GRID + 1):
        cur = measure(i / MONOTONE_GRID)
        if cur < prev - MONOTONE_SLACK:
            raise ContractViolationError(
                f"measure decreases near p = {i / MONOTONE_GRID:.4f}; "
                "threshold location needs a monotone function"
            )
        prev = cur
    if not lo_val <= epsilon <= hi_val:
        raise UnreachableLevelError(
            f"level {epsilon} outside measure range [{lo_val}, {hi_val}]"
        )
    lo, hi = 0.0, 1.0
    mid = 0.5
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        val = measure(mid)
        if hi - lo <= BISECT_TOL and abs(val - epsilon) <= BISECT_TOL:
            return mid
        if val < epsilon:
            lo = mid
        else:
            hi = mid
    return mid


@dataclass(frozen=True)
class ThresholdWindow:
    """The p-interval over which a monotone family climbs from eps to 1-eps."""

    epsilon: float
    p_lo: float
    p_hi: float

    @property
    def width(self) -> float:
        return self.p_hi - self.p_lo


def threshold_window(measure: Callable[[float], float], epsilon: float) -> ThresholdWindow:
    if not 0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    p_lo = threshold_point(measure, epsilon)
    p_hi = threshold_point(measure, 1.0 - epsilon)
    return ThresholdWindow(epsilon, p_lo, p_hi)


def fk_q(p: float, epsilon: float, c0: float, n: int) -> float:
    """min{1, p + c0 * log(1/(2 eps)) / log n}, natural logarithms.

    The sharp-threshold bound for symmetric increasing families: if the
    measure exceeds eps at bias p, it exceeds 1-eps at bias q. c0 is a
    universal constant supplied by the caller.
    """
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0,1), got {p}")
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0,1), got {epsilon}")
    if c0 <= 0:
        raise ValueError(f"c0 must be positive, got {c0}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return min(1.0, p + c0 * math.log(1.0 / (2.0 * epsilon)) / math.log(n))


def main_bound_delta(n: int, c0: float) -> float:
    """n^(-1/(8 c0)): the uniform-measure bound the threshold argument
    yields for a symmetric 3-wise intersecting family, given c0."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if c0 <= 0:
        raise ValueError(f"c0 must be positive, got {c0}")
    return n ** (-1.0 / (8.0 * c0))


@dataclass(frozen=True)
class CrossLemmaReport:
    """mu_p(A) + mu_{1-p}(B) <= 1 for cross-intersecting A, B."""

    n: int
    p: float
    applicable: bool
    mu_p_a: BiasedMeasureValue | None = None
    mu_1mp_b: BiasedMeasureValue | None = None
    containment_ok: bool | None = None
    holds: bool | None = None


def verify_cross_lemma(a: SetFamily, b: SetFamily, p) -> CrossLemmaReport:
    """Check the cross-intersecting measure bound, exactly for dyadic p.

    Also verifies the containment driving it: A avoids the complements
    of B's members, i.e. A is contained in P_n minus the complement
    family of B.
    """
    if a.n != b.n:
        raise UniverseMismatchError(f"universes differ: {a.n} vs {b.n}")
    if not 0 <= p <= 1:
        raise ValueError(f"bias must lie in [0,1], got {p}")
    if not cross_intersecting(a, b):
        return CrossLemmaReport(a.n, float(p), applicable=False)
    mu_a = biased_measure(a, p)
    mu_b = biased_measure(b, 1 - Fraction(p) if _dyadic(p) else 1.0 - float(p))
    containment_ok = not (a.member_set() & complement_family(b).member_set())
    if mu_a.exact_numerator is not None and mu_b.exact_numerator is not None:
        lhs = Fraction(mu_a.exact_numerator, mu_a.exact_denominator) + Fraction(
            mu_b.exact_numerator, mu_b.exact_denominator
        )
        holds = lhs <= 1
    else:
        holds = mu_a.value + mu_b.value <= 1.0 + 1e-12
    return CrossLemmaReport(
        a.n, float(p), True, mu_a, mu_b, containment_ok=containment_ok, holds=holds
    )


@dataclass(frozen=True)
class LemmaIntReport:
    """Relates the 1/4-biased measure of the pairwise-intersection family
    to the square of the uniform measure of the family itself."""

    n: int
    delta: float
    counts: tuple[int, ...]
    weighted_sum: int
    mu_quarter: float
    holds: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "holds": self.holds,
            "mu_quarter": self.mu_quarter,
            "weighted_sum": str(self.weighted_sum),
        }


def verify_intersection_lemma(a: SetFamily) -> LemmaIntReport:
    """Exact check that mu_{1/4}(I(A)) >= mu_{1/2}(A)^2.

    Counting ordered pairs: a fixed j-set is the intersection of exactly
    3^(n-j) ordered pairs of subsets, so with N_j the number of j-sets in
    I(A) the weighted sum S = sum_j 3^(n-j) N_j dominates |A|^2, and
    mu_{1/4}(I(A)) = S / 2^(2n) exactly. Both facts are verified on
    integers; holds reports S >= |A|^2.
    """
    n = a.n
    inter = intersection_family(a)
    prof = size_profile(inter)
    weighted_sum = sum(w * 3 ** (n - j) for j, w in enumerate(prof.counts))
    mu_quarter = biased_measure(prof, Fraction(1, 4))
    if mu_quarter.exact_numerator != weighted_sum or mu_quarter.exact_denominator != 1 << (
        2 * n
    ):
        raise AssertionError("exact quarter-measure identity failed")  # unreachable
    size = len(a)
    holds = weighted_sum >= size * size
    delta = biased_measure(a, Fraction(1, 2))
    return LemmaIntReport(
        n=n,
        delta=delta.value,
        counts=prof.counts,
        weighted_sum=weighted_sum,
        mu_quarter=mu_quarter.value,
        holds=holds,
    )


@dataclass(frozen=True)
class ProofChainReport:
    """The measure chain for a 3-wise intersecting family A, evaluated on
    its upset closure A': delta = mu_{1/2}(A'), A' cross-intersects
    I(A'), hence mu_{3/4}(A') <= 1 - delta^2."""

    n: int
    size: int
    delta: float
    cross_ok: bool
    mu_three_quarters: float
    bound_ok: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "size": self.size,
            "delta": self.delta,
            "cross_ok": self.cross_ok,
            "mu_three_quarters": self.mu_three_quarters,
            "bound_ok": self.bound_ok,
        }


def verify_proof_chain(a: SetFamily) -> ProofChainReport:
    """Run the upset / intersection / cross-measure chain on a 3-wise
    intersecting family. All comparisons are exact dyadic arithmetic."""
    if not r_wise_intersecting(a, 3):
        raise NotApplicableError("the proof chain applies to 3-wise intersecting families")
    up = upset_closure(a)
    n = a.n
    size = len(up)
    cross_ok = cross_intersecting(up, intersection_family(up))
    mu34 = biased_measure(up, Fraction(3, 4))
    # mu_{3/4}(A') <= 1 - delta^2 on integers: num <= 4^n - |A'|^2
    bound_ok = mu34.exact_numerator <= (1 << (2 * n)) - size * size
    delta = biased_measure(up, Fraction(1, 2))
    return ProofChainReport(
        n=n,
        size=size,
        delta=delta.value,
        cross_ok=cross_ok,
        mu_three_quarters=mu34.value,
        bound_ok=bound_ok,
    )


def format_measure_curve(measure: Callable[[float], float], grid: int = 101) -> str:
    """CSV curve "p,mu" over an ascending uniform grid, 15 significant digits."""
    lines = ["p,mu"]
    for i in range(grid):
        p = i / (grid - 1) if grid > 1 else 0.0
        lines.append(f"{p:.15g},{measure(p):.15g}")
    return "\n".join(lines) + "\n"
