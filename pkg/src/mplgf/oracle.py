"""Independent ground truth: truncated nested sums and exact series checks.

The float-valued oracles (li_truncated, gen_fun_truncated) are brute-force
truncations of the defining nested sums, vectorized over the outer index.
The exact oracles (li_tseries, fuchs_check, shuffle_check) work on truncated
power series in t with Fraction coefficients and admit no tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .words import Composition, GeneralizedComposition

# Relative tail threshold for the adaptive theta-series cutoff: stop once the
# last term is below this fraction of the partial sum 3 times in a row.
SERIES_RTOL = 1e-12


@dataclass(frozen=True)
class TruncationSpec:
    """Cutoffs: k_max for the outer summation index, n_max for the theta series."""

    k_max: int = 10 ** 6
    n_max: int = 200

    def __post_init__(self) -> None:
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")


# k^(-p) arrays, shared across evaluations; keyed by (p, K).
_inv_pow_cache: dict[tuple[int, int], np.ndarray] = {}


def _inv_pow(p: int, k_max: int) -> np.ndarray:
    key = (p, k_max)
    arr = _inv_pow_cache.get(key)
    if arr is None:
        k = np.arange(1, k_max + 1, dtype=np.float64)
        arr = k ** float(-p)
        _inv_pow_cache[key] = arr
    return arr


def _apply_part(p: int, inner: np.ndarray | None, k_max: int) -> np.ndarray:
    """One layer of the nested sum: k^(-p) * sum_{m < k} inner(m)."""
    if inner is None:
        return _inv_pow(p, k_max)
    shifted = np.empty_like(inner)
    shifted[0] = 0.0
    np.cumsum(inner[:-1], out=shifted[1:])
    return _inv_pow(p, k_max) * shifted


def _sum_descending(t: float, outer: np.ndarray) -> float:
    if t == 0.0:
        return 0.0
    if t == 1.0:
        return float(np.sum(outer[::-1]))
    k = np.arange(1, len(outer) + 1, dtype=np.float64)
    with np.errstate(under="ignore"):
        terms = outer * t ** k
    return float(np.sum(terms[::-1]))


def li_truncated(s: Composition, t: float, spec: TruncationSpec = TruncationSpec()) -> float:
    """Nested-sum value of the multiple polylogarithm at t, truncated at k_max.

    Divergent requests fail loudly: t = 1 needs an admissible composition.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if t == 1.0 and not s.admissible:
        raise ValueError(
            f"({s}) diverges at t = 1: first part must be >= 2")
    arr: np.ndarray | None = None
    for p in reversed(s.parts):
        arr = _apply_part(p, arr, spec.k_max)
    assert arr is not None
    return _sum_descending(t, arr)


class _GenFunTerms:
    """Lazily extended sequence n -> Li at (prefix, period^n, suffix), fixed t.

    The inner array after the suffix and n period blocks is kept between
    calls, so successive n values cost one pass of the period parts each.
    """

    def __init__(self, g: GeneralizedComposition, t: float, k_max: int) -> None:
        self.g = g
        self.t = t
        self.k_max = k_max
        self.inner: np.ndarray | None = None
        for p in reversed(g.suffix):
            self.inner = _apply_part(p, self.inner, k_max)
        self.periods_applied = 0
        self.values: list[float] = []

    def li(self, n: int) -> float:
        while len(self.values) <= n:
            while self.periods_applied < len(self.values):
                for p in reversed(self.g.period):
                    self.inner = _apply_part(p, self.inner, self.k_max)
                self.periods_applied += 1
            arr = self.inner
            for p in reversed(self.g.prefix):
                arr = _apply_part(p, arr, self.k_max)
            if arr is None:
                self.values.append(1.0)  # empty composition sums to 1
            else:
                self.values.append(_sum_descending(self.t, arr))
        return self.values[n]


_terms_cache: dict[tuple[GeneralizedComposition, float, int], _GenFunTerms] = {}


def _gen_fun_terms(g: GeneralizedComposition, t: float, k_max: int) -> _GenFunTerms:
    key = (g, t, k_max)
    terms = _terms_cache.get(key)
    if terms is None:
        terms = _GenFunTerms(g, t, k_max)
        # keep the cache small: the arrays are k_max doubles each
        if len(_terms_cache) >= 8:
            _terms_cache.pop(next(iter(_terms_cache)))
        _terms_cache[key] = terms
    return terms


def clear_caches() -> None:
    """Drop memoized power and term arrays (they can hold k_max doubles each)."""
    _inv_pow_cache.clear()
    _terms_cache.clear()


def gen_fun_truncated(g: GeneralizedComposition, t: float, theta: float,
                      spec: TruncationSpec = TruncationSpec()) -> float:
    """Generating-function value sum_n Li_(prefix,period^n,suffix)(t) * theta^(pn).

    p is the period weight. The n cutoff is adaptive up to spec.n_max: the sum
    stops after three consecutive terms below SERIES_RTOL relative to the
    partial sum (the terms decay factorially in n for bounded theta).
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    terms = _gen_fun_terms(g, t, spec.k_max)
    gain = theta ** g.period_weight
    total = 0.0
    factor = 1.0
    small_streak = 0
    for n in range(spec.n_max + 1):
        term = terms.li(n) * factor
        total += term
        factor *= gain
        if abs(term) <= SERIES_RTOL * abs(total):
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    return total


def zeta_closed_form(which: str, n: int) -> float:
    """Closed forms pi^(2n)/(2n+1)! for {2}^n and 2*pi^(4n)/(4n+2)! for {3,1}^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if which == "zeta2n":
        return math.pi ** (2 * n) / math.factorial(2 * n + 1)
    if which == "zeta31n":
        return 2.0 * math.pi ** (4 * n) / math.factorial(4 * n + 2)
    raise ValueError(f"unknown closed form {which!r}")


# --- exact truncated power series in t ---------------------------------------

TSeries = list[Fraction]


def tseries_one(k_max: int) -> TSeries:
    return [Fraction(1)] + [Fraction(0)] * k_max


def li_tseries(parts: tuple[int, ...], k_max: int) -> TSeries:
    """Exact coefficients of the nested sum as a series in t up to t^k_max.

    Accepts an empty part tuple (the constant series 1).
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if not parts:
        return tseries_one(k_max)
    arr: list[Fraction] | None = None
    for p in reversed(parts):
        if arr is None:
            arr = [Fraction(1, k ** p) for k in range(1, k_max + 1)]
        else:
            prefix = Fraction(0)
            nxt = []
            for k, value in enumerate(arr, start=1):
                nxt.append(prefix / k ** p)
                prefix += value
            arr = nxt
    assert arr is not None
    return [Fraction(0)] + arr


def tseries_mul(a: TSeries, b: TSeries) -> TSeries:
    k_max = min(len(a), len(b)) - 1
    out = [Fraction(0)] * (k_max + 1)
    for i, ai in enumerate(a[: k_max + 1]):
        if not ai:
            continue
        for j in range(k_max + 1 - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _t_ddt(f: TSeries) -> TSeries:
    """t * d/dt: multiplies coefficient k by k; degree preserved."""
    return [k * c for k, c in enumerate(f)]


def _one_minus_t_ddt(f: TSeries) -> TSeries:
    """(1 - t) * d/dt: loses one known degree at the top."""
    deriv = [(k + 1) * c for k, c in enumerate(f[1:])]
    if not deriv:
        return []
    return [deriv[0]] + [deriv[k] - deriv[k - 1] for k in range(1, len(deriv))]


def _fuchs_operator(s: Composition, f: TSeries) -> TSeries:
    """Apply the factors ((1-t) d/dt)(t d/dt)^(p-1) for p = s1, ..., sl in order."""
    for p in s.parts:
        for _ in range(p - 1):
            f = _t_ddt(f)
        f = _one_minus_t_ddt(f)
    return f


def fuchs_check(s: Composition, n: int, k_max: int) -> bool:
    """Exact check that the composition's Fuchs operator lowers {s}^(n+1) to {s}^n.

    This is the theta-graded form of the order-|s| annihilating equation for
    the generating function; compared on coefficients t^0 .. t^(k_max - |s|).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if k_max <= s.weight:
        raise ValueError("k_max must exceed the weight of s")
    upper = li_tseries(s.parts * (n + 1), k_max)
    lower = li_tseries(s.parts * n, k_max)
    image = _fuchs_operator(s, upper)
    keep = k_max - s.weight + 1
    return image[:keep] == lower[:keep]


def shuffle_check(k_max: int) -> bool:
    """Exact shuffle identity Li_(2)^2 = 4 Li_(3,1) + 2 Li_(2,2) up to t^k_max."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    li2 = li_tseries((2,), k_max)
    lhs = tseries_mul(li2, li2)
    li31 = li_tseries((3, 1), k_max)
    li22 = li_tseries((2, 2), k_max)
    rhs = [4 * a + 2 * b for a, b in zip(li31, li22)]
    return lhs == rhs
