from functools import lru_cache

import pytest

from mplgf.words import GeneralizedComposition


def brute_li(parts: tuple[int, ...], t: float, k_max: int) -> float:
    """Reference nested sum by direct recursion; independent of the package
    internals (no prefix-sum trick, no numpy)."""
    if not parts:
        return 1.0
    depth = len(parts)

    @lru_cache(maxsize=None)
    def tail(j: int, upper: int) -> float:
        if j == depth:
            return 1.0
        return sum(k ** -float(parts[j]) * tail(j + 1, k)
                   for k in range(1, upper))

    return sum(t ** k * k ** -float(parts[0]) * tail(1, k)
               for k in range(1, k_max + 1))


def brute_gen_fun(g: GeneralizedComposition, t: float, theta: float,
                  k_max: int, n_max: int) -> float:
    gain = theta ** sum(g.period)
    return sum(brute_li(g.prefix + g.period * n + g.suffix, t, k_max) * gain ** n
               for n in range(n_max + 1))


PAPER_FIXTURES = (
    GeneralizedComposition((), (2,), ()),
    GeneralizedComposition((), (4,), ()),
    GeneralizedComposition((), (3, 1), ()),
    GeneralizedComposition((2, 1), (2,), (3,)),
    GeneralizedComposition((), (2,), (2, 2, 2)),
    GeneralizedComposition((), (2,), (3, 3)),
)

EXTRA_BATTERY = (
    GeneralizedComposition((2,), (3,), ()),       # empty suffix, nonempty prefix
    GeneralizedComposition((2,), (1,), ()),       # period of weight 1
    GeneralizedComposition((), (2,), (2, 2)),     # suffix is a power of the period
    GeneralizedComposition((2,), (2, 2), (2,)),   # prefix word is a suffix of the period word
    GeneralizedComposition((3,), (2,), (1, 2)),
    GeneralizedComposition((2, 2), (3,), (1,)),
)


@pytest.fixture(scope="session")
def paper_fixtures():
    return PAPER_FIXTURES


@pytest.fixture(scope="session")
def battery():
    return PAPER_FIXTURES + EXTRA_BATTERY


def admissible_compositions(max_weight: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(parts: list[int], total: int) -> None:
        if parts:
            out.append(tuple(parts))
        for p in range(1, max_weight - total + 1):
            if not parts and p < 2:
                continue
            rec(parts + [p], total + p)

    rec([], 0)
    return out
