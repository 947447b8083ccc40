"""Bilinear state-space realizations of composition generating series.

build_periodic gives the closed form for a purely periodic composition:
N0 is block diagonal with superdiagonal-one blocks, N1 is the complementary
superdiagonal plus a theta^weight feedback entry in the bottom-left corner,
and the state starts at e1.

build_general covers prefix/period/suffix compositions by state closure.
Every state is a series of the form

    sum_w poly[w] * w  +  sum_w tail[w] * (w * cbar),

where cbar is the unique series with cbar = suffix-word + theta^p * period-word
* cbar (p the period weight). Starting from prefix-word * cbar, each state is
left-shifted by both letters; the pieces of the shifted series are drained in
a fixed order: the constant contribution (a word shrinking to the empty word)
goes to a drive column, a bare cbar term closes onto the registered cbar
state with a theta-power gain, a remainder equal to a theta-monomial multiple
of a known state closes onto that state, and anything left becomes a new
state, un-normalized. A nonzero drive column is absorbed afterwards by a
Brockett embedding: one extra constant state feeding the drive entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .words import (EMPTY_WORD, X0, X1, Composition, GeneralizedComposition,
                    Word, parts_to_word, word_str)
from .ratseries import LinearRepresentation, ThetaPoly, TPMatrix


@dataclass(frozen=True)
class SeriesExpr:
    """Canonical form of one realization state.

    poly holds plain word terms, tail holds terms w -> q meaning q * w * cbar.
    Keys are sorted; values are nonzero theta-polynomials.
    """

    poly: tuple[tuple[Word, ThetaPoly], ...]
    tail: tuple[tuple[Word, ThetaPoly], ...]

    @classmethod
    def from_maps(cls, poly: dict[Word, ThetaPoly],
                  tail: dict[Word, ThetaPoly]) -> "SeriesExpr":
        return cls(tuple(sorted((w, q) for w, q in poly.items() if q)),
                   tuple(sorted((w, q) for w, q in tail.items() if q)))

    def __bool__(self) -> bool:
        return bool(self.poly or self.tail)

    @property
    def is_bare_tail(self) -> bool:
        return not self.poly and len(self.tail) == 1 and self.tail[0][0] == EMPTY_WORD

    def monomial_ratio(self, other: "SeriesExpr") -> ThetaPoly | None:
        """beta with self == beta * other, if such a theta-monomial exists."""
        if len(self.poly) != len(other.poly) or len(self.tail) != len(other.tail):
            return None
        beta: ThetaPoly | None = None
        for (mine, theirs) in ((self.poly, other.poly), (self.tail, other.tail)):
            for (w1, q1), (w2, q2) in zip(mine, theirs):
                if w1 != w2:
                    return None
                ratio = q1.monomial_div(q2)
                if ratio is None:
                    return None
                if beta is None:
                    beta = ratio
                elif beta != ratio:
                    return None
        return beta

    def describe(self) -> str:
        chunks = [_term_str(q, word_str(w)) for w, q in self.poly]
        chunks += [_term_str(q, f"{word_str(w)}*cbar" if w else "cbar")
                   for w, q in self.tail]
        return " + ".join(chunks) if chunks else "0"


def _term_str(q: ThetaPoly, body: str) -> str:
    return body if q == ThetaPoly.one() else f"({q})*{body}"


@dataclass(frozen=True)
class Realization:
    """Exact bilinear realization (N0, N1, z0, C) with theta-polynomial entries."""

    dim: int
    N0: TPMatrix
    N1: TPMatrix
    z0: tuple[int, ...]
    C: tuple[int, ...]
    states: tuple[str, ...]
    embedded: bool

    def as_representation(self) -> LinearRepresentation:
        to_tp = lambda v: tuple(ThetaPoly.theta(0, x) if x else ThetaPoly.zero()
                                for x in v)
        return LinearRepresentation(self.dim, self.N0, self.N1,
                                    gamma=to_tp(self.z0), lam=to_tp(self.C))

    def to_json_dict(self) -> dict:
        entries = lambda m: [[e.to_json() for e in row] for row in m]
        return {
            "dim": self.dim,
            "N0": entries(self.N0),
            "N1": entries(self.N1),
            "z0": list(self.z0),
            "C": list(self.C),
            "states": list(self.states),
            "embedded": self.embedded,
        }


@dataclass(frozen=True)
class NumericRealization:
    """Realization with entries evaluated at a fixed real theta."""

    dim: int
    N0: np.ndarray
    N1: np.ndarray
    z0: np.ndarray
    C: np.ndarray


def instantiate(r: Realization, theta: float) -> NumericRealization:
    ev = lambda m: np.array([[e.evalf(theta) for e in row] for row in m])
    return NumericRealization(
        dim=r.dim,
        N0=ev(r.N0),
        N1=ev(r.N1),
        z0=np.array(r.z0, dtype=float),
        C=np.array(r.C, dtype=float),
    )


def build_periodic(s: Composition) -> Realization:
    """Closed-form realization for a purely periodic composition.

    Dimension equals the weight; N0 = diag of superdiagonal-one blocks sized
    by the parts; N1 = (full superdiagonal - N0) + theta^weight at the
    bottom-left; z0 = C^T = e1.
    """
    if not s.admissible:
        raise ValueError(
            f"composition ({s}) is not admissible: first part must be >= 2")
    n = s.weight
    zero = ThetaPoly.zero()
    one = ThetaPoly.one()
    N0 = [[zero] * n for _ in range(n)]
    N1 = [[zero] * n for _ in range(n)]
    pos = 0
    for p in s.parts:
        for j in range(pos, pos + p - 1):
            N0[j][j + 1] = one
        pos += p
    for j in range(n - 1):
        if not N0[j][j + 1]:
            N1[j][j + 1] = one
    N1[n - 1][0] = ThetaPoly.theta(n)
    # state 1 is cbar itself; state j+1 is the residue theta^n * word[j:] * cbar
    word = parts_to_word(s.parts)
    states = ("cbar",) + tuple(
        _term_str(ThetaPoly.theta(n), f"{word_str(word[j:])}*cbar")
        for j in range(1, n))
    z0 = (1,) + (0,) * (n - 1)
    C = (1,) + (0,) * (n - 1)
    return Realization(n, tuple(map(tuple, N0)), tuple(map(tuple, N1)),
                       z0, C, states, embedded=False)


class _Closure:
    """Working state for the general construction."""

    def __init__(self, g: GeneralizedComposition, cap_factor: int) -> None:
        self.eta_b = parts_to_word(g.period)
        self.eta_c = parts_to_word(g.suffix)
        self.suffix_empty = not g.suffix
        self.theta_gain = ThetaPoly.theta(g.period_weight)
        self.cap = cap_factor * (g.prefix_weight + g.period_weight
                                 + g.suffix_weight + 1)
        start = SeriesExpr.from_maps({}, {parts_to_word(g.prefix): ThetaPoly.one()})
        self.states: list[SeriesExpr] = [start]
        self.rows: tuple[list[dict[int, ThetaPoly]], ...] = ([{}], [{}])
        self.drive: tuple[dict[int, ThetaPoly], ...] = ({}, {})
        self.bare_index: int | None = 0 if start.is_bare_tail else None

    def shift(self, expr: SeriesExpr, letter: int) \
            -> tuple[dict[Word, ThetaPoly], dict[Word, ThetaPoly], ThetaPoly]:
        """Left-shift every term of expr by one letter.

        Bare tail terms are first expanded through
        cbar = suffix-word + theta^p * period-word * cbar.
        Returns (poly, tail, constant) where the constant collects words that
        shrank to the empty word.
        """
        poly: dict[Word, ThetaPoly] = {}
        tail: dict[Word, ThetaPoly] = {}
        kappa = ThetaPoly.zero()

        def put(target: dict[Word, ThetaPoly], w: Word, q: ThetaPoly) -> None:
            target[w] = target[w] + q if w in target else q

        def shift_poly_word(w: Word, q: ThetaPoly) -> None:
            nonlocal kappa
            if w and w[0] == letter:
                if len(w) == 1:
                    kappa = kappa + q
                else:
                    put(poly, w[1:], q)

        for w, q in expr.poly:
            shift_poly_word(w, q)
        for w, q in expr.tail:
            if w == EMPTY_WORD:
                shift_poly_word(self.eta_c, q)  # empty suffix word annihilates
                scaled = q * self.theta_gain
                if self.eta_b[0] == letter:
                    put(tail, self.eta_b[1:], scaled)
            elif w[0] == letter:
                put(tail, w[1:], q)
        return poly, tail, kappa

    def resolve(self, row_index: int, letter: int) -> None:
        """Compute the shifted expression of one state and drain it into rows."""
        poly, tail, kappa = self.shift(self.states[row_index], letter)
        row = self.rows[letter][row_index]
        if kappa:
            drive = self.drive[letter]
            drive[row_index] = drive.get(row_index, ThetaPoly.zero()) + kappa

        if EMPTY_WORD in tail and self.bare_index is not None:
            bare_coeff = self.states[self.bare_index].tail[0][1]
            beta = tail[EMPTY_WORD].monomial_div(bare_coeff)
            if beta is not None:
                row[self.bare_index] = row.get(self.bare_index,
                                               ThetaPoly.zero()) + beta
                del tail[EMPTY_WORD]

        remainder = SeriesExpr.from_maps(poly, tail)
        if not remainder:
            return
        for k, known in enumerate(self.states):
            beta = remainder.monomial_ratio(known)
            if beta is not None:
                row[k] = row.get(k, ThetaPoly.zero()) + beta
                return
        self.states.append(remainder)
        if len(self.states) > self.cap:
            raise RuntimeError(
                f"state closure exceeded the safety cap of {self.cap} states; "
                "the construction failed to terminate")
        for letter_rows in self.rows:
            letter_rows.append({})
        new_index = len(self.states) - 1
        row[new_index] = ThetaPoly.one()
        if self.bare_index is None and remainder.is_bare_tail:
            self.bare_index = new_index


def build_general(g: GeneralizedComposition, cap_factor: int = 64) -> Realization:
    """Realization for a composition with one periodic block.

    For an empty prefix and suffix the result coincides entry-for-entry with
    build_periodic on the period. A nonzero drive column (which appears
    exactly when the suffix is nonempty) is absorbed by appending one constant
    state whose N1 column carries the drive entries.

    The initial state vector holds the constant term of each state series:
    1 on the bare cbar state when the suffix is empty (cbar then has constant
    term 1) and 1 on the appended constant state; every other state starts
    at 0, matching the value of its series at t = 0.
    """
    closure = _Closure(g, cap_factor)
    i = 0
    while i < len(closure.states):
        for letter in (X0, X1):
            closure.resolve(i, letter)
        i += 1

    if closure.drive[X0]:
        raise AssertionError("x0 drive column must vanish: words end in x1")

    n = len(closure.states)
    embed = bool(closure.drive[X1])
    dim = n + 1 if embed else n
    zero = ThetaPoly.zero()
    N = [[[zero] * dim for _ in range(dim)] for _ in range(2)]
    for letter in (X0, X1):
        for i, row in enumerate(closure.rows[letter]):
            for j, value in row.items():
                N[letter][i][j] = value
    states = [expr.describe() for expr in closure.states]
    z0 = [0] * dim
    if closure.suffix_empty and closure.bare_index is not None:
        bare_coeff = closure.states[closure.bare_index].tail[0][1]
        if bare_coeff != ThetaPoly.one():
            raise AssertionError("bare cbar state registered with gain != 1")
        z0[closure.bare_index] = 1
    if embed:
        for i, value in closure.drive[X1].items():
            N[X1][i][n] = value
        z0[n] = 1
        states.append("1")
    C = [1] + [0] * (dim - 1)
    return Realization(dim, tuple(map(tuple, N[X0])), tuple(map(tuple, N[X1])),
                       tuple(z0), tuple(C), tuple(states), embedded=embed)
