"""Exact coefficient arithmetic for the rational series behind a composition.

Everything here is exact: coefficients are polynomials in theta with Fraction
coefficients, and the two ways of producing a word coefficient (the star
pattern of the series, and the matrix product of a linear representation) are
compared as polynomial identities, never as floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .words import (EMPTY_WORD, GeneralizedComposition, Word, full_word,
                    word_str)

Rational = Fraction


class ThetaPoly:
    """Univariate polynomial in theta with rational coefficients.

    Stored as a map exponent -> nonzero Fraction; the zero polynomial is the
    empty map. Instances are immutable in use: all operations return new
    polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None) -> None:
        self.terms: dict[int, Fraction] = {
            e: c for e, c in (terms or {}).items() if c
        }

    @classmethod
    def zero(cls) -> "ThetaPoly":
        return cls()

    @classmethod
    def one(cls) -> "ThetaPoly":
        return cls({0: Fraction(1)})

    @classmethod
    def theta(cls, exponent: int = 1, coeff: Fraction | int = 1) -> "ThetaPoly":
        if exponent < 0:
            raise ValueError("theta exponent must be >= 0")
        return cls({exponent: Fraction(coeff)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ThetaPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ThetaPoly.theta(0, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ThetaPoly") -> "ThetaPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return ThetaPoly(out)

    def __sub__(self, other: "ThetaPoly") -> "ThetaPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return ThetaPoly(out)

    def __mul__(self, other: "ThetaPoly | int | Fraction") -> "ThetaPoly":
        if isinstance(other, (int, Fraction)):
            return ThetaPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return ThetaPoly(out)

    __rmul__ = __mul__

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_div(self, other: "ThetaPoly") -> "ThetaPoly | None":
        """self / other when both are monomials and the quotient has exponent >= 0."""
        if not (self.is_monomial and other.is_monomial):
            return None
        (e1, c1), = self.terms.items()
        (e2, c2), = other.terms.items()
        if e1 < e2:
            return None
        return ThetaPoly({e1 - e2: c1 / c2})

    def evalf(self, theta: float) -> float:
        return float(sum(float(c) * theta ** e for e, c in self.terms.items()))

    def to_json(self) -> dict[str, str]:
        return {str(e): str(self.terms[e]) for e in sorted(self.terms)}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                chunks.append(str(c))
            else:
                base = "theta" if e == 1 else f"theta^{e}"
                chunks.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"ThetaPoly({self.terms!r})"


TPMatrix = tuple[tuple[ThetaPoly, ...], ...]
TPVector = tuple[ThetaPoly, ...]


@dataclass(frozen=True)
class LinearRepresentation:
    """(mu0, mu1, gamma, lambda) with word coefficient lam * mu(w) * gamma."""

    dim: int
    mu0: TPMatrix
    mu1: TPMatrix
    gamma: TPVector
    lam: TPVector

    def __post_init__(self) -> None:
        for m in (self.mu0, self.mu1):
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError("matrix shape inconsistent with dim")
        if len(self.gamma) != self.dim or len(self.lam) != self.dim:
            raise ValueError("vector shape inconsistent with dim")


def coeff_pattern(g: GeneralizedComposition, w: Word) -> ThetaPoly:
    """Coefficient of w in prefix * (theta^|period| * period-word)^* * suffix.

    Nonzero exactly on the words full_word(g, n); since the period word is
    nonempty, the length of w pins down the only candidate n.
    """
    base = g.prefix_weight + g.suffix_weight
    pw = g.period_weight
    n, rem = divmod(len(w) - base, pw)
    if rem or n < 0:
        return ThetaPoly.zero()
    if w != full_word(g, n):
        return ThetaPoly.zero()
    return ThetaPoly.theta(pw * n)


def _sparse_columns(m: TPMatrix) -> list[list[tuple[int, ThetaPoly]]]:
    """Per-row list of (column, entry) for nonzero entries."""
    return [[(j, entry) for j, entry in enumerate(row) if entry] for row in m]


def _advance(row: dict[int, ThetaPoly],
             cols: list[list[tuple[int, ThetaPoly]]]) -> dict[int, ThetaPoly]:
    out: dict[int, ThetaPoly] = {}
    for i, value in row.items():
        for j, entry in cols[i]:
            prod = value * entry
            if j in out:
                out[j] = out[j] + prod
            else:
                out[j] = prod
    return {j: v for j, v in out.items() if v}


def _contract(row: dict[int, ThetaPoly], gamma: TPVector) -> ThetaPoly:
    total = ThetaPoly.zero()
    for i, value in row.items():
        if gamma[i]:
            total = total + value * gamma[i]
    return total


def coeff_repr(r: LinearRepresentation, w: Word) -> ThetaPoly:
    """lam * mu(w[0]) * ... * mu(w[-1]) * gamma, exactly."""
    cols = (_sparse_columns(r.mu0), _sparse_columns(r.mu1))
    row = {i: v for i, v in enumerate(r.lam) if v}
    for letter in w:
        row = _advance(row, cols[letter])
        if not row:
            return ThetaPoly.zero()
    return _contract(row, r.gamma)


class Mismatch(NamedTuple):
    word: Word
    expected: ThetaPoly  # from the star pattern
    actual: ThetaPoly    # from the representation

    def __str__(self) -> str:
        return (f"{word_str(self.word)}: pattern={self.expected} "
                f"representation={self.actual}")


def repr_equals_pattern(g: GeneralizedComposition, r: LinearRepresentation,
                        max_len: int = 12) -> list[Mismatch]:
    """Compare representation and pattern coefficients on all words up to max_len.

    Walks the binary word tree depth-first carrying the running row vector
    lam * mu(prefix), so each extension costs one sparse vector-matrix product.
    The returned mismatches are ordered by length, then lexicographically with
    x0 < x1; an empty list means full agreement on all 2^(max_len+1) - 1 words.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    cols = (_sparse_columns(r.mu0), _sparse_columns(r.mu1))
    mismatches: list[Mismatch] = []

    def visit(word: Word, row: dict[int, ThetaPoly]) -> None:
        actual = _contract(row, r.gamma)
        expected = coeff_pattern(g, word)
        if actual != expected:
            mismatches.append(Mismatch(word, expected, actual))
        if len(word) == max_len:
            return
        for letter in (0, 1):
            nxt = _advance(row, cols[letter])
            # A dead row stays dead, but the pattern may still expect nonzero
            # coefficients further down, so the subtree cannot be pruned
            # unless the pattern is also exhausted there.
            visit(word + (letter,), nxt)

    visit(EMPTY_WORD, {i: v for i, v in enumerate(r.lam) if v})
    mismatches.sort(key=lambda m: (len(m.word), m.word))
    return mismatches
