"""Two-letter alphabet, words, compositions and the composition-word bijection.

A composition (s1,...,sl) of positive integers maps to the word
x0^(s1-1) x1 x0^(s2-1) x1 ... x0^(sl-1) x1 over the alphabet {x0, x1}.
Letters are represented by the ints 0 and 1, words by tuples of ints.
The empty word is () and is distinct from the annihilation result of a
failed left shift, which is None.
"""

from __future__ import annotations

from dataclasses import dataclass

X0: int = 0
X1: int = 1

Word = tuple[int, ...]
EMPTY_WORD: Word = ()


def word_str(w: Word) -> str:
    return "".join(f"x{i}" for i in w) if w else "e"


def left_shift(prefix: Word, w: Word) -> Word | None:
    """Remove `prefix` from the front of `w`; None if `w` does not start with it.

    Satisfies the composition law
    left_shift(p + q, w) == left_shift(q, left_shift(p, w)).
    """
    if len(prefix) > len(w) or w[: len(prefix)] != prefix:
        return None
    return w[len(prefix):]


@dataclass(frozen=True)
class Composition:
    """Finite sequence of positive integer parts.

    Admissible means the first part is >= 2, which guarantees convergence of
    the associated nested sum at t = 1. Non-admissible compositions are
    constructible (they appear as shift residues) but rejected at the CLI.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("composition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"composition parts must be >= 1, got {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def admissible(self) -> bool:
        return self.parts[0] >= 2

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def composition_to_word(s: Composition) -> Word:
    """x0^(s1-1) x1 ... x0^(sl-1) x1; length equals the weight of s."""
    out: list[int] = []
    for p in s.parts:
        out.extend([X0] * (p - 1))
        out.append(X1)
    return tuple(out)


def parts_to_word(parts: tuple[int, ...]) -> Word:
    """Like composition_to_word but total on possibly-empty part tuples."""
    if not parts:
        return EMPTY_WORD
    return composition_to_word(Composition(parts))


def word_to_composition(w: Word) -> Composition | None:
    """Inverse of composition_to_word; None if w is empty or does not end in x1."""
    if not w or w[-1] != X1:
        return None
    parts: list[int] = []
    run = 0
    for letter in w:
        run += 1
        if letter == X1:
            parts.append(run)
            run = 0
    return Composition(tuple(parts))


@dataclass(frozen=True)
class GeneralizedComposition:
    """Composition with one periodic block: (prefix, {period}, suffix).

    The prefix and suffix may be empty; the period may not. Validity requires
    that for n in {0, 1} the concatenated word prefix-word * period-word^n *
    suffix-word is either empty (n = 0 with both prefix and suffix empty) or
    begins with x0 and ends with x1. Checking n in {0, 1} suffices because the
    word shape for larger n repeats the period.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...]
    suffix: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period block must be nonempty")
        for name, parts in (("prefix", self.prefix), ("period", self.period),
                            ("suffix", self.suffix)):
            if any(p < 1 for p in parts):
                raise ValueError(f"{name} parts must be >= 1, got {parts}")
        for n in (0, 1):
            w = full_word(self, n)
            if not w:
                continue  # empty word allowed at n = 0 with empty prefix/suffix
            if w[0] != X0 or w[-1] != X1:
                raise ValueError(
                    f"word for n={n} must begin with x0 and end with x1; "
                    f"got {word_str(w)} from {self}")

    @property
    def prefix_weight(self) -> int:
        return sum(self.prefix)

    @property
    def period_weight(self) -> int:
        return sum(self.period)

    @property
    def suffix_weight(self) -> int:
        return sum(self.suffix)

    @property
    def purely_periodic(self) -> bool:
        return not self.prefix and not self.suffix

    def composition_at(self, n: int) -> Composition | None:
        """The plain composition (prefix, period^n, suffix); None if empty."""
        parts = self.prefix + self.period * n + self.suffix
        return Composition(parts) if parts else None

    def __str__(self) -> str:
        chunks = []
        if self.prefix:
            chunks.append(",".join(map(str, self.prefix)))
        chunks.append("{" + ",".join(map(str, self.period)) + "}")
        if self.suffix:
            chunks.append(",".join(map(str, self.suffix)))
        return ",".join(chunks)


def full_word(g: GeneralizedComposition, n: int) -> Word:
    """prefix-word * period-word^n * suffix-word."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return parts_to_word(g.prefix) + parts_to_word(g.period) * n + parts_to_word(g.suffix)


class CompositionParseError(ValueError):
    """Parse failure with the 0-based column of the offending character."""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"column {column}: {message}")
        self.column = column


def _parse_int_list(text: str, offset: int) -> tuple[int, ...]:
    parts: list[int] = []
    pos = offset
    for chunk in text.split(","):
        stripped = chunk.strip()
        if not stripped:
            raise CompositionParseError("empty part", pos)
        if not stripped.isdigit():
            bad = pos + chunk.index(stripped[0] if stripped[0].isdigit() else stripped[0])
            raise CompositionParseError(f"expected positive integer, got {stripped!r}", bad)
        value = int(stripped)
        if value < 1:
            raise CompositionParseError("parts must be >= 1", pos)
        parts.append(value)
        pos += len(chunk) + 1
    return tuple(parts)


def parse_composition(text: str) -> Composition:
    """Parse a plain comma-separated composition such as ``3,1``."""
    if "{" in text or "}" in text:
        bad = text.index("{") if "{" in text else text.index("}")
        raise CompositionParseError("braces not allowed in a plain composition", bad)
    if not text.strip():
        raise CompositionParseError("empty composition", 0)
    return Composition(_parse_int_list(text, 0))


def parse_generalized(text: str) -> GeneralizedComposition:
    """Parse ``2,1,{2},3`` style strings with exactly one braced periodic block."""
    if text.count("{") != 1 or text.count("}") != 1:
        raise CompositionParseError(
            "exactly one brace-delimited periodic block required", 0)
    lo = text.index("{")
    hi = text.index("}")
    if hi < lo:
        raise CompositionParseError("'}' before '{'", hi)
    head = text[:lo].rstrip()
    body = text[lo + 1:hi]
    tail = text[hi + 1:].lstrip()
    if head:
        if not head.endswith(","):
            raise CompositionParseError("expected ',' before '{'", lo)
        head = head[:-1]
    if tail:
        if not tail.startswith(","):
            raise CompositionParseError("expected ',' after '}'", hi + 1)
        tail = tail[1:]
    if not body.strip():
        raise CompositionParseError("empty periodic block", lo + 1)
    prefix = _parse_int_list(head, 0) if head.strip() else ()
    period = _parse_int_list(body, lo + 1)
    suffix = _parse_int_list(tail, hi + 2) if tail.strip() else ()
    try:
        return GeneralizedComposition(prefix, period, suffix)
    except ValueError as exc:
        raise CompositionParseError(str(exc), 0) from exc
