"""Identity harness: simulate both sides of known/conjectured value identities.

Each identity is a linear combination of generating functions, each term
carrying a theta scale factor applied before the realization is instantiated.
Residuals are taken at the refined terminal point (not a notional t = 1), and
the report carries the summed endpoint gaps so endpoint truncation can be
separated from genuine violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .oracle import TruncationSpec, gen_fun_truncated
from .realize import Realization, build_general, instantiate
from .simulate import EvalResult, IntegratorConfig, evaluate_at, integrate
from .words import GeneralizedComposition

DEFAULT_THETAS = (0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class IdentityTerm:
    coefficient: float
    g: GeneralizedComposition
    theta_scale: float = 1.0


@dataclass(frozen=True)
class IdentitySpec:
    """Linear combination of generating functions expected to vanish at t = 1.

    When `reference` is set the spec is a single-term scalar check instead:
    the residual is terminal value minus reference(theta).
    """

    name: str
    terms: tuple[IdentityTerm, ...]
    reference: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("identity needs at least one term")
        if any(term.coefficient == 0 for term in self.terms):
            raise ValueError("term coefficients must be nonzero")
        if self.reference is None and len(self.terms) < 2:
            raise ValueError("residual identities need at least two terms")


def _sinh_ratio(theta: float) -> float:
    x = math.pi * theta
    return math.sinh(x) / x if x else 1.0


def builtin_identity(name: str) -> IdentitySpec:
    """Built-in identities: zeta2, zeta4_31, hoffman."""
    key = name.replace("-", "_")
    if key == "zeta2":
        return IdentitySpec(
            name="zeta2",
            terms=(IdentityTerm(1.0, GeneralizedComposition((), (2,), ())),),
            reference=_sinh_ratio,
        )
    if key == "zeta4_31":
        return IdentitySpec(
            name="zeta4_31",
            terms=(
                IdentityTerm(+1.0, GeneralizedComposition((), (4,), ())),
                IdentityTerm(-1.0, GeneralizedComposition((), (3, 1), ()),
                             theta_scale=math.sqrt(2.0)),
            ),
        )
    if key == "hoffman":
        return IdentitySpec(
            name="hoffman",
            terms=(
                IdentityTerm(+1.0, GeneralizedComposition((), (2,), (2, 2, 2))),
                IdentityTerm(+2.0, GeneralizedComposition((), (2,), (3, 3))),
                IdentityTerm(-1.0, GeneralizedComposition((2, 1), (2,), (3,))),
            ),
        )
    raise ValueError(f"unknown identity {name!r}; "
                     "known: zeta2, zeta4-31, hoffman")


@dataclass(frozen=True)
class ResidualRow:
    theta: float
    term_values: tuple[float, ...]
    residual: float
    endpoint_gap: float


@dataclass(frozen=True)
class ResidualReport:
    name: str
    rows: tuple[ResidualRow, ...]
    # per theta: shared sample grid and the combined residual curve on it
    curves: tuple[tuple[float, tuple[tuple[float, float], ...]], ...]

    @property
    def max_abs_residual(self) -> float:
        return max(abs(r.residual) for r in self.rows)

    def to_csv(self) -> str:
        k = len(self.rows[0].term_values)
        header = "theta," + ",".join(f"term_{i + 1}" for i in range(k)) \
            + ",residual,endpoint_gap"
        lines = [header]
        for r in self.rows:
            cells = [f"{r.theta:.17g}"] + [f"{v:.17g}" for v in r.term_values]
            cells += [f"{r.residual:.17g}", f"{r.endpoint_gap:.17g}"]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def curve_csv(points: Sequence[tuple[float, float]]) -> str:
    lines = ["t,residual"]
    lines += [f"{t:.17g},{v:.17g}" for t, v in points]
    return "\n".join(lines) + "\n"


def run_identity(spec: IdentitySpec, thetas: Sequence[float] = DEFAULT_THETAS,
                 cfg: IntegratorConfig = IntegratorConfig()) -> ResidualReport:
    """Build each term once, then integrate per theta and combine terminals."""
    realizations: list[Realization] = [build_general(term.g) for term in spec.terms]
    rows: list[ResidualRow] = []
    curves: list[tuple[float, tuple[tuple[float, float], ...]]] = []
    for theta in sorted(thetas):
        results: list[EvalResult] = []
        for term, r in zip(spec.terms, realizations):
            try:
                results.append(integrate(instantiate(r, term.theta_scale * theta), cfg))
            except Exception as exc:
                raise RuntimeError(
                    f"term {term.g} failed at theta = {theta}") from exc
        terminals = tuple(res.terminal_y for res in results)
        combined = sum(term.coefficient * y
                       for term, y in zip(spec.terms, terminals))
        offset = spec.reference(theta) if spec.reference is not None else 0.0
        rows.append(ResidualRow(
            theta=theta,
            term_values=terminals,
            residual=combined - offset,
            endpoint_gap=sum(res.endpoint_gap for res in results),
        ))
        # all terms share one sample grid since they share the config
        ts = [t for t, _ in results[0].samples]
        curve = []
        for j, t in enumerate(ts):
            value = sum(term.coefficient * res.samples[j][1]
                        for term, res in zip(spec.terms, results))
            curve.append((t, value - offset))
        curves.append((theta, tuple(curve)))
    return ResidualReport(spec.name, tuple(rows), tuple(curves))


@dataclass(frozen=True)
class CrossRow:
    theta: float
    simulated: float
    oracle: float

    @property
    def difference(self) -> float:
        return self.simulated - self.oracle


def cross_validate(g: GeneralizedComposition, t: float,
                   thetas: Sequence[float] = DEFAULT_THETAS,
                   cfg: IntegratorConfig = IntegratorConfig(),
                   spec: TruncationSpec = TruncationSpec()) -> list[CrossRow]:
    """ODE value against the nested-sum oracle at one (interior) point."""
    r = build_general(g)
    rows = []
    for theta in thetas:
        if t >= 1.0:
            simulated = integrate(instantiate(r, theta), cfg).terminal_y
        else:
            simulated = evaluate_at(instantiate(r, theta), t, cfg)
        rows.append(CrossRow(theta, simulated,
                             gen_fun_truncated(g, min(t, 1.0), theta, spec)))
    return rows
