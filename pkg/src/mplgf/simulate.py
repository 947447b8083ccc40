"""Numerical integration of the bilinear system dz = N0 z dt/t + N1 z dt/(1-t).

Both endpoint singularities are handled explicitly: the run starts at
eps_start with a first-order regularized state (valid because N0 z0 = 0), and
it stops at 1 - eps_end followed by `halvings` geometric refinement segments
toward 1. The gap between the output at 1 - eps_end and at the final point is
reported as an endpoint error heuristic instead of extrapolating through the
singularity.

The stepper is an embedded Dormand-Prince 5(4) pair with PI step-size control
and the FSAL evaluation reused across accepted steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .realize import NumericRealization, Realization, instantiate

# Dormand-Prince 5(4) tableau.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# Difference between the 5th and embedded 4th order weights.
_ERR = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_SAFETY = 0.9
_PI_ALPHA = 0.7 / 5.0
_PI_BETA = 0.4 / 5.0
_FAC_MIN = 0.2
_FAC_MAX = 10.0


@dataclass(frozen=True)
class IntegratorConfig:
    eps_start: float = 1e-6
    eps_end: float = 1e-6
    rtol: float = 1e-9
    atol: float = 1e-12
    min_step: float = 1e-10
    max_step: float = 1e-2
    halvings: int = 2
    sample_count: int = 200

    def __post_init__(self) -> None:
        if not 0.0 < self.eps_start < 1.0 - self.eps_end < 1.0:
            raise ValueError("need 0 < eps_start < 1 - eps_end < 1")
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise ValueError("tolerances must be positive")
        if not 0.0 < self.min_step < self.max_step:
            raise ValueError("need 0 < min_step < max_step")
        if self.halvings < 0:
            raise ValueError("halvings must be >= 0")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")

    @property
    def terminal_t(self) -> float:
        return 1.0 - self.eps_end / 2 ** self.halvings


@dataclass(frozen=True)
class EvalResult:
    samples: tuple[tuple[float, float], ...]
    terminal_t: float
    terminal_y: float
    endpoint_gap: float
    steps_accepted: int
    steps_rejected: int


class IntegrationError(RuntimeError):
    """Step-size underflow or non-finite state; carries the last good point."""

    def __init__(self, message: str, t: float, z: np.ndarray) -> None:
        super().__init__(f"{message} (last good t = {t:.17g})")
        self.t = t
        self.z = z


def vector_field(nr: NumericRealization, t: float, z: np.ndarray) -> np.ndarray:
    """N0 z / t + N1 z / (1 - t); defined only on 0 < t < 1."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    return nr.N0 @ z / t + nr.N1 @ z / (1.0 - t)


def _initial_state(nr: NumericRealization, eps_start: float) -> np.ndarray:
    n0z0 = nr.N0 @ nr.z0
    if np.any(n0z0 != 0.0):
        raise ValueError("realization violates N0 z0 = 0; cannot start at t = 0")
    # The solution is analytic at 0 (N0 z0 = 0 kills the 1/t pole and N0 is
    # nilpotent): z(t) = z0 + t a + O(t^2) with (I - N0) a = N1 z0; the N0 a
    # feedback enters at the same order as the N1 drive and cannot be dropped.
    a = np.linalg.solve(np.eye(nr.dim) - nr.N0, nr.N1 @ nr.z0)
    return nr.z0 + eps_start * a


class _Stepper:
    def __init__(self, f: Callable[[float, np.ndarray], np.ndarray],
                 t: float, z: np.ndarray, cfg: IntegratorConfig) -> None:
        self.f = f
        self.t = t
        self.z = z
        self.cfg = cfg
        self.k1 = f(t, z)
        self.h = min(cfg.max_step, 1e-3 * max(t, 1e-6))
        self.err_prev = 1e-4
        self.accepted = 0
        self.rejected = 0

    def _attempt(self, h: float) -> tuple[np.ndarray, np.ndarray, float]:
        k = [self.k1]
        zs = self.z
        for i in range(1, 7):
            zi = zs + h * sum(a * kj for a, kj in zip(_A[i], k))
            k.append(self.f(self.t + _C[i] * h, zi))
        z_new = zi  # stage 7 input equals the 5th-order solution (FSAL)
        err_vec = h * sum(e * kj for e, kj in zip(_ERR, k))
        scale = self.cfg.atol + self.cfg.rtol * np.maximum(np.abs(zs), np.abs(z_new))
        err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
        return z_new, k[6], err

    def advance_to(self, t_target: float) -> None:
        """Integrate from the current point exactly to t_target."""
        cfg = self.cfg
        while self.t < t_target:
            remaining = t_target - self.t
            h = min(self.h, remaining)
            clipped = h < self.h
            z_new, k_last, err = self._attempt(h)
            if not np.all(np.isfinite(z_new)):
                raise IntegrationError("state became non-finite", self.t, self.z)
            if err <= 1.0:
                self.t = t_target if h == remaining else self.t + h
                self.z = z_new
                self.k1 = k_last
                self.accepted += 1
                factor = _SAFETY * (err + 1e-16) ** -_PI_ALPHA \
                    * self.err_prev ** _PI_BETA
                self.err_prev = max(err, 1e-4)
            else:
                self.rejected += 1
                factor = max(_FAC_MIN, _SAFETY * (err + 1e-16) ** -_PI_ALPHA)
            if not clipped or err > 1.0:
                self.h = min(cfg.max_step,
                             h * min(_FAC_MAX, max(_FAC_MIN, factor)))
            if self.h < cfg.min_step and t_target - self.t > cfg.min_step:
                raise IntegrationError(
                    f"step size {self.h:.3e} underflowed min_step", self.t, self.z)


def _sample_grid(cfg: IntegratorConfig) -> list[float]:
    """Uniform samples up to 1 - eps_end plus geometric endpoint refinement."""
    tail_n = min(cfg.sample_count // 4, 50) if cfg.halvings > 0 else 0
    main_n = cfg.sample_count - tail_n
    grid = list(np.linspace(cfg.eps_start, 1.0 - cfg.eps_end, max(main_n, 2)))
    if cfg.halvings > 0:
        exps = np.linspace(0.0, cfg.halvings, tail_n + 1)[1:]
        grid.extend(1.0 - cfg.eps_end / 2.0 ** e for e in exps)
    # segment boundaries are sample points so the endpoint gap is observable
    grid.extend(1.0 - cfg.eps_end / 2 ** j for j in range(cfg.halvings + 1))
    return sorted(set(grid))


def integrate(nr: NumericRealization, cfg: IntegratorConfig = IntegratorConfig()) -> EvalResult:
    """Integrate over (0, 1) with endpoint refinement; sample y = C z."""
    z = _initial_state(nr, cfg.eps_start)
    stepper = _Stepper(lambda t, s: vector_field(nr, t, s), cfg.eps_start, z, cfg)
    samples: list[tuple[float, float]] = [(cfg.eps_start, float(nr.C @ z))]
    y_at: dict[float, float] = {}
    for t_target in _sample_grid(cfg):
        if t_target <= cfg.eps_start:
            continue
        stepper.advance_to(t_target)
        y = float(nr.C @ stepper.z)
        samples.append((t_target, y))
        y_at[t_target] = y
    terminal_t = cfg.terminal_t
    terminal_y = y_at[terminal_t]
    endpoint_gap = abs(y_at[1.0 - cfg.eps_end] - terminal_y)
    return EvalResult(
        samples=tuple(samples),
        terminal_t=terminal_t,
        terminal_y=terminal_y,
        endpoint_gap=endpoint_gap,
        steps_accepted=stepper.accepted,
        steps_rejected=stepper.rejected,
    )


def evaluate_at(nr: NumericRealization, t: float,
                cfg: IntegratorConfig = IntegratorConfig()) -> float:
    """y(t) at one interior point, integrating from eps_start only."""
    if not cfg.eps_start <= t < 1.0:
        raise ValueError(f"t must lie in [eps_start, 1), got {t}")
    z = _initial_state(nr, cfg.eps_start)
    if t == cfg.eps_start:
        return float(nr.C @ z)
    stepper = _Stepper(lambda u, s: vector_field(nr, u, s), cfg.eps_start, z, cfg)
    stepper.advance_to(t)
    return float(nr.C @ stepper.z)


def fixed_step_solve(nr: NumericRealization, t0: float, z0: np.ndarray,
                     t1: float, n_steps: int) -> np.ndarray:
    """Fixed-step 5th-order solution on a regular subinterval (for order checks)."""
    h = (t1 - t0) / n_steps
    t, z = t0, z0.astype(float)
    for _ in range(n_steps):
        k = [vector_field(nr, t, z)]
        for i in range(1, 7):
            zi = z + h * sum(a * kj for a, kj in zip(_A[i], k))
            k.append(vector_field(nr, t + _C[i] * h, zi))
        z = zi
        t += h
    return z


def sweep_theta(r: Realization, thetas: Sequence[float],
                cfg: IntegratorConfig = IntegratorConfig(),
                jobs: int = 1) -> list[EvalResult]:
    """One integration per theta, order preserved; optionally threaded."""
    def run(theta: float) -> EvalResult:
        try:
            return integrate(instantiate(r, theta), cfg)
        except (IntegrationError, ValueError) as exc:
            raise RuntimeError(f"integration failed at theta = {theta}") from exc

    if jobs > 1 and len(thetas) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, thetas))
    return [run(theta) for theta in thetas]
