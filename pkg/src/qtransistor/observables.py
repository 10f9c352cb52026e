"""Steady-state observables: heat currents, amplification, closed forms.

Sign convention: a positive heat current means energy flowing from the
reservoir into the system, so the three currents sum to zero at steady
state.  Currents carry units of omega_0^2 (the decay rates are
frequencies).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .channels import channels_analytic
from .dynamics import (
    SteadyStateError,
    bose_occupation,
    dissipator_superoperator,
    rate_matrix,
    steady_state,
)
from .model import ParameterError, SystemParams, analytic_eigensystem

STEADY_RESIDUAL_TOL = 1e-8


class DegenerateControlError(ArithmeticError):
    """The control current does not respond to the control temperature."""


class SingularDenominatorError(ArithmeticError):
    """Closed-form population denominator vanished."""


@dataclass(frozen=True)
class HeatCurrentTriple:
    """Steady heat currents into the system from the three reservoirs.

    steady_residual records max|W p| of the population vector the currents
    were computed from; transient states are allowed (is_steady then flags
    the result) and the currents are still meaningful as instantaneous
    flows.
    """

    Q_L: float
    Q_M: float
    Q_R: float
    steady_residual: float = 0.0

    @property
    def total(self) -> float:
        return self.Q_L + self.Q_M + self.Q_R

    @property
    def is_steady(self) -> bool:
        return self.steady_residual < STEADY_RESIDUAL_TOL

    def as_array(self) -> np.ndarray:
        return np.array([self.Q_L, self.Q_M, self.Q_R])


@dataclass(frozen=True)
class AmplificationResult:
    """Finite-difference amplification factors at one operating point.

    alpha_L and alpha_R are central differences of Q_L and Q_R against Q_M
    under a perturbation of the control temperature; dT is the step used
    and convergence_estimate the change observed when halving it.
    """

    alpha_L: float
    alpha_R: float
    control: str
    dT: float
    convergence_estimate: float


def heat_currents(params: SystemParams, p: np.ndarray) -> HeatCurrentTriple:
    """Transition-sum heat currents for populations p.

    Per channel pair (i, j) at Bohr frequency w the reservoir delivers
    w * (upward flux - downward flux); summing a reservoir's eight pairs
    gives its current.
    """
    p = np.asarray(p, dtype=float)
    eig = analytic_eigensystem(params)
    W = rate_matrix(params)
    residual = float(np.max(np.abs(W @ p)))
    Q = {"L": 0.0, "M": 0.0, "R": 0.0}
    for ch in channels_analytic(params, eig):
        gamma = params.decay_rate(ch.reservoir)
        T = params.temperature(ch.reservoir)
        for i, j, a in ch.amplitudes:
            w = eig.eigenvalues[j] - eig.eigenvalues[i]
            n = bose_occupation(w, T)
            A2 = a * a
            Q[ch.reservoir] += w * gamma * A2 * (n * p[i] - (n + 1.0) * p[j])
    return HeatCurrentTriple(Q_L=Q["L"], Q_M=Q["M"], Q_R=Q["R"], steady_residual=residual)


def heat_currents_trace(params: SystemParams, p: np.ndarray) -> HeatCurrentTriple:
    """Heat currents as Tr(H L_nu[rho]) with rho = diag(p); oracle route.

    Built from the full per-reservoir Lindblad superoperator instead of the
    pairwise transition sum; must match heat_currents to solver precision.
    """
    p = np.asarray(p, dtype=float)
    eig = analytic_eigensystem(params)
    W = rate_matrix(params)
    residual = float(np.max(np.abs(W @ p)))
    rho_vec = np.diag(p).reshape(64)
    out = {}
    for nu in ("L", "M", "R"):
        D_nu = dissipator_superoperator(params, reservoir=nu, eig=eig)
        drho = (D_nu @ rho_vec).reshape(8, 8)
        out[nu] = float(np.sum(eig.eigenvalues * np.diag(drho)))
    return HeatCurrentTriple(Q_L=out["L"], Q_M=out["M"], Q_R=out["R"],
                             steady_residual=residual)


def _currents_at(params: SystemParams, rho44_init) -> np.ndarray:
    p = steady_state(params, rho44_init=rho44_init)
    return heat_currents(params, p).as_array()


def amplification_factor(
    params: SystemParams,
    control: str = "M",
    dT: float | None = None,
    rho44_init: float | None = None,
) -> AmplificationResult:
    """Central-difference amplification factors for one control terminal.

    alpha_{L,R} = dQ_{L,R}/dQ_M under a variation of T_control, computed
    from full steady-state re-solves at T +- dT.  A second evaluation at
    dT/2 provides the convergence estimate.  rho44_init pins the dark-state
    population when the fully common coupling makes the steady state
    non-unique.
    """
    if control not in ("L", "M", "R"):
        raise ParameterError("control terminal must be one of 'L', 'M', 'R'")
    field = f"T_{control}"
    T_X = getattr(params, field)
    if dT is None:
        dT = T_X * 1e-3
    if not (0.0 < dT < T_X):
        raise ParameterError("dT must be positive and below the control temperature")

    def central(step: float) -> np.ndarray:
        hi = _currents_at(params.replace(**{field: T_X + step}), rho44_init)
        lo = _currents_at(params.replace(**{field: T_X - step}), rho44_init)
        dQ = hi - lo
        scale = max(np.max(np.abs(hi)), np.max(np.abs(lo)))
        if scale == 0.0 or abs(dQ[1]) < 1e-14 * scale:
            raise DegenerateControlError(
                f"dQ_M/dT_{control} vanishes at this operating point"
            )
        return np.array([dQ[0] / dQ[1], dQ[2] / dQ[1]])

    coarse = central(dT)
    fine = central(0.5 * dT)
    return AmplificationResult(
        alpha_L=float(coarse[0]),
        alpha_R=float(coarse[1]),
        control=control,
        dT=dT,
        convergence_estimate=float(np.max(np.abs(fine - coarse))),
    )


# closed-form reduction: active states (0-based) once the dark state 3 is
# frozen and the two highest doublet states 6, 7 are neglected
_ACTIVE = (0, 1, 2, 4, 5)
_BALANCE_ROWS = (0, 1, 2, 4)


def closed_form_populations(params: SystemParams, rho44: float) -> np.ndarray:
    """Closed-form steady populations for fully common coupling.

    Valid only at lambda = (1, 1, 1).  The two highest states are dropped
    (their occupations are negligible in the operating regime) and the five
    remaining active states are solved in closed form: four balance
    equations plus normalisation to 1 - rho44, evaluated by Cramer's rule
    on the bordered 5x5 system.  Every component is proportional to
    (1 - rho44).
    """
    if not params.fully_common:
        raise ParameterError("closed forms require lambda1 = lambda2 = lambda3 = 1")
    if not (0.0 <= rho44 <= 1.0):
        raise ParameterError("rho44 must lie in [0, 1]")
    W = rate_matrix(params)
    M = np.empty((5, 5))
    for r, a in enumerate(_BALANCE_ROWS):
        for c, b in enumerate(_ACTIVE):
            M[r, c] = W[a, b]
    scale = np.max(np.abs(M[:4]))
    if scale == 0:
        raise SingularDenominatorError("all reduced rates vanish")
    M[:4] /= scale
    M[4, :] = 1.0

    D = float(np.linalg.det(M))
    if abs(D) < 1e-14:
        raise SingularDenominatorError(f"closed-form denominator D = {D:.3e}")
    rhs = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
    x = np.empty(5)
    for c in range(5):
        Mc = M.copy()
        Mc[:, c] = rhs
        x[c] = np.linalg.det(Mc) / D

    p = np.zeros(8)
    p[list(_ACTIVE)] = (1.0 - rho44) * x / x.sum()
    p[3] = rho44
    return p


CLOSED_FORM_VALIDITY_TOL = 1e-3


def closed_form_discrepancy(params: SystemParams, rho44: float) -> tuple[float, float]:
    """(max |closed form - full solve|, rho77 + rho88 of the full solve).

    The second number bounds the validity of the closed form; agreement
    claims are only meaningful while it stays small (the reduction neglects
    exactly those two populations).  Outside that regime a warning is
    issued instead of an error: the numbers are still returned, they just
    no longer support an agreement claim.
    """
    approx = closed_form_populations(params, rho44)
    full = steady_state(params, rho44_init=rho44)
    neglected = float(full[6] + full[7])
    if neglected > CLOSED_FORM_VALIDITY_TOL:
        warnings.warn(
            f"closed-form reduction outside its validity regime: "
            f"rho77 + rho88 = {neglected:.3e} exceeds {CLOSED_FORM_VALIDITY_TOL:g}",
            stacklevel=2,
        )
    return float(np.max(np.abs(approx - full))), neglected


@dataclass(frozen=True)
class LambdaScan:
    """Grid scan of alpha_L over a subset of the common-coupling strengths."""

    axes: tuple[str, ...]
    grids: tuple[np.ndarray, ...]  # one grid per free axis
    alpha_L: np.ndarray            # shape (len(grid),) per axis, NaN = failed
    argmax: tuple[float, ...]      # lambda values of the best grid point
    max_alpha_L: float
    monotonicity: dict[str, str]
    n_failed: int


_LAMBDA_FIELDS = ("lambda1", "lambda2", "lambda3")


def optimize_lambda(
    params_base: SystemParams,
    free: tuple[str, ...] = ("lambda1",),
    resolution: int = 11,
    control: str = "M",
    rho44_init: float | None = None,
) -> LambdaScan:
    """Exhaustive scan of alpha_L over the free lambda axes on [0, 1].

    resolution = 1 degenerates to a single evaluation at the base lambdas
    (a consistency check against amplification_factor).  Points where the
    amplification factor is undefined (degenerate control, or a non-unique
    steady state without rho44_init) are marked NaN and excluded from the
    argmax.  The per-axis monotonicity summary reports 'increasing',
    'decreasing' or 'mixed' from all finite differences along that axis.
    """
    for name in free:
        if name not in _LAMBDA_FIELDS:
            raise ParameterError(f"free axis {name!r} is not a lambda parameter")
    if not free or len(set(free)) != len(free):
        raise ParameterError("free axes must be non-empty and distinct")
    if resolution < 1:
        raise ParameterError("resolution must be at least 1")
    if resolution == 1:
        grids = tuple(np.array([getattr(params_base, name)]) for name in free)
    else:
        grids = tuple(np.linspace(0.0, 1.0, resolution) for _ in free)

    shape = tuple(g.size for g in grids)
    alpha = np.full(shape, np.nan)
    n_failed = 0
    for idx in itertools.product(*(range(n) for n in shape)):
        values = {name: float(grids[ax][i]) for ax, (name, i) in enumerate(zip(free, idx))}
        point = params_base.replace(**values)
        pin = rho44_init if point.fully_common else None
        try:
            res = amplification_factor(point, control=control, rho44_init=pin)
            alpha[idx] = res.alpha_L
        except (DegenerateControlError, SteadyStateError):
            n_failed += 1

    if np.all(np.isnan(alpha)):
        raise DegenerateControlError("no valid grid point in the lambda scan")
    best = np.unravel_index(np.nanargmax(alpha), shape)
    argmax = tuple(float(grids[ax][i]) for ax, i in enumerate(best))

    monotonicity = {}
    for axis, name in enumerate(free):
        d = np.diff(alpha, axis=axis)
        d = d[np.isfinite(d)]
        if d.size == 0:
            monotonicity[name] = "mixed"
        elif np.all(d >= -1e-12):
            monotonicity[name] = "increasing"
        elif np.all(d <= 1e-12):
            monotonicity[name] = "decreasing"
        else:
            monotonicity[name] = "mixed"

    return LambdaScan(
        axes=tuple(free),
        grids=grids,
        alpha_L=alpha,
        argmax=argmax,
        max_alpha_L=float(np.nanmax(alpha)),
        monotonicity=monotonicity,
        n_failed=n_failed,
    )
