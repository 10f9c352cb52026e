"""Master-equation dynamics: rate equations, steady states, full evolution.

In the energy eigenbasis the populations close on themselves: they obey a
classical rate equation p' = W p whose generator W is assembled from the
dissipation channels and the Bose occupations of the three reservoirs.
Coherences decay independently, so the steady state is diagonal; a full
density-matrix propagator is kept as an oracle for that claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .channels import DissipationChannel, channels_analytic
from .model import EigenSystem, ParameterError, SystemParams, analytic_eigensystem

# singular values below KERNEL_RTOL * ||W|| count as zero when measuring
# the kernel dimension of the rate matrix
KERNEL_RTOL = 1e-10

ODE_RTOL = 1e-12
ODE_ATOL = 1e-16


class SteadyStateError(ValueError):
    """Steady-state problem is mis-specified for the given parameters."""


class UnderdeterminedError(SteadyStateError):
    """Rate matrix has a multi-dimensional kernel and no rho44_init given."""


class OverdeterminedError(SteadyStateError):
    """rho44_init supplied although the steady state is unique."""


class IntegrationError(RuntimeError):
    """Time integration failed to reach the requested horizon."""


def bose_occupation(omega: float, T: float) -> float:
    """Mean photon number 1 / (exp(omega/T) - 1).

    Evaluated as exp(-x)/(-expm1(-x)) with x = omega/T, which neither
    overflows for x >> 1 (hard underflow to 0 is accepted) nor cancels for
    x << 1.
    """
    if omega <= 0:
        raise ParameterError("bose_occupation requires omega > 0")
    if T <= 0:
        raise ParameterError("bose_occupation requires T > 0")
    x = omega / T
    return math.exp(-x) / (-math.expm1(-x))


def rate_matrix(
    params: SystemParams,
    channels: list[DissipationChannel] | None = None,
    eig: EigenSystem | None = None,
) -> np.ndarray:
    """Population-transfer generator W of the rate equation p' = W p.

    For every channel amplitude a on the pair (i, j) with eps_i < eps_j at
    Bohr frequency w: downward transfer j -> i at gamma (nbar+1) a^2 and
    upward transfer i -> j at gamma nbar a^2.  Diagonal entries close each
    column to zero sum.  At lambda = (1,1,1) every amplitude touching
    state 3 (0-based) is exactly zero, so its row and column vanish
    identically and the dark state decouples.
    """
    if eig is None:
        eig = analytic_eigensystem(params)
    if channels is None:
        channels = channels_analytic(params, eig)
    W = np.zeros((8, 8))
    for ch in channels:
        gamma = params.decay_rate(ch.reservoir)
        T = params.temperature(ch.reservoir)
        for i, j, a in ch.amplitudes:
            w = eig.eigenvalues[j] - eig.eigenvalues[i]
            n = bose_occupation(w, T)
            A2 = a * a
            W[i, j] += gamma * (n + 1.0) * A2
            W[j, i] += gamma * n * A2
    W[np.diag_indices(8)] -= W.sum(axis=0)
    return W


def _null_vector(W: np.ndarray) -> tuple[np.ndarray, int]:
    """Smallest right singular vector and the kernel dimension."""
    _, s, Vt = np.linalg.svd(W)
    nullity = int(np.sum(s < KERNEL_RTOL * s[0])) if s[0] > 0 else W.shape[0]
    return Vt[-1], nullity


def _refine_null_vector(W: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Two rounds of bordered iterative refinement on W p = 0, sum(p) = 1.

    The SVD null vector is accurate to eps * ||W|| / gap; the heat-current
    conservation identity is residual-limited, so the residual is pushed to
    the matvec rounding floor.  Oversized corrections (possible when the
    kernel is nearly degenerate) are discarded.
    """
    n = W.shape[0]
    A = np.vstack([W, np.ones(n)])
    for _ in range(2):
        r = np.concatenate([W @ p, [p.sum() - 1.0]])
        delta, *_ = np.linalg.lstsq(A, r, rcond=None)
        if not np.all(np.isfinite(delta)) or np.max(np.abs(delta)) > 1e-3:
            break
        p = p - delta
    return p


def _clean_populations(p: np.ndarray) -> np.ndarray:
    total = p.sum()
    if total == 0:
        raise SteadyStateError("null vector sums to zero")
    p = p / total
    if p.min() < -1e-10:
        raise SteadyStateError(
            f"null vector has a significantly negative component ({p.min():.3e})"
        )
    p = np.where(p < 0, 0.0, p)
    return p / p.sum()


def steady_state(
    params: SystemParams,
    rho44_init: float | None = None,
    W: np.ndarray | None = None,
) -> np.ndarray:
    """Stationary population vector of the rate equation.

    The kernel of W is extracted from its smallest singular vectors, which
    is robust to the huge rate spread produced by nbar at omega/T of order
    60.  For a unique steady state rho44_init must be absent.  When the
    kernel is two-dimensional (fully common coupling), the conserved dark
    population must be pinned: state 3 (0-based) is removed, the remaining
    7-state kernel is solved and scaled to 1 - rho44_init.
    """
    if W is None:
        W = rate_matrix(params)
    v, nullity = _null_vector(W)
    if nullity == 1:
        if rho44_init is not None:
            raise OverdeterminedError(
                "steady state is unique; rho44_init must not be supplied"
            )
        return _clean_populations(_refine_null_vector(W, _clean_populations(v)))
    if nullity == 2:
        if rho44_init is None:
            raise UnderdeterminedError(
                "rate matrix kernel is two-dimensional (dark state present); "
                "supply rho44_init"
            )
        if not (0.0 <= rho44_init <= 1.0):
            raise ParameterError("rho44_init must lie in [0, 1]")
        keep = [0, 1, 2, 4, 5, 6, 7]
        W_red = W[np.ix_(keep, keep)]
        q, sub_nullity = _null_vector(W_red)
        if sub_nullity != 1:
            raise SteadyStateError(
                f"reduced rate matrix kernel has dimension {sub_nullity}"
            )
        q = _clean_populations(_refine_null_vector(W_red, _clean_populations(q)))
        p = np.zeros(8)
        p[keep] = (1.0 - rho44_init) * q
        p[3] = rho44_init
        return p
    raise SteadyStateError(f"rate matrix kernel has dimension {nullity}")


def _check_populations(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (8,):
        raise ParameterError("population vector must have 8 components")
    if p.min() < -1e-10 or abs(p.sum() - 1.0) > 1e-8:
        raise ParameterError("population vector must be non-negative and sum to 1")
    return p


def evolve_populations(
    params: SystemParams,
    p0: np.ndarray,
    t_grid: np.ndarray,
) -> np.ndarray:
    """Integrate p' = W p adaptively; row n is the state at t_grid[n]."""
    p0 = _check_populations(p0)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or np.any(np.diff(t_grid) <= 0):
        raise ParameterError("t_grid must be a strictly increasing 1-d array")
    if t_grid.size == 1:
        return p0[None, :].copy()
    W = rate_matrix(params)
    sol = solve_ivp(
        lambda t, p: W @ p,
        (t_grid[0], t_grid[-1]),
        p0,
        t_eval=t_grid,
        method="DOP853",
        rtol=ODE_RTOL,
        atol=ODE_ATOL,
    )
    if not sol.success:
        raise IntegrationError(f"population integration failed: {sol.message}")
    return sol.y.T


def _superop(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # rho -> A rho B on row-major flattened rho
    return np.kron(A, B.T)


def _dissipator_term(X: np.ndarray) -> np.ndarray:
    XtX = X.T @ X
    I8 = np.eye(8)
    return _superop(X, X.T) - 0.5 * (_superop(XtX, I8) + _superop(I8, XtX))


def dissipator_superoperator(
    params: SystemParams,
    reservoir: str | None = None,
    eig: EigenSystem | None = None,
) -> np.ndarray:
    """64x64 dissipative generator in the energy eigenbasis (row-major vec).

    Sums gamma (nbar+1) D[S_k] + gamma nbar D[S_k^T] over the channels of
    one reservoir (or all three).  The Hamiltonian commutator is not
    included: in the eigenbasis it only attaches phases to coherences and
    is applied analytically by evolve_density_matrix.
    """
    if eig is None:
        eig = analytic_eigensystem(params)
    D = np.zeros((64, 64))
    for ch in channels_analytic(params, eig):
        if reservoir is not None and ch.reservoir != reservoir:
            continue
        if not ch.amplitudes:
            continue
        gamma = params.decay_rate(ch.reservoir)
        n = bose_occupation(ch.frequency, params.temperature(ch.reservoir))
        D += gamma * (n + 1.0) * _dissipator_term(ch.operator)
        D += gamma * n * _dissipator_term(ch.operator.T)
    return D


def _check_density_matrix(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ParameterError("density matrix must be 8x8")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ParameterError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8 or abs(np.trace(rho).imag) > 1e-10:
        raise ParameterError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho).min() < -1e-10:
        raise ParameterError("density matrix must be positive semidefinite")
    return rho


def evolve_density_matrix(
    params: SystemParams,
    rho0: np.ndarray,
    t_grid: np.ndarray,
) -> np.ndarray:
    """Full master-equation trajectory including coherences (oracle path).

    rho0 and the returned states live in the energy eigenbasis.  The
    generator splits into the dissipator plus the Hamiltonian commutator;
    the latter commutes with the secular dissipator, so the stiff unitary
    phases exp(-i (eps_i - eps_j) t) are attached exactly after adaptively
    integrating the dissipative part alone.
    """
    rho0 = _check_density_matrix(rho0)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or np.any(np.diff(t_grid) <= 0):
        raise ParameterError("t_grid must be a strictly increasing 1-d array")
    eig = analytic_eigensystem(params)
    if t_grid.size == 1:
        traj = rho0[None, :, :].copy()
    else:
        D = dissipator_superoperator(params, eig=eig)
        sol = solve_ivp(
            lambda t, y: D @ y,
            (t_grid[0], t_grid[-1]),
            rho0.reshape(64),
            t_eval=t_grid,
            method="DOP853",
            rtol=ODE_RTOL,
            atol=ODE_ATOL,
        )
        if not sol.success:
            raise IntegrationError(f"density-matrix integration failed: {sol.message}")
        traj = sol.y.T.reshape(-1, 8, 8)
    phase = np.exp(-1j * (eig.eigenvalues[:, None] - eig.eigenvalues[None, :])
                   * (t_grid - t_grid[0])[:, None, None])
    return traj * phase


@dataclass(frozen=True)
class DriveSpec:
    """Resonant two-level drive between a pair of eigenstates.

    Omega is the driving strength, delta_t the pulse duration; the drive is
    treated as instantaneous on dissipative timescales and therefore as a
    pure Rabi rotation of the driven pair.  omega_d records the resonance
    frequency eps_hi - eps_lo for reporting.
    """

    Omega: float
    delta_t: float
    pair: tuple[int, int] = (3, 7)
    omega_d: float | None = None

    def __post_init__(self):
        if not self.Omega > 0:
            raise ParameterError("driving strength Omega must be positive")
        if self.delta_t < 0:
            raise ParameterError("drive duration must be non-negative")
        a, b = self.pair
        if not (0 <= a < 8 and 0 <= b < 8 and a != b):
            raise ParameterError("driven pair must be two distinct indices in 0..7")


def drive_unitary(drive: DriveSpec) -> np.ndarray:
    """8x8 unitary exp(i Omega delta_t (|a><b| + |b><a|)) on the driven pair."""
    a, b = drive.pair
    theta = drive.Omega * drive.delta_t
    U = np.eye(8, dtype=complex)
    U[a, a] = U[b, b] = math.cos(theta)
    U[a, b] = U[b, a] = 1j * math.sin(theta)
    return U


def apply_drive(state: np.ndarray, drive: DriveSpec) -> np.ndarray:
    """Rabi-rotate the driven pair of a population vector or density matrix.

    Populations mix as p_a' = p_a cos^2 + p_b sin^2 (and symmetrically);
    a density matrix is conjugated by the full pair unitary.
    """
    state = np.asarray(state)
    a, b = drive.pair
    if state.ndim == 1:
        p = _check_populations(state).copy()
        c2 = math.cos(drive.Omega * drive.delta_t) ** 2
        s2 = math.sin(drive.Omega * drive.delta_t) ** 2
        pa, pb = p[a], p[b]
        p[a] = pa * c2 + pb * s2
        p[b] = pb * c2 + pa * s2
        return p
    if state.ndim == 2:
        rho = _check_density_matrix(state)
        U = drive_unitary(drive)
        return U @ rho @ U.conj().T
    raise ParameterError("state must be a population vector or a density matrix")


def slowest_relaxation_rate(W: np.ndarray) -> float:
    """Smallest nonzero decay rate |Re eigenvalue| of the rate matrix."""
    ev = np.linalg.eigvals(W)
    rates = np.abs(ev.real)
    rates = rates[rates > KERNEL_RTOL * np.max(np.abs(W))]
    if rates.size == 0:
        raise SteadyStateError("rate matrix has no relaxing mode")
    return float(rates.min())


def relaxation_horizon(W: np.ndarray, decades: float = 18.0) -> float:
    """Integration time after which transients have decayed by ~10^-decades."""
    return decades * math.log(10.0) / slowest_relaxation_rate(W)
