"""Closed-form bound-state machinery.

Chain of derived quantities for V = A/r^2 + B/r + C in N spatial dimensions:

    nu(nu+1) = l(l+N-2) + 2 m A / hbar^2        centrifugal strength
    k        = positive root of k^2 - (N-2) k - nu(nu+1) = 0
    beta     = -2 m B / hbar^2                   (> 0 for binding)
    eps      = beta / (2n + 2k + 3 - N)          inverse decay length
    E        = C - (m / 2 hbar^2) (B / (n + k + (3-N)/2))^2

The k_+ branch is always selected; it controls the small-r power of the
eigenfunction and hence normalizability.
"""

import math
import warnings
from dataclasses import dataclass

from .errors import FallToCenterError, NoBoundStatesError, NotNormalizableError
from .potentials import PotentialParams
from .specfun import radial_norm_constant


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial number n >= 0, orbital number ell >= 0, dimension dim >= 2."""
    n: int
    ell: int
    dim: int

    def __post_init__(self):
        if self.n < 0 or self.ell < 0:
            raise ValueError("quantum numbers n and ell must be >= 0")
        if self.dim < 2:
            raise ValueError("spatial dimension must be >= 2 (hyperspherical "
                             "separation does not apply to N = 1)")


@dataclass(frozen=True)
class BoundState:
    """Derived quantities of one bound level.

    alpha = 2k + 2 - N is the Laguerre order of the eigenfunction; zeta is
    the unit-normalization constant (corrected form).
    """
    params: PotentialParams
    q: QuantumNumbers
    k: float
    beta: float
    eps: float
    energy: float
    alpha: float
    zeta: float


def centrifugal_strength(params: PotentialParams, ell: int, dim: int) -> float:
    """nu(nu+1): angular barrier plus the scaled 1/r^2 coefficient."""
    if dim < 2:
        raise ValueError("spatial dimension must be >= 2")
    return ell * (ell + dim - 2) + 2.0 * params.mass * params.A / params.hbar**2


def indicial_root(params: PotentialParams, ell: int, dim: int) -> float:
    """Positive root k of k^2 - (N-2) k - nu(nu+1) = 0.

    Raises FallToCenterError when the discriminant is negative (over-
    attractive 1/r^2 term) and NotNormalizableError if the root fails
    2k + 3 - N > 0.  A zero discriminant is accepted with a warning; it is
    the borderline fall-to-center case k = (N-2)/2.
    """
    nu = centrifugal_strength(params, ell, dim)
    disc = (dim - 2.0) ** 2 + 4.0 * nu
    if disc < 0.0:
        raise FallToCenterError(
            f"indicial discriminant {disc:.6g} < 0 for ell={ell}, N={dim}: "
            "the attractive 1/r^2 term admits no ground state")
    if disc == 0.0:
        warnings.warn("indicial discriminant is exactly zero: borderline "
                      "fall-to-center, k = (N-2)/2", RuntimeWarning,
                      stacklevel=2)
    k = 0.5 * ((dim - 2.0) + math.sqrt(disc))
    if 2.0 * k + 3.0 - dim <= 0.0:
        # unreachable for the k_+ branch (2k + 3 - N = 1 + sqrt(disc) >= 1);
        # kept as a defensive guard on the contract
        raise NotNormalizableError(
            f"k = {k:.6g} fails the normalizability gate for N = {dim}")
    return k


def binding_rate(params: PotentialParams) -> float:
    """beta = -2 m B / hbar^2; positive exactly when the potential binds."""
    return -2.0 * params.mass * params.B / params.hbar**2


def decay_rate(params: PotentialParams, q: QuantumNumbers) -> float:
    """Inverse decay length eps = beta / (2n + 2k + 3 - N)."""
    beta = binding_rate(params)
    if beta <= 0.0:
        raise NoBoundStatesError(
            f"B = {params.B:.6g} is not attractive; no bound spectrum")
    k = indicial_root(params, q.ell, q.dim)
    return beta / (2.0 * q.n + 2.0 * k + 3.0 - q.dim)


def energy(params: PotentialParams, q: QuantumNumbers) -> float:
    """Bound-state energy E = C - (m / 2 hbar^2) (B / (n + k + (3-N)/2))^2."""
    if binding_rate(params) <= 0.0:
        raise NoBoundStatesError(
            f"B = {params.B:.6g} is not attractive; no bound spectrum")
    k = indicial_root(params, q.ell, q.dim)
    denom = q.n + k + 0.5 * (3.0 - q.dim)
    return params.C - 0.5 * params.mass / params.hbar**2 * (params.B / denom) ** 2


def bound_state(params: PotentialParams, q: QuantumNumbers) -> BoundState:
    """Assemble the full derived tuple for one level, gates applied."""
    beta = binding_rate(params)
    if beta <= 0.0:
        raise NoBoundStatesError(
            f"B = {params.B:.6g} is not attractive; no bound spectrum")
    k = indicial_root(params, q.ell, q.dim)
    eps = beta / (2.0 * q.n + 2.0 * k + 3.0 - q.dim)
    alpha = 2.0 * k + 2.0 - q.dim
    zeta = radial_norm_constant(2.0 * eps, q.n, alpha)
    e = params.C - params.hbar**2 * eps**2 / (2.0 * params.mass)
    return BoundState(params=params, q=q, k=k, beta=beta, eps=eps,
                      energy=e, alpha=alpha, zeta=zeta)


_STATUS = {
    FallToCenterError: "fall-to-center",
    NotNormalizableError: "not-normalizable",
    NoBoundStatesError: "no-bound-states",
}


@dataclass(frozen=True)
class SpectrumRow:
    """One (n, ell, N) channel entry; invalid channels carry their error kind
    in ``status`` instead of being dropped."""
    q: QuantumNumbers
    k: float | None
    eps: float | None
    energy: float | None
    status: str
    detail: str = ""


def spectrum_table(params: PotentialParams, n_max: int, ell_max: int,
                   dim: int) -> list[SpectrumRow]:
    """Rows for every n <= n_max, ell <= ell_max at fixed dimension."""
    if n_max < 0 or ell_max < 0:
        raise ValueError("n_max and ell_max must be >= 0")
    rows = []
    for ell in range(ell_max + 1):
        for n in range(n_max + 1):
            q = QuantumNumbers(n=n, ell=ell, dim=dim)
            try:
                state = bound_state(params, q)
            except (FallToCenterError, NotNormalizableError,
                    NoBoundStatesError) as exc:
                rows.append(SpectrumRow(q=q, k=None, eps=None, energy=None,
                                        status=_STATUS[type(exc)],
                                        detail=str(exc)))
            else:
                rows.append(SpectrumRow(q=q, k=state.k, eps=state.eps,
                                        energy=state.energy, status="ok"))
    return rows
