"""Radial eigenfunctions: evaluation, normalization, overlaps, ODE residual.

Eigenfunctions are evaluated in log space (log magnitude plus tracked sign)
because the envelope r^{k+2-N} e^{-eps r} spans hundreds of orders of
magnitude across a verification grid.  Two independent evaluation paths are
kept: the confluent-hypergeometric form and the Laguerre form in the
dimensionless variable y = 2 eps r.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridResolutionError
from .potentials import PotentialParams
from .spectrum import BoundState, centrifugal_strength
from .specfun import (default_quadrature_order, gauss_laguerre, kummer_poly,
                      laguerre, ln_gamma, radial_norm_constant)


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [r_min, r_max] with r_min > 0."""
    r_min: float
    r_max: float
    count: int

    def __post_init__(self):
        if self.r_min <= 0.0:
            raise ValueError("r_min must be positive (the ODE is singular at 0)")
        if self.r_max <= self.r_min:
            raise ValueError("r_max must exceed r_min")
        if self.count < 3:
            raise ValueError("grid needs at least 3 nodes")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.count - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.count)


@dataclass(frozen=True)
class SampledFunction:
    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.grid.count:
            raise ValueError("one value per grid node required")


# -- evaluation ------------------------------------------------------------

def _ln_bridge(state: BoundState) -> float:
    """ln of n! Gamma(alpha+1) / Gamma(n+alpha+1), the Kummer-Laguerre bridge."""
    n, alpha = state.q.n, state.alpha
    return ln_gamma(n + 1.0) + ln_gamma(alpha + 1.0) - ln_gamma(n + alpha + 1.0)


def ln_eta(state: BoundState, convention: str = "paper") -> float:
    """log of the y-form prefactor eta under a normalization convention.

    "paper":                eta = zeta (2 eps)^{-(k+2-N)} n! G(a+1)/G(n+a+1)
    "y-orthonormal":        unit norm in the measure y^{N-1} dy
    "laguerre-orthonormal": unit norm in the measure y^{N-2} dy
    """
    n, alpha = state.q.n, state.alpha
    p = state.k + 2.0 - state.q.dim
    if convention == "paper":
        return math.log(state.zeta) - p * math.log(2.0 * state.eps) + _ln_bridge(state)
    if convention == "y-orthonormal":
        return -0.5 * (ln_gamma(n + alpha + 1.0) - ln_gamma(n + 1.0)
                       + math.log(2.0 * n + alpha + 1.0))
    if convention == "laguerre-orthonormal":
        return -0.5 * (ln_gamma(n + alpha + 1.0) - ln_gamma(n + 1.0))
    raise ValueError(f"unknown normalization convention {convention!r}")


def _log_eval(state: BoundState, r: np.ndarray, form: str):
    """(log magnitude, sign) of R at r > 0."""
    y = 2.0 * state.eps * r
    p = state.k + 2.0 - state.q.dim
    if form == "kummer":
        poly = np.asarray(kummer_poly(state.q.n, state.alpha + 1.0, y))
        ln_pref = math.log(state.zeta) + p * np.log(r) - state.eps * r
    elif form == "laguerre":
        poly = np.asarray(laguerre(state.q.n, state.alpha, y))
        ln_pref = ln_eta(state, "paper") + p * np.log(y) - 0.5 * y
    else:
        raise ValueError(f"unknown evaluation form {form!r}")
    with np.errstate(divide="ignore"):
        ln_abs = ln_pref + np.log(np.abs(poly))
    return ln_abs, np.sign(poly)


def eval_radial(state: BoundState, r, form: str = "kummer"):
    """Normalized radial eigenfunction R(r); scalar or array argument."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("radius must be positive")
    ln_abs, sign = _log_eval(state, r, form)
    out = sign * np.exp(ln_abs)
    return out if out.ndim else float(out)


def eval_y_form(state: BoundState, y, convention: str = "paper"):
    """y-form eigenfunction eta y^{k+2-N} e^{-y/2} L_n^alpha(y) at y > 0."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0.0):
        raise ValueError("y must be positive")
    p = state.k + 2.0 - state.q.dim
    poly = np.asarray(laguerre(state.q.n, state.alpha, y))
    with np.errstate(divide="ignore"):
        ln_abs = ln_eta(state, convention) + p * np.log(y) - 0.5 * y + np.log(np.abs(poly))
    out = np.sign(poly) * np.exp(ln_abs)
    return out if out.ndim else float(out)


def sample_radial(state: BoundState, grid: RadialGrid,
                  form: str = "kummer") -> SampledFunction:
    return SampledFunction(grid=grid, values=eval_radial(state, grid.nodes(), form))


# -- normalization and overlaps --------------------------------------------

def norm_constant(state: BoundState, paper_literal: bool = False) -> float:
    """Unit-normalization constant zeta.

    The default is the corrected form with the bare factor (2n+alpha+1) in
    the denominator; ``paper_literal`` swaps in Gamma(2n+alpha+2) instead,
    which demonstrably fails norm_check for n >= 1 (diagnostic only).
    """
    return radial_norm_constant(2.0 * state.eps, state.q.n, state.alpha,
                                paper_literal=paper_literal)


def norm_check(state: BoundState, order: int | None = None) -> float:
    """Integral of |R|^2 r^{N-1} dr by generalized Gauss-Laguerre; expect 1.

    Uses the state's own zeta, so a tampered constant scales the result
    quadratically.
    """
    if order is None:
        order = default_quadrature_order(state.q.n)
    rule = gauss_laguerre(order, state.alpha + 1.0)
    two_eps = 2.0 * state.eps
    r = rule.nodes / two_eps
    ln_abs, _ = _log_eval(state, r, "kummer")
    dim = state.q.dim
    ln_g = (2.0 * ln_abs + (dim - 1.0) * np.log(r) - math.log(two_eps)
            - (state.alpha + 1.0) * np.log(rule.nodes) + rule.nodes)
    return float(np.dot(rule.weights, np.exp(ln_g)))


def _require_same_channel(a: BoundState, b: BoundState):
    if (a.q.ell, a.q.dim) != (b.q.ell, b.q.dim):
        raise ValueError("overlap requires matching (ell, N)")
    if abs(a.k - b.k) > 1e-12 * max(1.0, abs(a.k)):
        raise ValueError("overlap requires matching indicial root k")


def overlap(a: BoundState, b: BoundState, space: str = "r") -> float:
    """Overlap of two states of the same channel.

    space="r": the physical integral R_a R_b r^{N-1} dr, each state at its
    own decay rate.  Distinct levels of one Hamiltonian are orthogonal here.
    space="y": both states as functions of the shared dimensionless variable
    y with measure y^{N-1} dy.  This is generally NOT orthogonal; it is
    reported for comparison with the Laguerre-measure picture.
    """
    _require_same_channel(a, b)
    order = default_quadrature_order(max(a.q.n, b.q.n))
    rule = gauss_laguerre(order, a.alpha + 1.0)
    dim = a.q.dim
    if space == "r":
        if a.params != b.params:
            raise ValueError("r-space overlap requires one shared potential")
        s = a.eps + b.eps
        r = rule.nodes / s
        la, sa = _log_eval(a, r, "kummer")
        lb, sb = _log_eval(b, r, "kummer")
        ln_g = (la + lb + (dim - 1.0) * np.log(r) - math.log(s)
                - (a.alpha + 1.0) * np.log(rule.nodes) + rule.nodes)
        return float(np.dot(rule.weights, sa * sb * np.exp(ln_g)))
    if space == "y":
        y = rule.nodes
        va = eval_y_form(a, y)
        vb = eval_y_form(b, y)
        ln_g = (dim - 1.0) * np.log(y) - (a.alpha + 1.0) * np.log(y) + y
        return float(np.dot(rule.weights, va * vb * np.exp(ln_g)))
    raise ValueError(f"unknown overlap space {space!r}")


# -- ODE residual -----------------------------------------------------------

def _interior_grid(grid: RadialGrid) -> RadialGrid:
    nodes = grid.nodes()
    return RadialGrid(r_min=float(nodes[2]), r_max=float(nodes[-3]),
                      count=grid.count - 4)


def _residual_terms(values: np.ndarray, grid: RadialGrid,
                    params: PotentialParams, ell: int, dim: int,
                    energy: float):
    """Five terms of the radial ODE on the interior nodes, 4th-order stencils."""
    if grid.count < 7:
        raise GridResolutionError("need at least 7 nodes for the 4th-order stencil")
    h = grid.spacing
    eps2 = 2.0 * params.mass * (params.C - energy) / params.hbar**2
    if h * h * abs(eps2) > 0.1:
        raise GridResolutionError(
            f"grid spacing {h:.4g} cannot resolve the decay scale")
    v = np.asarray(values, dtype=float)
    r = grid.nodes()[2:-2]
    d1 = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
    d2 = (-v[4:] + 16.0 * v[3:-1] - 30.0 * v[2:-2] + 16.0 * v[1:-3] - v[:-4]) / (12.0 * h * h)
    nu = centrifugal_strength(params, ell, dim)
    beta = -2.0 * params.mass * params.B / params.hbar**2
    terms = (d2,
             (dim - 1.0) / r * d1,
             -nu / r**2 * v[2:-2],
             -eps2 * v[2:-2],
             beta / r * v[2:-2])
    return terms


def ode_residual_samples(values, grid: RadialGrid, params: PotentialParams,
                         ell: int, dim: int, energy: float) -> SampledFunction:
    """Pointwise radial-ODE residual of arbitrary samples at trial energy."""
    terms = _residual_terms(values, grid, params, ell, dim, energy)
    return SampledFunction(grid=_interior_grid(grid), values=sum(terms))


def ode_residual(state: BoundState, grid: RadialGrid) -> SampledFunction:
    """Pointwise residual of the closed-form eigenfunction on the grid."""
    values = eval_radial(state, grid.nodes())
    return ode_residual_samples(values, grid, state.params, state.q.ell,
                                state.q.dim, state.energy)


def ode_residual_relative(state: BoundState, grid: RadialGrid) -> float:
    """max |residual| over the max magnitude of the five ODE terms."""
    values = eval_radial(state, grid.nodes())
    terms = _residual_terms(values, grid, state.params, state.q.ell,
                            state.q.dim, state.energy)
    residual = np.max(np.abs(sum(terms)))
    scale = max(np.max(np.abs(t)) for t in terms)
    return float(residual / scale) if scale > 0.0 else 0.0


# -- qualitative structure ---------------------------------------------------

def node_count(state: BoundState, samples: int = 4001) -> int:
    """Number of interior sign changes of R on (0, inf).

    Sampled in y out to where the envelope has decayed twelve orders below
    its peak; the Laguerre zeros of our states are well separated on that
    scale.
    """
    n, alpha = state.q.n, state.alpha
    y_max = 2.0 * (2.0 * n + alpha + 1.0) + 40.0
    for _ in range(40):
        y = np.linspace(y_max / samples, y_max, samples)
        vals = eval_y_form(state, y)
        peak = np.max(np.abs(vals))
        if abs(vals[-1]) <= 1e-12 * peak:
            break
        y_max *= 1.5
    sign = np.sign(vals)
    sign = sign[sign != 0.0]
    return int(np.count_nonzero(np.diff(sign)))
