"""Independent finite-difference verification of the closed-form spectrum.

The radial problem is discretized on a uniform grid and reduced to a real
symmetric tridiagonal eigenproblem, solved by Sturm-sequence bisection
(guaranteed brackets and exact eigenvalue counts; see ``_kernels``).

Two discretizations are available:

* ``scheme="radial"`` (default): conservative cell-centered flux form of the
  equation for R itself, symmetrized in the r^{N-1} measure.  The origin is
  a natural boundary (the flux weight r^{N-1} vanishes at the r = 0 face),
  which keeps second-order convergence even for channels whose reduced
  u-equation has the critical -1/(4 r^2) coupling (e.g. ell = 0, N = 2).
* ``scheme="u"``: the textbook 3-point stencil for the reduced equation
  -(hbar^2/2M) u'' + V_eff u = E u with hard walls one spacing outside the
  grid.  Fine for regular channels, measurably non-convergent for the
  critical ones; kept because the stencil itself is part of the module
  contract.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import bisect_lowest, sturm_count
from .potentials import MiePreset, PotentialParams, eval_mie_general, eval_potential
from .spectrum import binding_rate, indicial_root
from .wavefunction import RadialGrid


@dataclass(frozen=True)
class Tridiagonal:
    """Symmetric tridiagonal matrix: main diagonal and one off-diagonal."""
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != len(self.diag) - 1:
            raise ValueError("offdiag must be one shorter than diag")
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.offdiag))):
            raise ValueError("matrix entries must be finite")

    @property
    def size(self) -> int:
        return len(self.diag)


@dataclass(frozen=True)
class OracleConfig:
    grid: RadialGrid
    count: int = 4
    tol: float = 1e-11
    scheme: str = "radial"

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("bisection tolerance must be positive")
        if not 1 <= self.count <= self.grid.count:
            raise ValueError("requested eigenvalue count must be in [1, grid.count]")
        if self.scheme not in ("radial", "u"):
            raise ValueError(f"unknown discretization scheme {self.scheme!r}")


def _units(potential) -> tuple[float, float]:
    if isinstance(potential, PotentialParams):
        return potential.mass, potential.hbar
    return 1.0, 1.0  # MiePreset carries no units: natural units


def potential_value(potential, r):
    """V(r) for either potential representation."""
    if isinstance(potential, PotentialParams):
        return eval_potential(potential, r)
    if isinstance(potential, MiePreset):
        return eval_mie_general(potential, r)
    raise TypeError(f"unsupported potential type {type(potential).__name__}")


def energy_offset(potential) -> float:
    """Potential value at infinity; bound states lie below it."""
    return potential.C if isinstance(potential, PotentialParams) else 0.0


def effective_potential(potential, ell: int, dim: int, r):
    """V(r) + (hbar^2/2M) [l(l+N-2) + (N-1)(N-3)/4] / r^2.

    The barrier term is what reduces the radial equation to
    -(hbar^2/2M) u'' + V_eff u = E u after u = r^{(N-1)/2} R.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("radius must be positive")
    mass, hbar = _units(potential)
    barrier = ell * (ell + dim - 2) + (dim - 1.0) * (dim - 3.0) / 4.0
    out = potential_value(potential, r) + hbar**2 / (2.0 * mass) * barrier / r**2
    return out if out.ndim else float(out)


def build_tridiagonal(config: OracleConfig, potential, ell: int,
                      dim: int) -> Tridiagonal:
    """3-point u-form stencil over the grid nodes.

    diag_i = hbar^2/(M h^2) + V_eff(r_i), offdiag = -hbar^2/(2 M h^2);
    Dirichlet walls sit one spacing outside the grid, so with r_min equal to
    the spacing the left wall is exactly at the origin.
    """
    mass, hbar = _units(potential)
    grid = config.grid
    h = grid.spacing
    r = grid.nodes()
    t = hbar**2 / (2.0 * mass * h * h)
    diag = 2.0 * t + effective_potential(potential, ell, dim, r)
    off = np.full(grid.count - 1, -t)
    return Tridiagonal(diag=np.ascontiguousarray(diag),
                       offdiag=np.ascontiguousarray(off))


def build_tridiagonal_radial(config: OracleConfig, potential, ell: int,
                             dim: int) -> Tridiagonal:
    """Conservative flux discretization of the R-equation, symmetrized.

    Cells are centered on the grid nodes with faces halfway between; the
    flux weight is the measure r^{N-1} evaluated on faces.  Use cell_grid()
    to place the first face exactly at the origin.
    """
    mass, hbar = _units(potential)
    grid = config.grid
    h = grid.spacing
    r = grid.nodes()
    faces = np.concatenate(([r[0] - 0.5 * h], r + 0.5 * h))
    if faces[0] < -1e-12 * h:
        raise ValueError("radial scheme needs r_min >= spacing/2")
    faces[0] = max(faces[0], 0.0)
    w = r ** (dim - 1.0)
    wf = faces ** (dim - 1.0)
    t = hbar**2 / (2.0 * mass * h * h)
    barrier = ell * (ell + dim - 2)
    vc = potential_value(potential, r) + hbar**2 / (2.0 * mass) * barrier / r**2
    diag = t * (wf[1:] + wf[:-1]) / w + vc
    off = -t * wf[1:-1] / np.sqrt(w[:-1] * w[1:])
    return Tridiagonal(diag=np.ascontiguousarray(diag),
                       offdiag=np.ascontiguousarray(off))


_BUILDERS = {"radial": build_tridiagonal_radial, "u": build_tridiagonal}


def cell_grid(r_domain: float, count: int) -> RadialGrid:
    """Cell-centered grid for [0, r_domain]: nodes at (i - 1/2) h."""
    if r_domain <= 0.0 or count < 3:
        raise ValueError("need positive domain and at least 3 cells")
    h = r_domain / count
    return RadialGrid(r_min=0.5 * h, r_max=r_domain - 0.5 * h, count=count)


def default_grid(potential, ell: int, dim: int, n_max: int = 3,
                 refine: float = 1.0) -> RadialGrid:
    """Channel-sized grid: domain covers the slowest decay, spacing resolves
    the fastest.  ``refine`` scales the node count (2.0 halves the spacing).
    """
    if isinstance(potential, PotentialParams):
        k = indicial_root(potential, ell, dim)
        beta = binding_rate(potential)
        if beta <= 0.0:
            raise ValueError("default grid sizing needs an attractive tail (B < 0)")
        eps_min = beta / (2.0 * n_max + 2.0 * k + 3.0 - dim)
        eps_max = beta / (2.0 * k + 3.0 - dim)
        r_domain = 1.5 * (2.0 * n_max + 2.0 * k + 10.0) / eps_min
        h = 0.01 / eps_max
    else:
        mass, hbar = _units(potential)
        kappa = math.sqrt(2.0 * mass * potential.d0) / hbar
        r_domain = potential.r0 * (10.0 + 6.0 * (n_max + 1.0))
        h = 0.01 / kappa
    count = int(math.ceil(r_domain / h * refine))
    count = min(max(count, 1000), 400000)
    return cell_grid(r_domain, count)


def eigen_lowest(tri: Tridiagonal, count: int, tol: float = 1e-11) -> np.ndarray:
    """The ``count`` smallest eigenvalues by Sturm bisection."""
    return bisect_lowest(tri.diag, tri.offdiag, count, tol)


def count_below(tri: Tridiagonal, bound: float) -> int:
    """Exact number of eigenvalues below ``bound`` (Sturm count)."""
    return sturm_count(tri.diag, tri.offdiag, float(bound))


def solve_bound_states(potential, ell: int, dim: int,
                       config: OracleConfig | None = None) -> np.ndarray:
    """Lowest discrete eigenvalues that qualify as bound.

    Eigenvalues are kept only below the potential's value at infinity and
    below the effective potential at the domain edge (anything above is box
    artifact, not physics).
    """
    if config is None:
        config = OracleConfig(grid=default_grid(potential, ell, dim))
    tri = _BUILDERS[config.scheme](config, potential, ell, dim)
    levels = eigen_lowest(tri, config.count, config.tol)
    ceiling = min(energy_offset(potential),
                  float(effective_potential(potential, ell, dim,
                                            config.grid.r_max)))
    return levels[levels < ceiling]


def convergence_study(potential, ell: int, dim: int, level: int,
                      exact_energy: float, r_domain: float,
                      h_sequence, scheme: str = "radial",
                      tol: float = 1e-11) -> dict:
    """Empirical convergence order of one eigenvalue under grid refinement.

    ``h_sequence`` must contain at least three spacings, each half the
    previous.  Error sequences that are non-monotone or already at the
    rounding floor are reported as inconclusive rather than fitted.
    """
    h_sequence = list(h_sequence)
    if len(h_sequence) < 3:
        raise ValueError("need at least three grid spacings")
    for a, b in zip(h_sequence, h_sequence[1:]):
        if abs(a / b - 2.0) > 1e-3:
            raise ValueError("each spacing must halve the previous one")

    errors = []
    for h in h_sequence:
        grid = cell_grid(r_domain, int(round(r_domain / h)))
        config = OracleConfig(grid=grid, count=level + 1, tol=tol, scheme=scheme)
        tri = _BUILDERS[scheme](config, potential, ell, dim)
        value = eigen_lowest(tri, level + 1, tol)[level]
        errors.append(abs(value - exact_energy))

    report = {"spacings": h_sequence, "errors": errors, "level": level,
              "order": None, "status": "inconclusive", "reason": ""}
    floor = 1e-9 * max(1.0, abs(exact_energy))
    if min(errors) <= floor:
        report["reason"] = "errors at rounding floor"
        return report
    if any(b >= a for a, b in zip(errors, errors[1:])):
        report["reason"] = "non-monotone error sequence"
        return report
    orders = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
    report.update(order=sum(orders) / len(orders), status="ok",
                  pairwise_orders=orders)
    return report
