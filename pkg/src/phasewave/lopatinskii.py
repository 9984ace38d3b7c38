"""Lopatinskii determinant of the interface problem, its root, and the
projection data (sigma, gamma) attached to that root.

The determinant is evaluated two independent ways: a raw (d+2)x(d+2)
determinant of the frequency column J(v)eta against the boundary images of
the incoming modes, and the closed product formula.  Its positive root in
the elliptic interval is located by bisection with a Newton polish, and the
cofactor functional sigma is again computed both from minors and from the
closed component formulas.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .equilibrium import PhaseBoundary
from .errors import DegeneracyError, DomainError, InconsistencyError, NoRootError
from .modes import (
    BoundaryOperators,
    Frequency,
    ModeSet,
    TangentFrame,
    boundary_operators,
    elliptic_eta0_max,
    normal_modes,
    tangent_frame,
)


def _raw_columns(modes: ModeSet, ops: BoundaryOperators) -> np.ndarray:
    """The d+1 boundary columns H R_j^- in mode order."""
    return (ops.H @ modes.R_minus.T).T


def lopatinskii_det(
    pb: PhaseBoundary,
    eta: Frequency,
    method: str = "closed",
    modes: Optional[ModeSet] = None,
    ops: Optional[BoundaryOperators] = None,
) -> complex:
    """Evaluate the Lopatinskii determinant at a frequency.

    method 'raw' computes det(J(v)eta, H R_1^-, ..., H R_{d+1}^-) by complex
    LU factorization; method 'closed' evaluates the factorized form
    -[rho][u] Upsilon (eta0^2 + u_r^2 |eta_t|^2)
    (u_l u_r a_l a_r + c_l^2 c_r^2 eta0^2).
    """
    if modes is None:
        modes = normal_modes(pb, eta)
    if method == "closed":
        e0 = eta.eta0
        ht2 = eta.ht2
        vl, vr = pb.left, pb.right
        return complex(
            -pb.jump_rho
            * pb.jump_u
            * modes.frame.upsilon
            * (e0 * e0 + vr.u**2 * ht2)
            * (vl.u * vr.u * modes.a_l * modes.a_r + vl.c2 * vr.c2 * e0 * e0)
        )
    if method == "raw":
        if ops is None:
            ops = boundary_operators(pb, eta)
        cols = _raw_columns(modes, ops)
        M = np.empty((pb.d + 2, pb.d + 2), dtype=complex)
        M[:, 0] = ops.Jeta
        M[:, 1:] = cols.T
        return complex(np.linalg.det(M))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True, eq=False)
class SigmaData:
    """The cofactor functional sigma at a root, in row form.

    `sigma_star` is the linear functional X -> det(X, H R_1^-, ...), so that
    sigma itself is its complex conjugate.  The scalar components are stored
    alongside: sigma* = Upsilon (D1, Dt*eta_t^T, Dd1, Dd2).
    """

    sigma_star: np.ndarray
    D1: complex
    Dt: complex
    Dd1: complex
    Dd2: complex
    upsilon: float


@dataclass(frozen=True, eq=False)
class RootData:
    """A Lopatinskii root with the mode and projection data evaluated there."""

    pb: PhaseBoundary
    eta: Frequency
    frame: TangentFrame
    modes: ModeSet
    ops: BoundaryOperators
    sigma: SigmaData
    gamma1: complex
    gamma2: complex

    @property
    def gamma_rest(self) -> Tuple[complex, ...]:
        """The advected-mode coefficients, identically zero."""
        return (0j,) * (self.pb.d - 1)


def _sigma_closed(pb: PhaseBoundary, eta: Frequency, modes: ModeSet) -> SigmaData:
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    ht2 = eta.ht2
    al, ar = modes.a_l, modes.a_r
    ju = pb.jump_u
    ups = modes.frame.upsilon
    w2 = e0 * e0 + vr.u**2 * ht2

    d1_plus_mu_dd2 = -w2 * (
        ju * vl.c2 * vr.c2 * e0 - 1j * vl.u * vr.u * (vr.c2 * al - vl.c2 * ar)
    )
    Dt = -ju * vr.u * (
        al * (vr.u * ar - 1j * vr.c2 * e0) + ar * (vl.u * al - 1j * vl.c2 * e0)
    )
    Dd1 = -1j * w2 * (vr.u * vr.c2 * al - vl.u * vl.c2 * ar)
    Dd2 = (
        ju * e0 * (al * ar + vl.c2 * vr.c2 * ht2)
        + 1j * e0 * e0 * (vr.c2 * al - vl.c2 * ar)
        - 1j
        * ht2
        * (vr.u * (vl.u - 2.0 * vr.u) * vr.c2 * al + vl.u * vr.u * vl.c2 * ar)
    )
    D1 = d1_plus_mu_dd2 - pb.mu * Dd2

    d = pb.d
    sigma_star = np.empty(d + 2, dtype=complex)
    sigma_star[0] = D1
    sigma_star[1:d] = Dt * eta.eta_t
    sigma_star[d] = Dd1
    sigma_star[d + 1] = Dd2
    sigma_star = ups * sigma_star
    return SigmaData(sigma_star=sigma_star, D1=D1, Dt=Dt, Dd1=Dd1, Dd2=Dd2, upsilon=ups)


def _sigma_minors(pb: PhaseBoundary, modes: ModeSet, ops: BoundaryOperators) -> np.ndarray:
    """sigma* from first-column cofactors of the raw determinant."""
    d = pb.d
    cols = _raw_columns(modes, ops)
    if np.linalg.matrix_rank(cols.T) < d + 1:
        raise InconsistencyError("boundary columns H R_j^- are rank deficient")
    M = np.empty((d + 2, d + 2), dtype=complex)
    M[:, 1:] = cols.T
    sigma_star = np.empty(d + 2, dtype=complex)
    for m in range(d + 2):
        M[:, 0] = 0.0
        M[m, 0] = 1.0
        sigma_star[m] = np.linalg.det(M)
    return sigma_star


def sigma_vector(root: RootData, method: str = "closed") -> SigmaData:
    """Recompute sigma at a root, either from minors or from the closed forms."""
    if method == "closed":
        return _sigma_closed(root.pb, root.eta, root.modes)
    if method == "minors":
        sigma_star = _sigma_minors(root.pb, root.modes, root.ops)
        closed = _sigma_closed(root.pb, root.eta, root.modes)
        return SigmaData(
            sigma_star=sigma_star,
            D1=closed.D1,
            Dt=closed.Dt,
            Dd1=closed.Dd1,
            Dd2=closed.Dd2,
            upsilon=closed.upsilon,
        )
    raise ValueError(f"unknown method {method!r}")


def _gamma_pair(pb: PhaseBoundary, eta: Frequency, modes: ModeSet) -> Tuple[complex, complex]:
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    al, ar = modes.a_l, modes.a_r
    jr = pb.jump_rho
    den1 = vr.u * al - 1j * vl.c2 * e0
    den2 = vl.u * ar - 1j * vr.c2 * e0
    if den1 == 0 or den2 == 0 or al == 0 or ar == 0:
        raise DegeneracyError("vanishing denominator in the gamma coefficients")
    g1 = jr * vr.u * e0 / den1
    g2 = -jr * vl.u * e0 / den2
    return complex(g1), complex(g2)


def gamma_alternative_forms(root: RootData) -> Tuple[complex, complex]:
    """The second printed forms of gamma_1, gamma_2 (valid at the root only)."""
    pb, eta, modes = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    al, ar = modes.a_l, modes.a_r
    jr = pb.jump_rho
    g1 = -1j * jr * vr.c2 * e0 * e0 / (al * (vl.u * ar - 1j * vr.c2 * e0))
    g2 = 1j * jr * vl.c2 * e0 * e0 / (ar * (vr.u * al - 1j * vl.c2 * e0))
    return complex(g1), complex(g2)


def gamma_coefficients(root: RootData) -> Tuple[complex, complex]:
    """Coefficients expressing J(v)eta in the span of H R_1^-, H R_2^-.

    Both printed forms are evaluated and cross-checked; the defining linear
    relation J(v)eta + gamma1 H R_1^- + gamma2 H R_2^- = 0 is the caller's
    acceptance test.
    """
    g1, g2 = _gamma_pair(root.pb, root.eta, root.modes)
    h1, h2 = gamma_alternative_forms(root)
    if abs(g1 - h1) > 1e-9 * abs(g1) or abs(g2 - h2) > 1e-9 * abs(g2):
        raise InconsistencyError("the two gamma forms disagree; not at a root?")
    return g1, g2


def _root_function(pb: PhaseBoundary, eta_t: np.ndarray):
    """F(eta0) whose zero in the elliptic interval locates the surface wave."""
    vl, vr = pb.left, pb.right
    ht2 = float(np.atleast_1d(eta_t) @ np.atleast_1d(eta_t))

    scale = max((vl.c2 - vl.u**2) * ht2, (vr.c2 - vr.u**2) * ht2)

    def F(e0: float) -> float:
        rad_l = (vl.c2 - vl.u**2) * ht2 - e0 * e0
        rad_r = (vr.c2 - vr.u**2) * ht2 - e0 * e0
        if rad_l < -1e-12 * scale or rad_r < -1e-12 * scale:
            raise DomainError(f"eta0={e0} outside the elliptic interval")
        a_l = -vl.c * math.sqrt(max(rad_l, 0.0))
        a_r = vr.c * math.sqrt(max(rad_r, 0.0))
        return vl.u * vr.u * a_l * a_r + vl.c2 * vr.c2 * e0 * e0

    return F


def find_root(pb: PhaseBoundary, eta_t: np.ndarray) -> RootData:
    """Locate the positive Lopatinskii root and assemble all data at it.

    Bisection on the elliptic interval (the root function is negative at 0
    and positive at the end where a decay radical vanishes) runs for at most
    80 steps, followed by a 10-step Newton polish with a centered
    finite-difference derivative.  Only the positive root is returned; the
    negative one is its mirror image under conjugation.
    """
    eta_t = np.atleast_1d(np.asarray(eta_t, dtype=float))
    if not float(eta_t @ eta_t) > 0.0:
        raise DegeneracyError("tangential wavevector must be nonzero")
    e0_max = elliptic_eta0_max(pb, eta_t)
    F = _root_function(pb, eta_t)

    grid = np.linspace(0.0, e0_max, 129)
    vals = np.array([F(x) for x in grid])
    zero_hits = np.flatnonzero(vals[1:] == 0.0)
    signs = np.sign(vals)
    changes = [
        i for i in range(len(grid) - 1) if signs[i] != 0 and signs[i] * signs[i + 1] < 0
    ]
    if not changes and zero_hits.size == 0:
        raise NoRootError("no sign change of the root function in the elliptic interval")
    if len(changes) > 1:
        warnings.warn(
            f"{len(changes)} sign changes of the root function; returning the smallest root",
            stacklevel=2,
        )
    if changes and (zero_hits.size == 0 or changes[0] < zero_hits[0]):
        i0 = changes[0]
        lo, hi = float(grid[i0]), float(grid[i0 + 1])
    else:
        lo = hi = float(grid[zero_hits[0] + 1])
    flo = F(lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = F(mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    e0 = 0.5 * (lo + hi)

    scale = pb.left.c2 * pb.right.c2 * e0 * e0
    for _ in range(10):
        h = 1e-7 * e0
        hi_pt = min(e0 + h, np.nextafter(e0_max, 0.0))
        lo_pt = max(e0 - h, 0.0)
        dF = (F(hi_pt) - F(lo_pt)) / (hi_pt - lo_pt)
        if dF == 0.0:
            break
        step = F(e0) / dF
        e0_new = min(max(e0 - step, 0.0), np.nextafter(e0_max, 0.0))
        if abs(F(e0_new)) <= abs(F(e0)):
            e0 = e0_new
        if abs(F(e0)) < 1e-15 * scale:
            break

    eta = Frequency(eta0=float(e0), eta_t=eta_t)
    frame = tangent_frame(eta_t, pb.right.u, float(e0), pb.d)
    modes = normal_modes(pb, eta, frame)
    ops = boundary_operators(pb, eta)
    sigma = _sigma_closed(pb, eta, modes)
    g1, g2 = _gamma_pair(pb, eta, modes)
    return RootData(
        pb=pb, eta=eta, frame=frame, modes=modes, ops=ops, sigma=sigma, gamma1=g1, gamma2=g2
    )


def root_relation_residual(root: RootData) -> float:
    """Relative residual of u_l u_r a_l a_r + c_l^2 c_r^2 eta0^2 at the root."""
    pb, modes, e0 = root.pb, root.modes, root.eta.eta0
    scale = pb.left.c2 * pb.right.c2 * e0 * e0
    return abs(
        pb.left.u * pb.right.u * modes.a_l * modes.a_r + scale
    ) / scale


def gamma_linear_residual(root: RootData) -> float:
    """Relative residual of J(v)eta + gamma1 H R_1^- + gamma2 H R_2^-."""
    ops, modes = root.ops, root.modes
    vec = (
        ops.Jeta
        + root.gamma1 * ops.H @ modes.R_minus[0]
        + root.gamma2 * ops.H @ modes.R_minus[1]
    )
    return float(np.linalg.norm(vec) / np.linalg.norm(ops.Jeta))


def lemma4_residuals(root: RootData) -> np.ndarray:
    """Relative residuals of the six closed products gamma_i * D-component."""
    pb, eta, modes = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    ht2 = eta.ht2
    al, ar = modes.a_l, modes.a_r
    jr, ju = pb.jump_rho, pb.jump_u
    g1, g2 = root.gamma1, root.gamma2
    sig = root.sigma
    w2 = e0 * e0 + vr.u**2 * ht2

    pairs = [
        (g1 * sig.Dt, -jr * ju * vr.u * e0 * (vr.u * ar - 1j * vr.c2 * e0)),
        (g2 * sig.Dt, jr * ju * vr.u * e0 * (vl.u * al - 1j * vl.c2 * e0)),
        (g1 * sig.Dd1, -jr * vr.u * w2 * (vl.u * ar + 1j * vr.c2 * e0)),
        (g2 * sig.Dd1, -jr * vl.u * w2 * (vr.u * al + 1j * vl.c2 * e0)),
        (
            g1 * sig.Dd2,
            jr * w2 * (vr.u * ar + 1j * vr.c2 * e0)
            - jr * ju * vr.u * ht2 * (vr.u * ar - 1j * vr.c2 * e0),
        ),
        (
            g2 * sig.Dd2,
            jr * w2 * (vl.u * al + 1j * vl.c2 * e0)
            + jr * ju * vr.u * ht2 * (vl.u * al - 1j * vl.c2 * e0),
        ),
    ]
    return np.array(
        [abs(lhs - rhs) / max(abs(lhs), abs(rhs)) for lhs, rhs in pairs]
    )


def dd1_factorization_residual(root: RootData) -> float:
    """Both factorizations of eta0 * D_{d+1} must agree at the root."""
    pb, eta, modes = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    w2 = e0 * e0 + vr.u**2 * eta.ht2
    al, ar = modes.a_l, modes.a_r
    lhs = -w2 * (vr.u * al - 1j * vl.c2 * e0) * (vl.u * ar + 1j * vr.c2 * e0)
    rhs = w2 * (vr.u * al + 1j * vl.c2 * e0) * (vl.u * ar - 1j * vr.c2 * e0)
    target = e0 * root.sigma.Dd1
    scale = max(abs(lhs), abs(target))
    return max(abs(lhs - target), abs(rhs - target)) / scale


def sigma_r3_residual(root: RootData) -> float:
    """Residual of D1 + eta0*Dt + 2 u_r Dd1 + (mu + u_r^2) Dd2 = 0."""
    sig = root.sigma
    pb, e0 = root.pb, root.eta.eta0
    val = (
        sig.D1
        + e0 * sig.Dt
        + 2.0 * pb.right.u * sig.Dd1
        + (pb.mu + pb.right.u**2) * sig.Dd2
    )
    scale = max(abs(sig.D1), abs(sig.Dd1), abs(sig.Dd2), abs(sig.Dt) * max(abs(e0), 1.0))
    return abs(val) / scale
