"""Frequency-dependent linear algebra of the linearized interface problem.

Conventions.  States are written in the conservative variables
v = (rho, j_t, j_n): density, the d-1 tangential momentum components, and the
normal momentum.  A temporal frequency eta0 and a tangential wavevector eta_t
(length d-1, nonzero) select normal modes e^{beta z} on the half line z >= 0,
both sides of the interface having been folded onto the same half line.  On
the folded (left) side the normal flux enters with a reversed sign, so the
mode matrices differ between the sides:

    left:   i*(eta0*I + sum_k eta_t[k]*A^k) - beta*A^d
    right:  i*(eta0*I + sum_k eta_t[k]*A^k) + beta*A^d

Modes are indexed 1..d+1 per family (+/-).  Index 1 is the acoustic mode of
the left state, index 2 the acoustic mode of the right state; indices 3..d+1
are the advected modes (on the left for the + family, on the right for the -
family).  Full vectors have 2(d+1) components, left block first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .equilibrium import FluidState, PhaseBoundary
from .errors import DegeneracyError, DomainError, ParameterError


@dataclass(frozen=True, eq=False)
class Frequency:
    """Temporal frequency and tangential wavevector (eta0, eta_t)."""

    eta0: float
    eta_t: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta_t", np.atleast_1d(np.asarray(self.eta_t, dtype=float)))
        if self.eta_t.ndim != 1:
            raise ParameterError("eta_t must be a vector")
        if not float(self.eta_t @ self.eta_t) > 0.0:
            raise DegeneracyError("tangential wavevector must be nonzero")

    @property
    def ht2(self) -> float:
        """Squared magnitude of the tangential wavevector."""
        return float(self.eta_t @ self.eta_t)


def elliptic_eta0_max(pb: PhaseBoundary, eta_t: np.ndarray) -> float:
    """Upper end of the interval of eta0 where both decay radicals are real."""
    eta_t = np.atleast_1d(np.asarray(eta_t, dtype=float))
    ht = math.sqrt(float(eta_t @ eta_t))
    return ht * math.sqrt(
        min(pb.left.c2 - pb.left.u**2, pb.right.c2 - pb.right.u**2)
    )


def is_elliptic(pb: PhaseBoundary, eta: Frequency) -> bool:
    """Whether (eta0, eta_t) lies strictly inside the elliptic region."""
    return abs(eta.eta0) < elliptic_eta0_max(pb, eta.eta_t)


@dataclass(frozen=True, eq=False)
class TangentFrame:
    """Tangential basis attached to eta_t, with its determinant and Upsilon.

    Column i of `e` is the basis vector e_{i+1}; the first column is eta_t
    itself and the remaining columns are an orthonormal basis of its
    orthogonal complement.  `e_dual` holds the vectors dual to columns
    2..d-1 inside that complement (they coincide with them for an
    orthonormal completion).  Upsilon = (-u_r*eta0)^(d-2) * u_r * det(e).
    """

    e: np.ndarray
    e_dual: np.ndarray
    det_e: float
    upsilon: float


def _complement_basis(eta_t: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of the hyperplane orthogonal to eta_t.

    A Householder reflection maps the largest-magnitude coordinate axis onto
    the unit tangential direction; the remaining reflected axes, taken in
    increasing index order and re-orthonormalized, span the complement.
    """
    m = eta_t.size
    if m == 1:
        return np.zeros((1, 0))
    n = eta_t / np.linalg.norm(eta_t)
    p = int(np.argmax(np.abs(n)))
    s = 1.0 if n[p] >= 0.0 else -1.0
    v = n.copy()
    v[p] += s
    H = np.eye(m) - 2.0 * np.outer(v, v) / float(v @ v)
    cols = [H[:, j] for j in range(m) if j != p]
    # Modified Gram-Schmidt pass; the reflected axes are already orthonormal
    # to rounding, this just tightens the duality identities.
    basis = []
    for w in cols:
        w = w - n * float(n @ w)
        for b in basis:
            w = w - b * float(b @ w)
        basis.append(w / np.linalg.norm(w))
    return np.column_stack(basis)


def tangent_frame(eta_t: np.ndarray, u_r: float, eta0: float, d: int) -> TangentFrame:
    """Build the tangential frame and the scalar Upsilon for a frequency."""
    eta_t = np.atleast_1d(np.asarray(eta_t, dtype=float))
    if eta_t.size != d - 1:
        raise ParameterError(f"eta_t must have length d-1={d - 1}, got {eta_t.size}")
    if not float(eta_t @ eta_t) > 0.0:
        raise DegeneracyError("tangential wavevector must be nonzero")
    comp = _complement_basis(eta_t)
    e = np.column_stack([eta_t.reshape(-1, 1), comp]) if comp.size else eta_t.reshape(-1, 1)
    det_e = float(np.linalg.det(e))
    upsilon = (-u_r * eta0) ** (d - 2) * u_r * det_e
    return TangentFrame(e=e, e_dual=comp, det_e=det_e, upsilon=upsilon)


def flux_jacobians(state: FluidState, d: int) -> np.ndarray:
    """Jacobians A^1..A^d of the isothermal Euler fluxes at the reference state.

    Returned as an array of shape (d, d+1, d+1); the last entry is the normal
    flux Jacobian A^d.  Evaluated at v = (rho, 0, rho*u).
    """
    if d < 2:
        raise ParameterError(f"spatial dimension must be at least 2, got {d}")
    n = d + 1
    A = np.zeros((d, n, n))
    u, c2 = state.u, state.c2
    for k in range(d - 1):
        A[k, 0, 1 + k] = 1.0
        A[k, 1 + k, 0] = c2
        A[k, n - 1, 1 + k] = u
    A[d - 1, 0, n - 1] = 1.0
    for k in range(d - 1):
        A[d - 1, 1 + k, 1 + k] = u
    A[d - 1, n - 1, 0] = c2 - u * u
    A[d - 1, n - 1, n - 1] = 2.0 * u
    return A


def tangential_symbol(state: FluidState, eta: Frequency) -> np.ndarray:
    """The matrix eta0*I + sum_k eta_t[k] * A^k at the given state."""
    d = eta.eta_t.size + 1
    A = flux_jacobians(state, d)
    S = eta.eta0 * np.eye(d + 1)
    for k in range(d - 1):
        S = S + eta.eta_t[k] * A[k]
    return S


def mode_matrix(state: FluidState, eta: Frequency, beta: complex, side: str) -> np.ndarray:
    """Symbol of the interior operator annihilating a mode e^{beta z}.

    side 'l' uses the folded sign (-beta*A^d), side 'r' the plain one.
    """
    d = eta.eta_t.size + 1
    Ad = flux_jacobians(state, d)[d - 1]
    S = tangential_symbol(state, eta)
    if side == "l":
        return 1j * S - beta * Ad
    if side == "r":
        return 1j * S + beta * Ad
    raise ParameterError(f"side must be 'l' or 'r', got {side!r}")


def dg0(state: FluidState, mu: float, d: int) -> np.ndarray:
    """Gradient of the entropy (energy) of isothermal Euler at the reference.

    In conservative variables it is (mu - u^2, 0, ..., 0, u); only the total
    enthalpy mu of the configuration enters.
    """
    out = np.zeros(d + 1)
    out[0] = mu - state.u**2
    out[-1] = state.u
    return out


@dataclass(frozen=True, eq=False)
class ModeSet:
    """All eigenmodes and eigenvectors of a configuration at one frequency.

    Arrays are indexed by mode number j-1 (j = 1..d+1).  `r_minus[j]` and
    `l_minus[j]` are the small one-sided vectors (length d+1), `R_minus[j]`
    and `L_minus[j]` their embeddings into the full 2(d+1) space, and
    `side_minus[j]` records which block ('l' or 'r') carries the mode.
    """

    pb: PhaseBoundary
    eta: Frequency
    frame: TangentFrame
    a_l: float
    a_r: float
    beta_minus: np.ndarray
    beta_plus: np.ndarray
    r_minus: np.ndarray
    r_plus: np.ndarray
    l_minus: np.ndarray
    l_plus: np.ndarray
    R_minus: np.ndarray
    R_plus: np.ndarray
    L_minus: np.ndarray
    L_plus: np.ndarray
    side_minus: Tuple[str, ...]
    side_plus: Tuple[str, ...]

    @property
    def d(self) -> int:
        return self.pb.d


def _embed(small: np.ndarray, side: str, d: int) -> np.ndarray:
    full = np.zeros(2 * (d + 1), dtype=complex)
    if side == "l":
        full[: d + 1] = small
    else:
        full[d + 1 :] = small
    return full


def normal_modes(pb: PhaseBoundary, eta: Frequency, frame: Optional[TangentFrame] = None) -> ModeSet:
    """Decay rates, eigenmodes, and right/left eigenvectors at a frequency.

    Requires the frequency to lie in the elliptic region of both states so
    that the decay radicals a_l < 0 < a_r are real.  For d >= 3 the advected
    left eigenvectors are singular at eta0 = 0 and a DomainError is raised.
    """
    d = pb.d
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    et = eta.eta_t
    if et.size != d - 1:
        raise ParameterError(f"eta_t must have length {d - 1}, got {et.size}")
    ht2 = eta.ht2
    if frame is None:
        frame = tangent_frame(et, vr.u, e0, d)

    rad_l = (vl.c2 - vl.u**2) * ht2 - e0 * e0
    rad_r = (vr.c2 - vr.u**2) * ht2 - e0 * e0
    if rad_l <= 0.0 or rad_r <= 0.0:
        raise DomainError(
            f"frequency eta0={e0} outside the elliptic region (radicals {rad_l}, {rad_r})"
        )
    if d > 2 and e0 == 0.0:
        raise DomainError("advected left eigenvectors are singular at eta0=0 for d>=3")

    a_l = -vl.c * math.sqrt(rad_l)
    a_r = vr.c * math.sqrt(rad_r)

    ml = vl.c2 - vl.u**2
    mr = vr.c2 - vr.u**2
    b1m = (a_l - 1j * vl.u * e0) / ml
    b1p = -np.conj(b1m)
    b2m = (-a_r + 1j * vr.u * e0) / mr
    b2p = -np.conj(b2m)
    b3p = 1j * e0 / vl.u
    b3m = -1j * e0 / vr.u

    n = d + 1
    beta_minus = np.empty(n, dtype=complex)
    beta_plus = np.empty(n, dtype=complex)
    beta_minus[0], beta_plus[0] = b1m, b1p
    beta_minus[1], beta_plus[1] = b2m, b2p
    beta_minus[2:] = b3m
    beta_plus[2:] = b3p

    r_minus = np.zeros((n, n), dtype=complex)
    r_plus = np.zeros((n, n), dtype=complex)
    l_minus = np.zeros((n, n), dtype=complex)
    l_plus = np.zeros((n, n), dtype=complex)

    r_minus[0] = np.concatenate(([-1j * e0 + vl.u * b1m], 1j * vl.c2 * et, [-a_l]))
    r_plus[0] = np.conj(r_minus[0])
    r_minus[1] = np.concatenate(([-1j * e0 - vr.u * b2m], 1j * vr.c2 * et, [-a_r]))
    r_plus[1] = np.conj(r_minus[1])

    pref_l_minus = ml / (2.0 * a_l * (vl.u * a_l + 1j * vl.c2 * e0))
    l_minus[0] = pref_l_minus * np.concatenate(
        ([1j * e0 - 2.0 * vl.u * b1p], -1j * et, [b1p])
    )
    l_plus[0] = np.conj(l_minus[0])
    pref_r_minus = mr / (2.0 * a_r * (vr.u * a_r + 1j * vr.c2 * e0))
    l_minus[1] = pref_r_minus * np.concatenate(
        ([-1j * e0 - 2.0 * vr.u * b2p], 1j * et, [b2p])
    )
    l_plus[1] = np.conj(l_minus[1])

    for j in range(2, n):
        evec = frame.e[:, j - 2]
        dot = float(et @ evec)
        r_plus[j] = np.concatenate(([0.0], e0 * evec, [vl.u * dot]))
        r_minus[j] = np.concatenate(([0.0], e0 * evec, [vr.u * dot]))

    l_plus[2] = np.concatenate(
        ([vl.u], -(e0 / (vl.u * ht2)) * et, [-1.0])
    ) / (e0 * e0 + vl.u**2 * ht2)
    l_minus[2] = np.concatenate(
        ([-vr.u], (e0 / (vr.u * ht2)) * et, [1.0])
    ) / (e0 * e0 + vr.u**2 * ht2)
    for j in range(3, n):
        dual = frame.e_dual[:, j - 3]
        l_plus[j] = np.concatenate(([0.0], dual, [0.0])) * (-1.0 / (vl.u * e0))
        l_minus[j] = np.concatenate(([0.0], dual, [0.0])) * (1.0 / (vr.u * e0))

    side_minus = ("l", "r") + ("r",) * (d - 1)
    side_plus = ("l", "r") + ("l",) * (d - 1)

    R_minus = np.array([_embed(r_minus[j], side_minus[j], d) for j in range(n)])
    R_plus = np.array([_embed(r_plus[j], side_plus[j], d) for j in range(n)])
    L_minus = np.array([_embed(l_minus[j], side_minus[j], d) for j in range(n)])
    L_plus = np.array([_embed(l_plus[j], side_plus[j], d) for j in range(n)])

    return ModeSet(
        pb=pb,
        eta=eta,
        frame=frame,
        a_l=a_l,
        a_r=a_r,
        beta_minus=beta_minus,
        beta_plus=beta_plus,
        r_minus=r_minus,
        r_plus=r_plus,
        l_minus=l_minus,
        l_plus=l_plus,
        R_minus=R_minus,
        R_plus=R_plus,
        L_minus=L_minus,
        L_plus=L_plus,
        side_minus=side_minus,
        side_plus=side_plus,
    )


def _split(x: np.ndarray) -> Tuple[complex, np.ndarray, complex]:
    """Split a d+1 component vector into (density, tangential, normal) parts."""
    return x[0], x[1:-1], x[-1]


def d2_flux_tangential(
    state: FluidState, eta_t: np.ndarray, x: np.ndarray, y: np.ndarray
) -> np.ndarray:
    """Bilinear second differential of the eta_t-weighted tangential fluxes.

    Complex-bilinear in (x, y); equals the polarization of the quadratic form
    obtained by differentiating the tangential fluxes twice at the reference
    state.  Output has d+1 components.
    """
    eta_t = np.asarray(eta_t, dtype=complex)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.size != y.size or x.size != eta_t.size + 2:
        raise ParameterError("perturbation vectors must have length d+1")
    px, jx, nx = _split(x)
    py, jy, ny = _split(y)
    rho, u, pp = state.rho, state.u, state.pp
    etjx = eta_t @ jx
    etjy = eta_t @ jy
    out = np.zeros(x.size, dtype=complex)
    out[1:-1] = pp * px * py * eta_t + (etjx * jy + etjy * jx) / rho
    out[-1] = (etjx * (ny - u * py) + etjy * (nx - u * px)) / rho
    return out


def d2_flux_normal(state: FluidState, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Bilinear second differential of the entropy-augmented normal flux.

    Output has d+2 components: the d+1 conservative normal-flux rows followed
    by the entropy-flux row.  The first d+1 rows are the plain normal flux.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.size != y.size:
        raise ParameterError("perturbation vectors must have equal length")
    px, jx, nx = _split(x)
    py, jy, ny = _split(y)
    rho, u, c2, pp = state.rho, state.u, state.c2, state.pp
    wx = nx - u * px
    wy = ny - u * py
    out = np.zeros(x.size + 1, dtype=complex)
    out[1:-2] = (wx * jy + wy * jx) / rho
    out[-2] = pp * px * py + 2.0 * wx * wy / rho
    out[-1] = pp * u * px * py + (
        3.0 * u * wx * wy - u * c2 * px * py + c2 * (px * ny + py * nx) + u * (jx @ jy)
    ) / rho
    return out


@dataclass(frozen=True, eq=False)
class BoundaryOperators:
    """Linearized jump operator H and the frequency vector J(v)eta."""

    H: np.ndarray
    Jeta: np.ndarray


def _h_side(state: FluidState, mu: float, d: int) -> np.ndarray:
    """One side of H: the normal flux Jacobian stacked over the entropy row."""
    Ad = flux_jacobians(state, d)[d - 1]
    g0 = np.zeros(d + 1)
    g0[0] = mu - state.u**2
    g0[-1] = state.u
    return np.vstack([Ad, g0 @ Ad])


def boundary_operators(pb: PhaseBoundary, eta: Frequency) -> BoundaryOperators:
    """Assemble H (frequency independent) and J(v)eta for a configuration."""
    d = pb.d
    H = np.concatenate(
        [_h_side(pb.left, pb.mu, d), -_h_side(pb.right, pb.mu, d)], axis=1
    ).astype(complex)
    Jeta = np.zeros(d + 2, dtype=complex)
    Jeta[0] = pb.jump_rho * eta.eta0
    Jeta[1:d] = pb.jump_p * eta.eta_t
    Jeta[d + 1] = (pb.mu * pb.jump_rho - pb.jump_p) * eta.eta0
    return BoundaryOperators(H=H, Jeta=Jeta)


def eigen_residual(modes: ModeSet, j: int, family: str) -> float:
    """Relative residual of mode j (1-based) of the given family ('+'/'-')."""
    pb, eta = modes.pb, modes.eta
    if family == "-":
        beta, r, side = modes.beta_minus[j - 1], modes.r_minus[j - 1], modes.side_minus[j - 1]
    else:
        beta, r, side = modes.beta_plus[j - 1], modes.r_plus[j - 1], modes.side_plus[j - 1]
    state = pb.left if side == "l" else pb.right
    M = mode_matrix(state, eta, beta, side)
    denom = np.linalg.norm(r) * np.linalg.norm(M)
    return float(np.linalg.norm(M @ r) / denom)


def left_eigen_residual(modes: ModeSet, j: int, family: str) -> float:
    """Relative residual of the left eigenvector of mode j against its symbol."""
    pb, eta = modes.pb, modes.eta
    if family == "-":
        beta, l, side = modes.beta_minus[j - 1], modes.l_minus[j - 1], modes.side_minus[j - 1]
    else:
        beta, l, side = modes.beta_plus[j - 1], modes.l_plus[j - 1], modes.side_plus[j - 1]
    state = pb.left if side == "l" else pb.right
    M = mode_matrix(state, eta, beta, side)
    denom = np.linalg.norm(l) * np.linalg.norm(M)
    return float(np.linalg.norm(np.conj(l) @ M) / denom)


def biorthogonality_matrices(modes: ModeSet) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Diagnostic products (L_i^s)* Acheck^d R_j^s and the cross products.

    Acheck^d is the block diagonal of the two one-sided normal flux Jacobians.
    Returns (same-family minus, same-family plus, cross minus-plus).
    """
    d = modes.d
    Adl = flux_jacobians(modes.pb.left, d)[d - 1]
    Adr = flux_jacobians(modes.pb.right, d)[d - 1]
    Acheck = np.zeros((2 * (d + 1), 2 * (d + 1)))
    Acheck[: d + 1, : d + 1] = Adl
    Acheck[d + 1 :, d + 1 :] = Adr
    Lm = np.conj(modes.L_minus)
    Lp = np.conj(modes.L_plus)
    same_minus = Lm @ Acheck @ modes.R_minus.T
    same_plus = Lp @ Acheck @ modes.R_plus.T
    cross = Lm @ Acheck @ modes.R_plus.T
    return same_minus, same_plus, cross
