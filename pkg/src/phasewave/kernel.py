"""The quadratic interaction kernel of the surface-wave amplitude equation.

Two independent routes are implemented for every object.  The abstract route
assembles the five kernel pieces q_1..q_5 from boundary traces, second
differentials of the fluxes, and half-line integrals of exponential profiles
(all integrals are exact, see `expsum`).  The closed route evaluates the
factorized constants Q, Q_l, Q_r, Q_sharp, Q_b, Q_nat.  The completed kernel
q(k, k') is piecewise homogeneous of degree zero:

    q = Q_nat                     for k > 0, k' > 0
    q = conj(Q_nat) (1 + k'/k)    for k > 0 > k', k + k' > 0

extended to the rest of the plane by index symmetry q(k,k') = q(k',k) and
reality q(-k,-k') = conj(q(k,k')), with the value 0 on the anti-diagonal and
the real part of Q_nat on the coordinate axes (the principal-value choice).
Hunter's stability condition q(1, 0+) = conj(q(1, 0-)) holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

import numpy as np

from .errors import DegeneracyError, DomainError
from .expsum import ExpProfile, pair_bilinear, pair_dot
from .lopatinskii import RootData, lopatinskii_det
from .modes import (
    Frequency,
    d2_flux_normal,
    d2_flux_tangential,
    dg0,
    tangential_symbol,
)


# ---------------------------------------------------------------------------
# alpha0, the coefficient of the linear part of the amplitude equation
# ---------------------------------------------------------------------------


def alpha0(root: RootData, method: str = "closed") -> complex:
    """The real coefficient multiplying d/dtau in the amplitude equation.

    method 'closed' evaluates the factorized expression, 'abstract' the
    projected mode sum it was derived from, and 'fd_delta' a centered finite
    difference of the closed-form determinant in eta0 at the root (the
    coefficient equals the derivative of the determinant there).
    """
    if method == "closed":
        return _alpha0_closed(root)
    if method == "abstract":
        return _alpha0_abstract(root)
    if method == "fd_delta":
        return _alpha0_fd(root)
    raise ValueError(f"unknown method {method!r}")


def _alpha0_closed(root: RootData) -> complex:
    pb, eta, modes = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    ht2 = eta.ht2
    al, ar = modes.a_l, modes.a_r
    w2 = e0 * e0 + vr.u**2 * ht2
    brace = vl.u**2 * vr.u**2 * (al * al / vl.c2 + ar * ar / vr.c2) + (
        2.0 * vl.c2 * vr.c2 * e0 * e0
    )
    return complex(-pb.jump_rho * pb.jump_u * modes.frame.upsilon / e0 * w2 * brace)


def _alpha0_abstract(root: RootData) -> complex:
    pb, eta, modes, ops = root.pb, root.eta, root.modes, root.ops
    d = pb.d
    e0 = eta.eta0
    sig = root.sigma.sigma_star

    # Jump of the temporal flux, written through J(v)eta minus its pressure part.
    press = np.zeros(d + 2, dtype=complex)
    press[1:d] = pb.jump_p * eta.eta_t
    f0_jump = (ops.Jeta - press) / e0
    total = sig @ f0_jump

    gammas = (root.gamma1, root.gamma2)
    for p in range(d + 1):
        shr = sig @ (ops.H @ modes.R_plus[p])
        for q in range(2):
            num = np.conj(modes.L_plus[p]) @ (gammas[q] * modes.R_minus[q])
            total = total + 1j * shr * num / (modes.beta_plus[p] - modes.beta_minus[q])
    return complex(total)


def _alpha0_fd(root: RootData, rel_step: float = 1e-6) -> complex:
    pb, eta = root.pb, root.eta
    e0 = eta.eta0
    h = rel_step * e0
    dp = lopatinskii_det(pb, Frequency(e0 + h, eta.eta_t), method="closed")
    dm = lopatinskii_det(pb, Frequency(e0 - h, eta.eta_t), method="closed")
    return (dp - dm) / (2.0 * h)


# ---------------------------------------------------------------------------
# Exponential profiles of the resonant solution and its dual
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TraceProfiles:
    """One-sided blocks of the first-order corrector profile at wavenumber k."""

    left: ExpProfile
    right: ExpProfile
    trace_left: np.ndarray
    trace_right: np.ndarray


def trace_profiles(root: RootData, k: float) -> TraceProfiles:
    """The decaying mode profile on each side for wavenumber k != 0.

    For k > 0 the blocks are gamma1 e^{k beta_1^- z} r_1^- and
    gamma2 e^{k beta_2^- z} r_2^-; for k < 0 the complex conjugate family
    enters instead, keeping every rate strictly decaying.
    """
    if k == 0.0:
        raise DegeneracyError("trace profiles are undefined at k = 0")
    m = root.modes
    if k > 0.0:
        cl, bl = root.gamma1 * m.r_minus[0], k * m.beta_minus[0]
        cr, br = root.gamma2 * m.r_minus[1], k * m.beta_minus[1]
    else:
        cl, bl = np.conj(root.gamma1) * m.r_plus[0], k * m.beta_plus[0]
        cr, br = np.conj(root.gamma2) * m.r_plus[1], k * m.beta_plus[1]
    left = ExpProfile.from_terms([(cl, bl)])
    right = ExpProfile.from_terms([(cr, br)])
    return TraceProfiles(left=left, right=right, trace_left=cl, trace_right=cr)


def _rhat(root: RootData, k: float) -> ExpProfile:
    """Full 2(d+1)-component corrector profile at wavenumber k."""
    d = root.pb.d
    tp = trace_profiles(root, k)
    n = d + 1
    terms = []
    for t in tp.left.terms:
        full = np.zeros(2 * n, dtype=complex)
        full[:n] = t.coeff
        terms.append((full, t.rate))
    for t in tp.right.terms:
        full = np.zeros(2 * n, dtype=complex)
        full[n:] = t.coeff
        terms.append((full, t.rate))
    return ExpProfile.from_terms(terms)


def dual_profile(root: RootData, k: float) -> ExpProfile:
    """Row-valued dual profile L(k, .) for k > 0.

    The sum runs over the whole + family; the advected coefficients
    sigma* H R_p^+ vanish for p >= 4, leaving the three printed terms.
    """
    if k <= 0.0:
        raise DomainError(f"dual profile requires k > 0, got {k}")
    m = root.modes
    sig = root.sigma.sigma_star
    H = root.ops.H
    terms = []
    for p in range(root.pb.d + 1):
        coeff = (sig @ (H @ m.R_plus[p])) * np.conj(m.L_plus[p])
        terms.append((coeff, -k * m.beta_plus[p]))
    return ExpProfile.from_terms(terms)


def _omegas(root: RootData) -> Tuple[complex, complex, complex]:
    pb, eta, m = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    ht2 = eta.ht2
    jr, ju = pb.jump_rho, pb.jump_u
    ups = m.frame.upsilon
    w2r = e0 * e0 + vr.u**2 * ht2
    w2l = e0 * e0 + vl.u**2 * ht2
    om1 = jr * ju * ups * (w2r / w2l) * 1j * vl.u * e0 * (vr.u * m.a_r - 1j * vr.c2 * e0)
    om3 = (
        jr
        * ju**2
        * ups
        * ((e0 * e0 - vl.u * vr.u * ht2) / w2l)
        * (vr.u * m.a_r - 1j * vr.c2 * e0)
    )
    om2 = jr * ju * ups * 1j * vr.u * e0 * (vl.u * m.a_l - 1j * vl.c2 * e0)
    return complex(om1), complex(om2), complex(om3)


def _ltilde_rows(root: RootData) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    pb, eta, m = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    et = eta.eta_t
    ht2 = eta.ht2
    b1p, b2p = m.beta_plus[0], m.beta_plus[1]
    lt1 = np.concatenate(([1j * e0 - 2.0 * vl.u * b1p], -1j * et, [b1p]))
    lt2 = np.concatenate(([-1j * e0 - 2.0 * vr.u * b2p], 1j * et, [b2p]))
    lt3 = np.concatenate(([-vl.u**2 * ht2], e0 * et, [vl.u * ht2])).astype(complex)
    return lt1, lt2, lt3


def dual_profile_packaged(root: RootData, k: float) -> ExpProfile:
    """The packaged three-term form of the dual profile.

    Left rows lt1, lt3 carry weights omega1/gamma1 and omega3/gamma1, the
    right row lt2 carries +omega2/gamma2 (the sign the mode sum and every
    downstream integral actually require)."""
    if k <= 0.0:
        raise DomainError(f"dual profile requires k > 0, got {k}")
    d = root.pb.d
    n = d + 1
    m = root.modes
    om1, om2, om3 = _omegas(root)
    lt1, lt2, lt3 = _ltilde_rows(root)

    def embed(row: np.ndarray, side: str) -> np.ndarray:
        full = np.zeros(2 * n, dtype=complex)
        if side == "l":
            full[:n] = row
        else:
            full[n:] = row
        return full

    terms = [
        (om1 / root.gamma1 * embed(lt1, "l"), -k * m.beta_plus[0]),
        (om3 / root.gamma1 * embed(lt3, "l"), -k * m.beta_plus[2]),
        (om2 / root.gamma2 * embed(lt2, "r"), -k * m.beta_plus[1]),
    ]
    return ExpProfile.from_terms(terms)


# ---------------------------------------------------------------------------
# The five abstract kernels
# ---------------------------------------------------------------------------


def _sigma_of(root: RootData, total: float) -> np.ndarray:
    """sigma* extended to signed total wavenumbers (conjugate for negatives)."""
    if total > 0.0:
        return root.sigma.sigma_star
    if total < 0.0:
        return np.conj(root.sigma.sigma_star)
    raise DegeneracyError("sigma is undefined at zero total wavenumber")


def _ftilde_apply(state, mu: float, d: int, vec: np.ndarray) -> np.ndarray:
    """Augment a d+1 flux vector with its entropy row dg0 . vec."""
    out = np.empty(d + 2, dtype=complex)
    out[: d + 1] = vec
    out[d + 1] = dg0(state, mu, d) @ vec
    return out


def _blockwise(root: RootData, fl, fr):
    """Build a full-space bilinear map from two one-sided bilinear maps."""
    n = root.pb.d + 1

    def bil(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.zeros(2 * n, dtype=complex)
        out[:n] = fl(x[:n], y[:n])
        out[n:] = fr(x[n:], y[n:])
        return out

    return bil


def q_oracle(root: RootData, k: float, kp: float) -> Tuple[complex, complex, complex, complex, complex]:
    """The five kernel pieces at (k, k'), each from its abstract definition.

    Valid for k != 0, k' != 0, k + k' > 0, which covers the two regions the
    closed forms are stated on.  All z-integrals are exact.
    """
    if k == 0.0 or kp == 0.0:
        raise DegeneracyError("kernel pieces are undefined on the axes")
    total = k + kp
    if total <= 0.0:
        raise DomainError("kernel pieces require k + k' > 0")

    pb, eta = root.pb, root.eta
    d = pb.d
    vl, vr = pb.left, pb.right
    sig = _sigma_of(root, total)

    tk = trace_profiles(root, k)
    tkp = trace_profiles(root, kp)

    # q1: tangential first differentials applied to the boundary traces.
    Sl = tangential_symbol(vl, eta)
    Sr = tangential_symbol(vr, eta)
    sum_l = tk.trace_left + tkp.trace_left
    sum_r = tk.trace_right + tkp.trace_right
    q1 = sig @ (
        _ftilde_apply(vr, pb.mu, d, Sr @ sum_r) - _ftilde_apply(vl, pb.mu, d, Sl @ sum_l)
    )

    # q2: entropy-augmented normal second differential of the traces.
    q2 = -(
        sig
        @ (
            d2_flux_normal(vr, tk.trace_right, tkp.trace_right)
            - d2_flux_normal(vl, tk.trace_left, tkp.trace_left)
        )
    )

    L = dual_profile(root, total)
    rk = _rhat(root, k)
    rkp = _rhat(root, kp)

    # q3: tangential second differentials under the z-integral.
    bil3 = _blockwise(
        root,
        lambda x, y: d2_flux_tangential(vl, eta.eta_t, x, y),
        lambda x, y: d2_flux_tangential(vr, eta.eta_t, x, y),
    )
    v3 = pair_bilinear(rk, rkp, bil3)
    q3 = 1j * total * pair_dot(L, v3).integral()[0]

    # q4: z-derivative of the folded normal second differential.
    bil4 = _blockwise(
        root,
        lambda x, y: -d2_flux_normal(vl, x, y)[: d + 1],
        lambda x, y: d2_flux_normal(vr, x, y)[: d + 1],
    )
    v4 = pair_bilinear(rk, rkp, bil4)
    q4 = pair_dot(L, v4.derivative()).integral()[0]

    # q5: folded tangential symbol applied to the z-derivative of the profile.
    n = d + 1
    Acheck = np.zeros((2 * n, 2 * n))
    Acheck[:n, :n] = -Sl
    Acheck[n:, n:] = Sr
    dsum = rk.derivative() + rkp.derivative()
    v5 = dsum.map_coeffs(lambda c: Acheck @ c)
    q5 = -pair_dot(L, v5).integral()[0]

    return complex(q1), complex(q2), complex(q3), complex(q4), complex(q5)


# ---------------------------------------------------------------------------
# Closed-form constants and the completed kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class KernelConstants:
    """All closed-form scalars entering the completed kernel."""

    alpha0: float
    Q: complex
    Q_l: complex
    Q_r: complex
    Q_sharp: complex
    Q_b: complex
    Q_nat: complex
    omega1: complex
    omega2: complex
    omega3: complex
    ltilde1: np.ndarray
    ltilde2: np.ndarray
    ltilde3: np.ndarray


def kernel_constants(root: RootData) -> KernelConstants:
    """Evaluate every closed-form kernel constant at the root."""
    pb, eta, m = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    ht2 = eta.ht2
    jr, ju = pb.jump_rho, pb.jump_u
    ups = m.frame.upsilon
    al, ar = m.a_l, m.a_r
    g1, g2 = root.gamma1, root.gamma2
    b1m, b2m = m.beta_minus[0], m.beta_minus[1]
    b1p, b2p = m.beta_plus[0], m.beta_plus[1]
    w2r = e0 * e0 + vr.u**2 * ht2
    w2l = e0 * e0 + vl.u**2 * ht2
    ratio = (vl.u * ar + 1j * vr.c2 * e0) / (vl.u * ar - 1j * vr.c2 * e0)

    Q = 2.0 * jr * ju * ups * w2r * (b1m + b2m) * 1j * vl.u * vr.u * al * ar * ratio
    Q_l = jr * ju * ups * vl.u * vr.u * (ar / al) * w2r * w2l * g1 * (1j * e0 - vl.u * b1m)
    Q_r = jr * ju * ups * vl.u * vr.u * (al / ar) * w2r**2 * g2 * (1j * e0 + vr.u * b2m)
    Q_sharp = (
        2.0
        * jr
        * ups
        * w2r
        * (e0 * e0 + vl.u * vr.u * ht2)
        * 1j
        * vl.c2
        * vr.c2
        * e0
        * (vr.c2 * g2 / (vr.rho * vr.u) - vl.c2 * g1 / (vl.rho * vl.u))
    )
    Q_b = (
        -2.0
        * jr
        * ju
        * ups
        * w2r
        * vl.u
        * vr.u
        * ht2
        * (
            (vl.c2**2 * ar / (vl.rho * al)) * np.conj(g1) * (1j * e0 - vl.u * b1p)
            + (vr.c2**2 * al / (vr.rho * ar)) * np.conj(g2) * (1j * e0 + vr.u * b2p)
        )
    )
    Q_nat = (
        (vl.pp / 2.0 + vl.c2 / vl.rho) * Q_l
        + (vr.pp / 2.0 + vr.c2 / vr.rho) * Q_r
        + Q_sharp
    )
    om1, om2, om3 = _omegas(root)
    lt1, lt2, lt3 = _ltilde_rows(root)
    a0 = _alpha0_closed(root)
    return KernelConstants(
        alpha0=float(a0.real),
        Q=complex(Q),
        Q_l=complex(Q_l),
        Q_r=complex(Q_r),
        Q_sharp=complex(Q_sharp),
        Q_b=complex(Q_b),
        Q_nat=complex(Q_nat),
        omega1=om1,
        omega2=om2,
        omega3=om3,
        ltilde1=lt1,
        ltilde2=lt2,
        ltilde3=lt3,
    )


def final_simplification_residual(kc: KernelConstants, root: RootData) -> float:
    """Residual of (c_l^2/rho_l) Q_l + (c_r^2/rho_r) Q_r + Q_sharp/2
    = (Q + conj(Q_b))/2, relative to |Q_nat|."""
    vl, vr = root.pb.left, root.pb.right
    lhs = vl.c2 / vl.rho * kc.Q_l + vr.c2 / vr.rho * kc.Q_r + 0.5 * kc.Q_sharp
    rhs = 0.5 * (kc.Q + np.conj(kc.Q_b))
    return abs(lhs - rhs) / abs(kc.Q_nat)


def b_identity_values(root: RootData) -> Tuple[complex, complex]:
    """The two one-sided combinations whose sum vanishes at the root.

    Each also satisfies a factorized identity:
        u_l (u_r a_l - i c_l^2 eta0) B_l = -i eta0 (u_l a_l + i c_l^2 eta0)
        u_r (u_l a_r - i c_r^2 eta0) B_r = -i eta0 (u_r a_r + i c_r^2 eta0)
    """
    pb, eta, m = root.pb, root.eta, root.modes
    vl, vr = pb.left, pb.right
    e0 = eta.eta0
    ht2 = eta.ht2
    al, ar = m.a_l, m.a_r
    g1, g2 = root.gamma1, root.gamma2
    X = (vl.u * ar + 1j * vr.c2 * e0) / (vl.u * ar - 1j * vr.c2 * e0)
    mix = (e0 * e0 + vl.u * vr.u * ht2) / (pb.j * pb.jump_u * e0)
    B_l = (
        m.beta_minus[0] * X
        - 1j * (g1 / vl.rho) * (1j * e0 - vl.u * m.beta_minus[0])
        - mix * vl.c2 * g1
    )
    B_r = (
        m.beta_minus[1] * X
        - 1j * (g2 / vr.rho) * (1j * e0 + vr.u * m.beta_minus[1])
        + mix * vr.c2 * g2
    )
    return complex(B_l), complex(B_r)


def corollary_closed(root: RootData, kc: KernelConstants, k: float, kp: float) -> complex:
    """Region-wise closed form of the summed kernel before final assembly."""
    vl, vr = root.pb.left, root.pb.right
    if k > 0.0 and kp > 0.0:
        return (
            (vl.pp / 2.0 + vl.c2 / vl.rho) * kc.Q_l
            + (vr.pp / 2.0 + vr.c2 / vr.rho) * kc.Q_r
            + kc.Q_sharp
        )
    if k > 0.0 > kp and k + kp > 0.0:
        return (
            (vl.pp / 2.0 - vl.c2 / vl.rho) * np.conj(kc.Q_l)
            + (vr.pp / 2.0 - vr.c2 / vr.rho) * np.conj(kc.Q_r)
            + kc.Q_b
            + np.conj(kc.Q)
        ) * (1.0 + kp / k)
    raise DomainError("closed forms cover k,k'>0 and k>0>k' with k+k'>0 only")


@dataclass(eq=False)
class Kernel:
    """Completed kernel with its constants and a cached grid evaluator."""

    constants: KernelConstants
    _grid_cache: Dict[Tuple[float, int], np.ndarray] = field(
        default_factory=dict, repr=False
    )

    def q(self, k: float, kp: float) -> complex:
        return kernel_eval(self, k, kp)

    def a1(self, k: float, kp: float) -> complex:
        return kernel_eval(self, k, kp) / (4.0 * np.pi)


def build_kernel(root: RootData) -> Kernel:
    return Kernel(constants=kernel_constants(root))


def a0(alpha0_value: float, k: float) -> complex:
    """Linear symbol alpha0/(i k) of the amplitude equation, k != 0."""
    if k == 0.0:
        raise DegeneracyError("a0 is undefined at k = 0")
    return alpha0_value / (1j * k)


def q_grid(kernel: Kernel, K: np.ndarray, KP: np.ndarray) -> np.ndarray:
    """Vectorized kernel values over arrays of (k, k') pairs.

    The grid point (0, 0) is mapped to 0; the scalar evaluator raises there.
    """
    Qn = kernel.constants.Q_nat
    K = np.asarray(K, dtype=float)
    KP = np.asarray(KP, dtype=float)
    K, KP = np.broadcast_arrays(K, KP)
    s = K + KP
    neg = s < 0.0
    A = np.where(neg, -K, K)
    B = np.where(neg, -KP, KP)
    vals = np.zeros(A.shape, dtype=complex)
    pp = (A > 0.0) & (B > 0.0)
    vals[pp] = Qn
    pm = (A > 0.0) & (B < 0.0) & (A + B > 0.0)
    vals[pm] = np.conj(Qn) * (1.0 + B[pm] / A[pm])
    mp = (A < 0.0) & (B > 0.0) & (A + B > 0.0)
    vals[mp] = np.conj(Qn) * (1.0 + A[mp] / B[mp])
    ax = ((B == 0.0) & (A > 0.0)) | ((A == 0.0) & (B > 0.0))
    vals[ax] = Qn.real
    return np.where(neg, np.conj(vals), vals)


def kernel_eval(kernel: Kernel, k: float, kp: float) -> complex:
    """Completed kernel value at a single (k, k'); raises at (0, 0)."""
    if k == 0.0 and kp == 0.0:
        raise DomainError("kernel is undefined at (0, 0)")
    return complex(q_grid(kernel, np.array(k), np.array(kp))[()])


def hunter_residual(kernel: Kernel) -> float:
    """Exact residual of Hunter's condition q(1,0+) = conj(q(1,0-))."""
    q_pos = kernel.constants.Q_nat
    q_neg = np.conj(kernel.constants.Q_nat)
    return abs(q_pos - np.conj(q_neg))


def oracle_vs_closed(root: RootData, samples: Iterable[Tuple[float, float]]) -> Dict:
    """Compare summed oracle kernels against the closed forms over samples.

    Returns a report with the maximum relative deviation, region-constancy
    and mixed-region proportionality statistics, plus which conjugation the
    mixed-region piece q5 actually satisfies relative to Q.
    """
    kc = kernel_constants(root)
    devs = []
    region1_vals = []
    region2_ratios = []
    for k, kp in samples:
        qs = q_oracle(root, k, kp)
        total = sum(qs)
        closed = corollary_closed(root, kc, k, kp)
        scale = max(abs(total), abs(closed), 1e-300)
        devs.append(abs(total - closed) / scale)
        if k > 0 and kp > 0:
            region1_vals.append(total)
        else:
            region2_ratios.append(total / (1.0 + kp / k))

    def spread(vals):
        if len(vals) < 2:
            return 0.0
        arr = np.array(vals)
        return float(np.max(np.abs(arr - arr[0])) / max(np.max(np.abs(arr)), 1e-300))

    report = {
        "max_relative_deviation": float(max(devs)) if devs else 0.0,
        "region1_constancy": spread(region1_vals),
        "region2_proportionality": spread(region2_ratios),
    }

    # Conjugation pattern of the mixed-region q5 against Q (reported, not fixed).
    probe_k, probe_kp = 2.0, -1.0
    q5 = q_oracle(root, probe_k, probe_kp)[4]
    ref = probe_kp / probe_k
    dev_plain = abs(q5 - kc.Q * ref) / max(abs(kc.Q), 1e-300)
    dev_conj = abs(q5 - np.conj(kc.Q) * ref) / max(abs(kc.Q), 1e-300)
    report["q5_deviation_from_plain_Q"] = float(dev_plain)
    report["q5_deviation_from_conjugate_Q"] = float(dev_conj)
    report["q5_conjugation_pattern"] = (
        "conjugate" if dev_conj <= dev_plain else "plain"
    )
    return report
