"""Two-phase reference states and the jump conditions connecting them.

A planar phase boundary separates a "left" state (ahead, subscript l) from a
"right" state (behind, subscript r) of an isothermal compressible fluid.  The
interface carries a nonzero mass flux j = rho*u, balances normal momentum
p + rho*u**2, and is reversible: the total specific enthalpy
mu = u**2/2 + g(rho) is continuous, g being the Gibbs function of the
barotropic pressure law.

This module builds such configurations either from raw numbers (each state
given directly, mu supplied by the caller) or from an equation of state, in
which case the two densities and the mass flux are solved for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import (
    DegeneracyError,
    DomainError,
    InconsistencyError,
    NoSolutionError,
    ParameterError,
)


@dataclass(frozen=True)
class EquationOfState:
    """Barotropic pressure law with the derived coefficients the theory needs.

    Attributes
    ----------
    pressure : callable
        p(rho).
    sound_speed_sq : callable
        c^2(rho) = p'(rho), must be positive on the working intervals.
    pressure_dd : callable
        p''(rho).
    gibbs : callable
        g(rho) with g'(rho) = p'(rho)/rho.
    rho_max : float
        Upper end of the admissible density interval (1/b for van der Waals).
    """

    pressure: Callable[[float], float]
    sound_speed_sq: Callable[[float], float]
    pressure_dd: Callable[[float], float]
    gibbs: Callable[[float], float]
    rho_max: float = math.inf


def vdw_eos(a: float, b: float, RT: float) -> EquationOfState:
    """Van der Waals fluid p(rho) = RT*rho/(1 - b*rho) - a*rho^2.

    All derived coefficients are analytic:
        c^2 = RT/(1 - b*rho)^2 - 2*a*rho
        p'' = 2*RT*b/(1 - b*rho)^3 - 2*a
        g   = RT*(log(rho/(1 - b*rho)) + 1/(1 - b*rho)) - 2*a*rho
    where g is the antiderivative of p'(rho)/rho.  The domain is 0 < rho < 1/b.
    """
    if b <= 0.0:
        raise ParameterError(f"covolume b must be positive, got {b}")
    if RT <= 0.0:
        raise ParameterError(f"temperature parameter RT must be positive, got {RT}")
    if a < 0.0:
        raise ParameterError(f"attraction parameter a must be nonnegative, got {a}")
    rho_max = 1.0 / b

    def _check(rho: float) -> float:
        rho = float(rho)
        if not 0.0 < rho < rho_max:
            raise DomainError(f"density {rho} outside (0, {rho_max})")
        return rho

    def pressure(rho: float) -> float:
        rho = _check(rho)
        return RT * rho / (1.0 - b * rho) - a * rho * rho

    def sound_speed_sq(rho: float) -> float:
        rho = _check(rho)
        return RT / (1.0 - b * rho) ** 2 - 2.0 * a * rho

    def pressure_dd(rho: float) -> float:
        rho = _check(rho)
        return 2.0 * RT * b / (1.0 - b * rho) ** 3 - 2.0 * a

    def gibbs(rho: float) -> float:
        rho = _check(rho)
        x = 1.0 - b * rho
        return RT * (math.log(rho / x) + 1.0 / x) - 2.0 * a * rho

    return EquationOfState(pressure, sound_speed_sq, pressure_dd, gibbs, rho_max)


@dataclass(frozen=True)
class FluidState:
    """One-sided thermodynamic and kinematic state at the interface.

    rho  density (> 0)
    u    normal velocity (> 0, flow crosses the boundary left to right)
    c2   squared sound speed, strictly supersonic bound c2 > u^2
    pp   second derivative p''(rho) of the pressure law
    p    pressure; may be omitted for raw configurations, in which case
         only pressure jumps (fixed by momentum balance) are ever used
    """

    rho: float
    u: float
    c2: float
    pp: float
    p: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.rho > 0.0:
            raise ParameterError(f"density must be positive, got {self.rho}")
        if not self.u > 0.0:
            raise ParameterError(f"normal velocity must be positive, got {self.u}")
        if not self.c2 > self.u**2:
            raise ParameterError(
                f"state must be strictly subsonic: c2={self.c2} <= u^2={self.u ** 2}"
            )

    @property
    def c(self) -> float:
        return math.sqrt(self.c2)


@dataclass(frozen=True)
class PhaseBoundary:
    """Matched two-state interface configuration.

    Jumps are taken right minus left, j = rho_l*u_l = rho_r*u_r is the mass
    flux, and mu is the common total specific enthalpy of the two states.
    """

    left: FluidState
    right: FluidState
    d: int
    j: float
    mu: float
    jump_rho: float
    jump_u: float
    jump_p: float


def make_phase_boundary(
    left: FluidState,
    right: FluidState,
    d: int,
    mu: float,
    tol: float = 1e-10,
) -> PhaseBoundary:
    """Validate two states against the jump conditions and assemble the boundary.

    The mass fluxes of the two sides must agree to relative tolerance `tol`,
    and the density and velocity jumps must both be nonzero.  When both
    pressures are provided the normal momentum balance is enforced; when
    either is missing, pressures are normalized to p_l = 0 with the jump fixed
    by momentum balance, [p] = -j*[u].
    """
    if d < 2:
        raise ParameterError(f"spatial dimension must be at least 2, got {d}")
    if not math.isfinite(mu):
        raise ParameterError(f"mu must be finite, got {mu}")

    j_l = left.rho * left.u
    j_r = right.rho * right.u
    if abs(j_l - j_r) > tol * abs(j_l):
        raise InconsistencyError(
            f"mass-flux mismatch: rho_l*u_l={j_l} vs rho_r*u_r={j_r}"
        )
    j = j_l

    jump_rho = right.rho - left.rho
    jump_u = right.u - left.u
    scale = max(left.rho, right.rho)
    if abs(jump_rho) <= 1e-14 * scale:
        raise DegeneracyError("density jump vanishes; the two states coincide")
    if abs(jump_u) <= 1e-14 * max(left.u, right.u):
        raise DegeneracyError("velocity jump vanishes; the two states coincide")

    if left.p is not None and right.p is not None:
        mom = (right.p + right.rho * right.u**2) - (left.p + left.rho * left.u**2)
        if abs(mom) > tol * max(1.0, abs(left.p)):
            raise InconsistencyError(f"normal momentum jump violated: residual {mom}")
        jump_p = right.p - left.p
    else:
        # Momentum balance fixes the only pressure combination the theory uses.
        jump_p = -j * jump_u
        left = FluidState(left.rho, left.u, left.c2, left.pp, 0.0)
        right = FluidState(right.rho, right.u, right.c2, right.pp, jump_p)

    return PhaseBoundary(left, right, d, j, mu, jump_rho, jump_u, jump_p)


def boundary_from_eos(
    eos: EquationOfState,
    rho_l: float,
    rho_r: float,
    j: float,
    d: int,
    tol: float = 1e-10,
) -> PhaseBoundary:
    """Assemble and validate a boundary from two densities and a mass flux."""
    u_l, u_r = j / rho_l, j / rho_r
    left = FluidState(rho_l, u_l, eos.sound_speed_sq(rho_l), eos.pressure_dd(rho_l), eos.pressure(rho_l))
    right = FluidState(rho_r, u_r, eos.sound_speed_sq(rho_r), eos.pressure_dd(rho_r), eos.pressure(rho_r))
    mu_l = 0.5 * u_l**2 + eos.gibbs(rho_l)
    mu_r = 0.5 * u_r**2 + eos.gibbs(rho_r)
    if abs(mu_l - mu_r) > tol * max(1.0, abs(mu_l)):
        raise InconsistencyError(f"total enthalpy not continuous: {mu_l} vs {mu_r}")
    return make_phase_boundary(left, right, d, 0.5 * (mu_l + mu_r), tol)


def jump_residuals(eos: EquationOfState, rho_l: float, rho_r: float, j: float) -> Tuple[float, float]:
    """Residuals of the momentum and enthalpy jump conditions at mass flux j."""
    mom = (eos.pressure(rho_r) + j * j / rho_r) - (eos.pressure(rho_l) + j * j / rho_l)
    rev = (eos.gibbs(rho_r) + 0.5 * j * j / rho_r**2) - (
        eos.gibbs(rho_l) + 0.5 * j * j / rho_l**2
    )
    return mom, rev


def _newton2(
    eos: EquationOfState,
    rho_l: float,
    rho_r: float,
    j: float,
    bl: Tuple[float, float],
    br: Tuple[float, float],
    max_iter: int = 200,
    max_halvings: int = 40,
) -> Tuple[float, float]:
    """Damped Newton for the 2x2 jump system at fixed mass flux.

    Steps are halved (up to `max_halvings`) until the residual norm decreases,
    and iterates are clamped to the brackets.  Convergence is declared when
    the residual norm drops below 1e-13 times the pressure scale.
    """
    scale = max(1.0, abs(eos.pressure(0.5 * (bl[0] + bl[1]))))
    x = np.array([rho_l, rho_r], dtype=float)

    def clamp(v: np.ndarray) -> np.ndarray:
        return np.array(
            [min(max(v[0], bl[0]), bl[1]), min(max(v[1], br[0]), br[1])]
        )

    res = np.array(jump_residuals(eos, x[0], x[1], j))
    for _ in range(max_iter):
        if np.linalg.norm(res) < 1e-13 * scale:
            return float(x[0]), float(x[1])
        c2l, c2r = eos.sound_speed_sq(x[0]), eos.sound_speed_sq(x[1])
        jac = np.array(
            [
                [-(c2l - j * j / x[0] ** 2), c2r - j * j / x[1] ** 2],
                [-(c2l / x[0] - j * j / x[0] ** 3), c2r / x[1] - j * j / x[1] ** 3],
            ]
        )
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError as exc:
            raise NoSolutionError("singular Jacobian in jump-condition solve") from exc
        lam = 1.0
        for _ in range(max_halvings):
            trial = clamp(x + lam * step)
            trial_res = np.array(jump_residuals(eos, trial[0], trial[1], j))
            if np.linalg.norm(trial_res) < np.linalg.norm(res):
                x, res = trial, trial_res
                break
            lam *= 0.5
        else:
            break
    if np.linalg.norm(res) < 1e-13 * scale:
        return float(x[0]), float(x[1])
    raise NoSolutionError(
        f"jump-condition Newton stalled at residual {np.linalg.norm(res):.3e}"
    )


def _bisect(f: Callable[[float], float], lo: float, hi: float, steps: int = 200) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoSolutionError(f"no sign change in bracket [{lo}, {hi}]")
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _maxwell_pair(
    eos: EquationOfState, bl: Tuple[float, float], br: Tuple[float, float]
) -> Tuple[float, float]:
    """Static coexistence pair: equal pressure and equal Gibbs function.

    Nested bisection: for each rho_l the pressure-matching rho_r is located in
    its bracket, then the Gibbs mismatch is driven to zero in rho_l.  The
    outer bracket is first restricted to the subinterval where a pressure
    match exists at all.
    """

    # Iterate over the side whose pressure range is narrower; the match in
    # the other bracket then exists on a usable subinterval.
    span_l = abs(eos.pressure(bl[1]) - eos.pressure(bl[0]))
    span_r = abs(eos.pressure(br[1]) - eos.pressure(br[0]))
    outer, inner = (bl, br) if span_l <= span_r else (br, bl)

    def match(rho_out: float) -> float:
        p_target = eos.pressure(rho_out)
        return _bisect(lambda r: eos.pressure(r) - p_target, inner[0], inner[1])

    def gibbs_gap(rho_out: float) -> float:
        return eos.gibbs(match(rho_out)) - eos.gibbs(rho_out)

    grid = np.linspace(outer[0], outer[1], 65)
    gaps = np.full(grid.size, np.nan)
    for i, r in enumerate(grid):
        try:
            gaps[i] = gibbs_gap(float(r))
        except NoSolutionError:
            continue
    seg = None
    for i in range(grid.size - 1):
        if np.isfinite(gaps[i]) and np.isfinite(gaps[i + 1]):
            if gaps[i] == 0.0 or gaps[i] * gaps[i + 1] <= 0.0:
                seg = (float(grid[i]), float(grid[i + 1]))
                break
    if seg is None:
        raise NoSolutionError(
            f"no coexistence pair: Gibbs gap has no sign change over [{outer[0]}, {outer[1]}]"
        )
    rho_out = _bisect(gibbs_gap, seg[0], seg[1])
    rho_in = match(rho_out)
    if outer is bl:
        return rho_out, rho_in
    return rho_in, rho_out


def solve_reversible_boundary(
    eos: EquationOfState,
    rho_l_bracket: Tuple[float, float],
    rho_r_bracket: Tuple[float, float],
    d: int,
    mass_flux: Optional[float] = None,
) -> PhaseBoundary:
    """Solve the reversible jump conditions for a two-phase configuration.

    The static (zero-flux) coexistence pair anchors a continuation in the
    mass flux: at each flux value the 2x2 system
        [p + j^2/rho] = 0,   [g + j^2/(2 rho^2)] = 0
    is re-solved by damped Newton inside the brackets.  The dynamic solutions
    form a one-parameter family in the flux; `mass_flux` selects the member
    (a deterministic subsonic default is used when omitted).

    Raises NoSolutionError when no coexistence pair is bracketed and
    DomainError when the converged states are not strictly subsonic.
    """
    bl = (float(min(rho_l_bracket)), float(max(rho_l_bracket)))
    br = (float(min(rho_r_bracket)), float(max(rho_r_bracket)))
    for lo, hi in (bl, br):
        if not (0.0 < lo < hi < eos.rho_max):
            raise ParameterError(f"bracket [{lo}, {hi}] outside the EOS domain")
        if eos.sound_speed_sq(lo) <= 0.0 or eos.sound_speed_sq(hi) <= 0.0:
            raise ParameterError("bracket endpoints must lie where c^2 > 0")

    rho_l, rho_r = _maxwell_pair(eos, bl, br)

    if mass_flux is None:
        # Stay well below the smaller acoustic impedance so the continued
        # solution remains subsonic on both sides.
        mass_flux = 0.35 * min(
            rho_l * math.sqrt(eos.sound_speed_sq(rho_l)),
            rho_r * math.sqrt(eos.sound_speed_sq(rho_r)),
        )
    j = float(mass_flux)
    if j <= 0.0:
        raise ParameterError(f"mass flux must be positive, got {j}")

    n_steps = 8
    step = 0
    j_cur = 0.0
    dj = j / n_steps
    halvings = 0
    while j_cur < j:
        j_next = min(j_cur + dj, j)
        try:
            rho_l_new, rho_r_new = _newton2(eos, rho_l, rho_r, j_next, bl, br)
        except NoSolutionError:
            halvings += 1
            if halvings > 40:
                raise
            dj *= 0.5
            continue
        rho_l, rho_r, j_cur = rho_l_new, rho_r_new, j_next
        step += 1

    for rho in (rho_l, rho_r):
        u = j / rho
        if not eos.sound_speed_sq(rho) > u * u:
            raise DomainError(
                f"converged state at rho={rho} is not subsonic for flux j={j}"
            )
    return boundary_from_eos(eos, rho_l, rho_r, j, d)
