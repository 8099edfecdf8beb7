"""Damped-oscillator model of fractional order alpha.

Everything here is stationary-state physics in the transformed coordinate y
(the damping-free frame): derived parameters, the closed-form spectrum, the
Rodriguez-formula eigenfunctions and their Hermite-form counterparts, the
radial ODE residual, the algebraic eigenvalue pipeline, the classical
equation-of-motion checks, and the gauge identity that removes the damping
cross term from the Hamiltonian.

Two deliberate ambiguity switches are exposed rather than resolved:

* ``KineticCoefficientMode`` selects the 1/y drift coefficient of the radial
  ODE, (1+alpha) versus (1-alpha).  The two choices are inequivalent; both
  are computed so their residuals can be compared side by side.
* ``EomSign`` selects the sign of the restoring coefficient in the classical
  equation of motion, since the two candidate forms differ by an overall
  sign of (omega^2a - lambda^2/4).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .conformable import (
    FractionalOrder,
    Grid1D,
    SampledField,
    conformable_derivative,
    conformable_second_derivative,
    fd_derivative,
)
from .polyexp import (
    PolyExpSum,
    PolyExpTerm,
    conformable_diff,
    differentiate,
    differentiate_n,
    evaluate,
    multiply,
)

HERMITE_MAX_DEGREE = 50


class KineticCoefficientMode(str, enum.Enum):
    """Drift coefficient of the radial ODE: literal (1+a)/y or the (1-a)/y
    implied by expanding D^a D^a."""

    PAPER = "paper"
    DERIVED = "derived"


class EomSign(str, enum.Enum):
    """Sign convention of the classical restoring term."""

    PAPER_SIGN = "paper"
    DERIVED_SIGN = "derived"


class WavefunctionSource(str, enum.Enum):
    PAPER_RODRIGUEZ = "paper_rodriguez"
    HERMITE_ORACLE = "hermite_oracle"


@dataclass(frozen=True)
class BatemanParams:
    """Physical inputs: mass m, frequency omega, damping lambda, hbar, order."""

    mass: float = 1.0
    omega: float = 1.0
    damping: float = 0.0
    hbar: float = 1.0
    order: FractionalOrder = FractionalOrder(1.0)

    def __post_init__(self):
        if isinstance(self.order, (int, float)):
            object.__setattr__(self, "order", FractionalOrder(float(self.order)))
        if self.mass <= 0.0 or self.omega <= 0.0 or self.hbar <= 0.0:
            raise ValueError("mass, omega and hbar must be positive")
        if self.damping < 0.0:
            raise ValueError("damping coefficient must be nonnegative")
        a = self.order.alpha
        if self.omega ** (2.0 * a) - 0.25 * self.damping * self.damping < 0.0:
            raise ValueError(
                "overdamped parameters (lambda > 2*omega^alpha) have no real spectrum"
            )

    @property
    def alpha(self) -> float:
        return self.order.alpha


@dataclass(frozen=True)
class DerivedParams:
    """Derived constants: effective frequency Omega and decay scale F."""

    mass_a: float
    hbar_a: float
    omega_2a: float
    omega_sq: float  # Omega^2 = omega^2a - lambda^2/4
    Omega: float
    F: float


def derived_params(p: BatemanParams) -> DerivedParams:
    a = p.alpha
    mass_a = p.mass ** a
    hbar_a = p.hbar ** a
    omega_2a = p.omega ** (2.0 * a)
    omega_sq = omega_2a - 0.25 * p.damping * p.damping
    if omega_sq < 0.0:
        raise ValueError(
            "overdamped parameters (lambda > 2*omega^alpha) have no real spectrum"
        )
    Omega = math.sqrt(omega_sq)
    F = mass_a * Omega / hbar_a
    return DerivedParams(mass_a, hbar_a, omega_2a, omega_sq, Omega, F)


def energy(p: BatemanParams, n: int) -> float:
    """Level n energy: alpha * hbar^alpha * Omega * (n + 1/2)."""
    if n < 0:
        raise ValueError("quantum number must be nonnegative")
    d = derived_params(p)
    return p.alpha * d.hbar_a * d.Omega * (n + 0.5)


def _require_bound(d: DerivedParams) -> None:
    if not d.omega_sq > 0.0:
        raise ValueError("critically damped parameters admit no normalizable states")


def eigenfunction_paper(p: BatemanParams, n: int) -> PolyExpSum:
    """Rodriguez-form level-n wavefunction (unnormalized):

        y^a * exp(+F/(2a) y^2a) * d^n/dy^n [ y^(n-a) * exp(-F/a y^2a) ]

    Every surviving term carries the decaying exponential -F/(2a) y^2a.
    """
    if n < 0:
        raise ValueError("quantum number must be nonnegative")
    d = derived_params(p)
    _require_bound(d)
    a = p.alpha
    f_over_a = d.F / a
    q = 2.0 * a
    inner = PolyExpSum.single(1.0, n - a, -f_over_a, q)
    deriv = differentiate_n(inner, n)
    prefactor = PolyExpSum.single(1.0, a, d.F / (2.0 * a), q)
    return multiply(prefactor, deriv)


def hermite_coefficients(n: int) -> list[float]:
    """Monomial coefficients of the physicists' Hermite polynomial H_n,
    from the recurrence H_{k+1} = 2x H_k - 2k H_{k-1}."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > HERMITE_MAX_DEGREE:
        raise ValueError(f"Hermite degree capped at {HERMITE_MAX_DEGREE}")
    prev = [1.0]
    if n == 0:
        return prev
    cur = [0.0, 2.0]
    for k in range(1, n):
        nxt = [0.0] + [2.0 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2.0 * k * c
        prev, cur = cur, nxt
    return cur


def hermite_value(n: int, x):
    """H_n(x) by the three-term recurrence; x may be an array."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > HERMITE_MAX_DEGREE:
        raise ValueError(f"Hermite degree capped at {HERMITE_MAX_DEGREE}")
    x = np.asarray(x, dtype=float)
    hkm1 = np.ones_like(x)
    if n == 0:
        return hkm1 if hkm1.shape else float(hkm1)
    hk = 2.0 * x
    for k in range(1, n):
        hkm1, hk = hk, 2.0 * x * hk - 2.0 * k * hkm1
    return hk if hk.shape else float(hk)


def eigenfunction_hermite(p: BatemanParams, n: int) -> PolyExpSum:
    """Independent oracle form of the level-n wavefunction (unnormalized):

        H_n( sqrt(F/a) * y^a ) * exp(-F/(2a) y^2a)

    Substituting z = y^a turns the derived-mode radial ODE into a
    constant-frequency oscillator equation, whose solutions these are.
    Returned as a PolyExpSum, so it is both callable and analytically
    differentiable.
    """
    if n < 0:
        raise ValueError("quantum number must be nonnegative")
    d = derived_params(p)
    _require_bound(d)
    a = p.alpha
    scale = math.sqrt(d.F / a)
    decay = -(d.F / (2.0 * a))
    q = 2.0 * a
    terms = [
        PolyExpTerm(c * scale ** k, k * a, decay, q)
        for k, c in enumerate(hermite_coefficients(n))
        if c != 0.0
    ]
    return PolyExpSum(tuple(terms))


@dataclass(frozen=True)
class Eigenstate:
    """A bound state: quantum number, energy, wavefunction and normalization."""

    n: int
    energy: float
    wavefunction: PolyExpSum  # unnormalized
    normalization: float  # B_n > 0
    source: WavefunctionSource

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("quantum number must be nonnegative")
        if not self.normalization > 0.0:
            raise ValueError("normalization constant must be positive")
        coeffs = {t.expcoeff for t in self.wavefunction.terms}
        if not coeffs or any(c >= 0.0 for c in coeffs):
            raise ValueError("wavefunction must decay (negative exponential coefficients)")

    def normalized(self) -> PolyExpSum:
        return self.wavefunction.scale(self.normalization)


def schrodinger_residual(
    psi,
    p: BatemanParams,
    E: float,
    mode: KineticCoefficientMode,
    grid: Grid1D,
) -> SampledField:
    """Pointwise left-hand side of the radial equation

        psi'' + (coef/y) psi' + (2 m_a / hbar_a^2) y^(2a-2) (E - m_a Omega^2/2 y^2a) psi

    with coef = 1+alpha (paper mode) or 1-alpha (derived mode).  Derivatives
    are exact when psi is a PolyExpSum, finite differences otherwise.
    """
    d = derived_params(p)
    a = p.alpha
    mode = KineticCoefficientMode(mode)
    coef = (1.0 + a) if mode is KineticCoefficientMode.PAPER else (1.0 - a)
    y = grid.points
    if isinstance(psi, PolyExpSum):
        vals = evaluate(psi, y)
        d1 = evaluate(differentiate(psi), y)
        d2 = evaluate(differentiate_n(psi, 2), y)
    else:
        vals = np.asarray(psi(y))
        d1 = fd_derivative(y, vals, 1)
        d2 = fd_derivative(y, vals, 2)
    hbar_2a = d.hbar_a * d.hbar_a
    potential = (2.0 * d.mass_a / hbar_2a) * y ** (2.0 * a - 2.0) * (
        E - 0.5 * d.mass_a * d.omega_sq * y ** (2.0 * a)
    )
    resid = d2 + coef / y * d1 + potential * vals
    if np.all(np.abs(resid.imag) == 0.0):
        resid = resid.real
    return SampledField(grid, resid)


@dataclass(frozen=True)
class EnuRecord:
    """Artifacts of the algebraic eigenvalue derivation for one level."""

    n: int
    A: float
    Q: float
    tau: PolyExpSum
    h: PolyExpSum
    h_n: PolyExpSum
    E_n: float


def _power_coefficient(expr: PolyExpSum, power: float) -> complex:
    total = 0.0 + 0.0j
    for t in expr.terms:
        if t.expcoeff == 0.0 and math.isclose(t.power, power, rel_tol=1e-12, abs_tol=1e-12):
            total += t.coeff
    return total


def enu_pipeline(p: BatemanParams, n: int) -> EnuRecord:
    """Coefficient-matching eigenvalue derivation for level n.

    With the decaying branch (A = alpha/2, minus sign), pi_f = -F y^2a and

        tau(y) = 1 - 2A - 2F y^2a
        h_n(y) = -(n/2) tau'(y)          (+ separation constant, here 0)
        h(y)   = pi_f'(y) + Q y^(2a-1)

    where Q = 2 m_a E / hbar_a^2 + 2 A F.  Equating the y^(2a-1)
    coefficients of h and h_n fixes E; after exact elimination the closed
    form is E_n = alpha hbar^alpha Omega (n + 1/2), which is also what
    ``energy`` evaluates.  The float coefficient match is verified before
    returning.
    """
    if n < 0:
        raise ValueError("quantum number must be nonnegative")
    d = derived_params(p)
    _require_bound(d)
    a = p.alpha
    A = 0.5 * a
    q = 2.0 * a
    pi_f = PolyExpSum.single(-d.F, q)
    tau = PolyExpSum.constant(1.0 - 2.0 * A) + PolyExpSum.single(-2.0 * d.F, q)
    h_n = differentiate(tau).scale(-0.5 * n)

    # Same closed-form expression as energy(); the pipeline reaches it by
    # eliminating E from Q - 2*a*F = 2*n*a*F.
    E_n = a * d.hbar_a * d.Omega * (n + 0.5)

    hbar_2a = d.hbar_a * d.hbar_a
    Q = 2.0 * d.mass_a * E_n / hbar_2a + 2.0 * A * d.F
    h = differentiate(pi_f) + PolyExpSum.single(Q, q - 1.0)

    ch = _power_coefficient(h, q - 1.0)
    chn = _power_coefficient(h_n, q - 1.0)
    scale = max(abs(ch), abs(chn), 1.0)
    if abs(ch - chn) > 1e-10 * scale:
        raise RuntimeError(
            f"coefficient matching failed for n={n}: h -> {ch}, h_n -> {chn}"
        )
    return EnuRecord(n=n, A=A, Q=Q, tau=tau, h=h, h_n=h_n, E_n=E_n)


def hamiltonian_value(y: float, p_y: float, p: BatemanParams, gauged: bool) -> float:
    """Classical Hamiltonian at phase-space point (y, p_y).

    Ungauged form keeps the damping cross term (lambda/2) y^a p_y; the gauged
    form replaces omega^2a by the shifted Omega^2 and drops the cross term.
    """
    if y <= 0.0:
        raise ValueError("coordinate must be positive")
    d = derived_params(p)
    a = p.alpha
    kinetic = p_y * p_y / (2.0 * d.mass_a)
    if gauged:
        return kinetic + 0.5 * d.mass_a * d.omega_sq * y ** (2.0 * a)
    return (
        kinetic
        + 0.5 * d.mass_a * d.omega_2a * y ** (2.0 * a)
        + 0.5 * p.damping * y ** a * p_y
    )


def gauge_residual(test: PolyExpSum, p: BatemanParams, grid: Grid1D) -> float:
    """Sup-norm of [eta (P + m_a lambda y^a / 2) eta^{-1} - P] applied to a
    test function, with eta = exp(i m_a lambda y^2a / (4 a hbar_a)) and
    P = -i hbar_a D^a_y.

    The conformable derivative of the phase factor is taken with the exact
    chain rule and the product rule splits the derivative of (phase * test),
    so the whole computation is analytic; the residual measures how well the
    operator identity holds in complex floating-point arithmetic.
    """
    d = derived_params(p)
    a = p.alpha
    g = d.mass_a * p.damping / (4.0 * a * d.hbar_a)
    y = grid.points
    psi = evaluate(test, y)
    dpsi = evaluate(conformable_diff(test, p.order), y)
    phase = np.exp(-1j * g * y ** (2.0 * a))  # eta^{-1}
    chi = phase * psi
    # D^a (eta^{-1} psi) = eta^{-1} D^a psi + psi D^a eta^{-1}
    dchi = phase * dpsi + psi * (-2j * a * g) * y ** a * phase
    p_chi = -1j * d.hbar_a * dchi
    lhs = (p_chi + 0.5 * d.mass_a * p.damping * y ** a * chi) / phase
    rhs = -1j * d.hbar_a * dpsi
    return float(np.max(np.abs(lhs - rhs)))


def classical_el_residual(y: SampledField, p: BatemanParams, sign: EomSign) -> SampledField:
    """Residual of D^a_t D^a_t y + c y with c = lambda^2/4 - omega^2a
    (paper sign) or its negative (derived sign)."""
    d = derived_params(p)
    sign = EomSign(sign)
    c = 0.25 * p.damping * p.damping - d.omega_2a
    if sign is EomSign.DERIVED_SIGN:
        c = -c
    second = conformable_second_derivative(y, p.order)
    return SampledField(y.grid, second.values + c * y.values)


def canonical_momentum(y: SampledField, p: BatemanParams) -> SampledField:
    """Conjugate momentum along a sampled trajectory:
    m_a D^a_t y - m_a lambda y / 2."""
    d = derived_params(p)
    dy = conformable_derivative(y, p.order)
    return SampledField(y.grid, d.mass_a * dy.values - 0.5 * d.mass_a * p.damping * y.values)
