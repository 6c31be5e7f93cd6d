"""Locating spectral singularities, CPA points and self-dual (CPA-laser) points.

A self-dual point is a real ``K`` at which both ``m22`` (lasing threshold)
and ``m11`` (coherent perfect absorption) vanish. At fixed ``K`` that is four
real equations in the four index components ``(eta1, eta2, kappa1, kappa2)``.

The analytic seeds come from inverting the squared system
``cos(n_- K/2) = ±i n_+ s / n_-``, ``cos(n_+ K/2) = ±i n_- s / n_+`` under the
assumption ``|kappa| << |eta_-|``; every sign ambiguity is enumerated and the
unsquared residuals decide which branches are real roots.
"""

from __future__ import annotations

import cmath
import itertools
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError, DomainError, NearPTError, SingularJacobianError
from .optics import BilayerSlab, ComplexIndex, closed_form_gammas

RESIDUAL_TOL = 1e-10
MAX_ITER = 50
MAX_CONDITION = 1e12
FD_STEP = 1e-7
NEAR_PT_SEED = 0.1
NEAR_PT_ROUTE = 1e-6
MIN_SEED_K = 1e2
DEDUPE_TOL = 1e-8


# --------------------------------------------------------------------------
# residuals


def ss_residual(slab: BilayerSlab, K: float) -> complex:
    """``G_1- / K``; zero exactly at a spectral singularity (``m22 = 0``)."""
    return closed_form_gammas(slab, K)[0] / K


def cpa_residual(slab: BilayerSlab, K: float) -> complex:
    """``(G_1+ - 2 G_2+) / K``; zero exactly at a CPA point (``m11 = 0``)."""
    return closed_form_gammas(slab, K)[1] / K


def residual_vector(slab: BilayerSlab, K: float) -> np.ndarray:
    ss, cpa = closed_form_gammas(slab, K)
    ss, cpa = ss / K, cpa / K
    return np.array([ss.real, ss.imag, cpa.real, cpa.imag])


def sum_difference_residuals(slab: BilayerSlab, K: float) -> tuple[float, float]:
    """Relative defects of the sine and cosine balance equations.

    ``n+ nt+ sin a+ = -n- nt- sin a-`` and ``n+^2 cos a+ = n-^2 cos a-``; each
    defect is divided by the larger side.
    """
    npl, nmi, tpl, tmi = slab.n_plus, slab.n_minus, slab.nt_plus, slab.nt_minus
    apl, ami = npl * K / 2, nmi * K / 2
    lhs1, rhs1 = npl * tpl * cmath.sin(apl), -nmi * tmi * cmath.sin(ami)
    lhs2, rhs2 = npl**2 * cmath.cos(apl), nmi**2 * cmath.cos(ami)
    d1 = abs(lhs1 - rhs1) / max(abs(lhs1), abs(rhs1), 1e-300)
    d2 = abs(lhs2 - rhs2) / max(abs(lhs2), abs(rhs2), 1e-300)
    return d1, d2


# --------------------------------------------------------------------------
# reduced (squared) system


def s_parameter(slab: BilayerSlab) -> complex:
    """``s = sqrt((n1^2+1)(n2^2+1) / ((n1^2-1)(n2^2-1)))``, principal root."""
    n1, n2 = slab.n1.value, slab.n2.value
    if n1 * n1 == 1 or n2 * n2 == 1:
        raise DomainError("index-matched layer (n^2 = 1): s has a pole")
    return cmath.sqrt((n1 * n1 + 1) * (n2 * n2 + 1) / ((n1 * n1 - 1) * (n2 * n2 - 1)))


def s_parameter_sum_form(slab: BilayerSlab) -> complex:
    """``s`` written through ``n±`` and ``nt±``; equal to :func:`s_parameter` up to sign."""
    npl, nmi, tpl, tmi = slab.n_plus, slab.n_minus, slab.nt_plus, slab.nt_minus
    num = (nmi * tmi) ** 2 - (npl * tpl) ** 2
    den = (nmi * tpl) ** 2 - (npl * tmi) ** 2
    if den == 0:
        raise DomainError("index-matched layer (n^2 = 1): s has a pole")
    return cmath.sqrt(num / den)


def sigma_parameter(eta1: float, eta2: float) -> float:
    """Loss-free approximation of ``s``; NaN when it is not real."""
    if eta1 == 1 or eta2 == 1 or eta1 == -1 or eta2 == -1:
        raise DomainError("index-matched layer (eta^2 = 1): sigma has a pole")
    q = (eta1**2 + 1) * (eta2**2 + 1) / ((eta1**2 - 1) * (eta2**2 - 1))
    return math.sqrt(q) if q >= 0 else math.nan


@dataclass(frozen=True)
class ReducedSystemValues:
    s: complex
    u_minus: complex
    u_plus: complex
    sigma: float
    phi_minus: float
    phi_plus: float
    branch: int
    phase_sign: int


def _u_branch(x: complex, branch: int) -> complex:
    """``sqrt(x^2 + 1) + branch x``, the cancelling branch as a reciprocal."""
    r = cmath.sqrt(x * x + 1)
    if (r.conjugate() * branch * x).real < 0:
        return 1 / (r - branch * x)
    return r + branch * x


def reduced_values(slab: BilayerSlab, branch: int = 1, phase_sign: int = 1) -> ReducedSystemValues:
    """``s``, ``u∓ = sqrt((n∓ s/n±)^2 + 1) ± n∓ s / n±`` and ``phi∓ = arg(±i u∓)``.

    ``branch`` selects the sign in front of the second term of ``u``;
    ``phase_sign`` the sign of ``i`` in the phases.
    """
    if branch not in (1, -1) or phase_sign not in (1, -1):
        raise ValueError("branch and phase_sign must be +1 or -1")
    s = s_parameter(slab)
    npl, nmi = slab.n_plus, slab.n_minus
    if npl == 0 or nmi == 0:
        raise DomainError("n1 = ±n2: u has a pole")
    xm, xp = nmi * s / npl, npl * s / nmi
    um, up = _u_branch(xm, branch), _u_branch(xp, branch)
    sigma = sigma_parameter(slab.n1.eta, slab.n2.eta)
    return ReducedSystemValues(
        s=s,
        u_minus=um,
        u_plus=up,
        sigma=sigma,
        phi_minus=cmath.phase(phase_sign * 1j * um),
        phi_plus=cmath.phase(phase_sign * 1j * up),
        branch=branch,
        phase_sign=phase_sign,
    )


def squared_system_residuals(slab: BilayerSlab, K: float) -> dict[tuple[int, int], tuple[float, float]]:
    """Relative defects of the two squared equations for each sign pair.

    Keys are ``(sign in the n_- equation, sign in the n_+ equation)``.
    """
    s = s_parameter(slab)
    npl, nmi = slab.n_plus, slab.n_minus
    cm, cp = cmath.cos(nmi * K / 2), cmath.cos(npl * K / 2)
    zm, zp = 1j * npl * s / nmi, 1j * nmi * s / npl
    out = {}
    for e1, e2 in itertools.product((1, -1), repeat=2):
        d1 = abs(cm - e1 * zm) / max(abs(cm), abs(zm))
        d2 = abs(cp - e2 * zp) / max(abs(cp), abs(zp))
        out[(e1, e2)] = (d1, d2)
    return out


# --------------------------------------------------------------------------
# seeds


@dataclass(frozen=True)
class ApproxSeed:
    """Analytic starting point for one sign branch.

    ``kappa_plus``/``kappa_minus`` and the mode numbers follow the leading
    large-``K`` approximation; ``eta1_start``/``eta2_start`` additionally keep
    the phases ``phi∓`` in the mode relations, which shifts ``eta±`` by about
    ``±pi/K`` and puts the start inside the Newton basin.

    ``sign_branch = (inv_plus, inv_minus, sign_kappa_plus, sign_kappa_minus)``.
    """

    eta1: float
    eta2: float
    K_target: float
    m_plus: int
    m_minus: int
    sign_branch: tuple[int, int, int, int]
    kappa_plus: float
    kappa_minus: float
    phi_plus: float
    phi_minus: float
    eta1_start: float
    eta2_start: float
    residual_estimate: float

    @property
    def kappa1(self) -> float:
        return (self.kappa_plus + self.kappa_minus) / 2

    @property
    def kappa2(self) -> float:
        return (self.kappa_plus - self.kappa_minus) / 2

    @property
    def physical(self) -> bool:
        return abs(self.kappa1) <= 1e-2 and abs(self.kappa2) <= 1e-2

    @property
    def start(self) -> np.ndarray:
        return np.array([self.eta1_start, self.eta2_start, self.kappa1, self.kappa2])

    def conjugate(self) -> "ApproxSeed":
        """Time-reversed seed: same start ``eta``'s, gain and loss exchanged.

        Conjugating the slab maps ``u∓`` to ``conj(u∓)``, hence ``phi∓`` to
        ``pi - phi∓``.
        """
        a, b, c, d = self.sign_branch
        return replace(
            self,
            sign_branch=(a, b, -c, -d),
            kappa_plus=-self.kappa_plus,
            kappa_minus=-self.kappa_minus,
            phi_plus=_reflect_phase(self.phi_plus),
            phi_minus=_reflect_phase(self.phi_minus),
        )


def _reflect_phase(phi: float) -> float:
    return cmath.phase(-cmath.exp(-1j * phi))


def _mode_candidates(value: float) -> list[int]:
    lo = math.floor(value)
    if abs(value - lo - 0.5) < 1e-9:
        cands = [lo, lo + 1]
    else:
        cands = [round(value)]
    return [m for m in cands if m > 0]


def generate_seeds(eta1: float, eta2: float, K_target: float) -> list[ApproxSeed]:
    """Enumerate the sixteen sign branches of the analytic approximation.

    Returns the seeds sorted by the unsquared residual norm at their start
    points (lowest first).
    """
    eta_p, eta_m = eta1 + eta2, eta1 - eta2
    if eta1 < 1 or eta2 < 1:
        raise DomainError("seed formulas need eta1, eta2 >= 1")
    if abs(eta_m) < NEAR_PT_SEED:
        raise NearPTError(
            f"|eta1 - eta2| = {abs(eta_m):.3g} < {NEAR_PT_SEED}: near-PT regime, use pt_special_case"
        )
    if K_target <= MIN_SEED_K:
        warnings.warn(
            f"K_target = {K_target} <= {MIN_SEED_K}: large-K approximations are unreliable",
            stacklevel=2,
        )
    sigma = sigma_parameter(eta1, eta2)
    if not math.isfinite(sigma):
        raise DomainError("sigma is not real for these eta values")
    xm = sigma * abs(eta_m) / eta_p
    xp = sigma * eta_p / abs(eta_m)
    # ln(sqrt(x^2+1) - x) = -ln(sqrt(x^2+1) + x): the inner sign only duplicates the outer one
    log_p = math.asinh(xm)
    log_m = math.asinh(xp)
    sgn_m = 1.0 if eta_m > 0 else -1.0

    seeds = []
    m_minus_list = _mode_candidates(K_target * eta_p / (4 * math.pi))
    m_plus_list = _mode_candidates(K_target * abs(eta_m) / (4 * math.pi))
    for m_minus, m_plus in itertools.product(m_minus_list, m_plus_list):
        for inv_p, inv_m, sk_p, sk_m in itertools.product((1, -1), repeat=4):
            kap_p = sk_p * 2 / K_target * log_p
            kap_m = sk_m * 2 / K_target * log_m
            trial = BilayerSlab(
                ComplexIndex(eta1, (kap_p + kap_m) / 2), ComplexIndex(eta2, (kap_p - kap_m) / 2)
            )
            red = reduced_values(trial)
            eta_p_new = 2 * (2 * math.pi * m_minus - inv_p * red.phi_minus) / K_target
            eta_m_new = sgn_m * 2 * (2 * math.pi * m_plus - inv_m * red.phi_plus) / K_target
            e1s, e2s = (eta_p_new + eta_m_new) / 2, (eta_p_new - eta_m_new) / 2
            start = BilayerSlab(
                ComplexIndex(e1s, (kap_p + kap_m) / 2), ComplexIndex(e2s, (kap_p - kap_m) / 2)
            )
            res = float(np.linalg.norm(residual_vector(start, K_target)))
            seeds.append(
                ApproxSeed(
                    eta1=eta1,
                    eta2=eta2,
                    K_target=K_target,
                    m_plus=m_plus,
                    m_minus=m_minus,
                    sign_branch=(inv_p, inv_m, sk_p, sk_m),
                    kappa_plus=kap_p,
                    kappa_minus=kap_m,
                    phi_plus=red.phi_plus,
                    phi_minus=red.phi_minus,
                    eta1_start=e1s,
                    eta2_start=e2s,
                    residual_estimate=res,
                )
            )
    seeds.sort(key=lambda s: s.residual_estimate)
    return seeds


# --------------------------------------------------------------------------
# Newton


def newton(
    fun: Callable[[np.ndarray], np.ndarray],
    x0: Sequence[float],
    scale: Sequence[float] | None = None,
    tol: float = RESIDUAL_TOL,
    max_iter: int = MAX_ITER,
) -> tuple[np.ndarray, int, float]:
    """Damped Newton / Gauss-Newton with central-difference Jacobian.

    ``scale`` is the per-component floor for the relative difference step.
    Over-determined systems take least-squares steps. Returns
    ``(x, iterations, residual_norm)``.
    """
    x = np.asarray(x0, dtype=float).copy()
    scale = np.ones_like(x) if scale is None else np.asarray(scale, dtype=float)

    def evaluate(v):
        # trial points far from the seed can overflow the trigonometric terms
        try:
            with np.errstate(all="ignore"):
                fv = np.asarray(fun(v), dtype=float)
        except (OverflowError, ZeroDivisionError, DomainError):
            return None, math.inf
        rv = float(np.linalg.norm(fv))
        return (fv, rv) if math.isfinite(rv) else (None, math.inf)

    f, r = evaluate(x)
    if f is None:
        raise ConvergenceError("residual is not finite at the starting point", x=x, residual=r, iterations=0)
    for it in range(max_iter + 1):
        if r < tol:
            return x, it, r
        if it == max_iter:
            break
        J = np.empty((f.size, x.size))
        for j in range(x.size):
            h = FD_STEP * max(abs(x[j]), scale[j])
            e = np.zeros_like(x)
            e[j] = h
            fp, _ = evaluate(x + e)
            fm, _ = evaluate(x - e)
            if fp is None or fm is None:
                raise ConvergenceError("Jacobian not finite", x=x, residual=r, iterations=it)
            J[:, j] = (fp - fm) / (2 * h)
        cond = np.linalg.cond(J)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise SingularJacobianError(
                f"Jacobian condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}",
                x=x, residual=r, iterations=it,
            )
        if J.shape[0] == J.shape[1]:
            step = np.linalg.solve(J, -f)
        else:
            step = np.linalg.lstsq(J, -f, rcond=None)[0]
        t = 1.0
        while True:
            xn = x + t * step
            fn, rn = evaluate(xn)
            if rn < (1 - 1e-4 * t) * r:
                break
            if t < 1e-3:
                if fn is None:
                    raise ConvergenceError("line search left the finite region", x=x, residual=r, iterations=it)
                break
            t /= 2
        x, f, r = xn, fn, rn
    raise ConvergenceError(
        f"no convergence after {max_iter} iterations (residual {r:.3e})",
        x=x, residual=r, iterations=max_iter,
    )


@dataclass(frozen=True)
class SelfDualSolution:
    n1: ComplexIndex
    n2: ComplexIndex
    K: float
    m_plus: int
    m_minus: int
    residual_ss: float
    residual_cpa: float
    iterations: int
    seed: ApproxSeed | None = None
    mode: str = "fixed_K"

    @property
    def slab(self) -> BilayerSlab:
        return BilayerSlab(self.n1, self.n2)

    @property
    def least_squares(self) -> bool:
        return self.mode == "fixed_eta"

    @property
    def converged(self) -> bool:
        return self.residual_ss < RESIDUAL_TOL and self.residual_cpa < RESIDUAL_TOL

    @property
    def is_physical(self) -> bool:
        return self.slab.is_physical

    @property
    def mode_consistent(self) -> bool:
        """``|K eta_+/4pi - m_-| < 1/2`` and ``|K |eta_-|/4pi - m_+| < 1/2``.

        False when Newton drifted from the seed onto a root of a neighbouring
        mode. PT solutions carry only ``m_-`` (``eta_- = 0``).
        """
        slab = self.slab
        ok = abs(self.K * slab.eta_plus / (4 * math.pi) - self.m_minus) < 0.5
        return ok and abs(self.K * abs(slab.eta_minus) / (4 * math.pi) - self.m_plus) < 0.5

    def conjugate(self) -> "SelfDualSolution":
        ss, cpa = _scaled_residuals(self.slab.conjugate(), self.K)
        return replace(
            self,
            n1=self.n1.conjugate(),
            n2=self.n2.conjugate(),
            residual_ss=ss,
            residual_cpa=cpa,
            seed=self.seed.conjugate() if self.seed is not None else None,
        )

    def as_vector(self) -> np.ndarray:
        return np.array([self.n1.eta, self.n2.eta, self.n1.kappa, self.n2.kappa, self.K])


def _scaled_residuals(slab: BilayerSlab, K: float) -> tuple[float, float]:
    ss, cpa = closed_form_gammas(slab, K)
    return abs(ss) / K, abs(cpa) / K


def _slab(x) -> BilayerSlab:
    return BilayerSlab(ComplexIndex(x[0], x[2]), ComplexIndex(x[1], x[3]))


def refine(seed: ApproxSeed, mode: str = "fixed_K") -> SelfDualSolution:
    """Newton-refine a seed to a self-dual point.

    ``mode="fixed_K"`` (default) holds ``K = K_target`` and solves the four
    real equations for ``(eta1, eta2, kappa1, kappa2)``. ``mode="fixed_eta"``
    holds the seed's real parts and solves for ``(kappa1, kappa2, K)`` in the
    least-squares sense (three unknowns, four equations).
    """
    if not math.isfinite(seed.residual_estimate):
        raise DomainError("seed residual is not finite")
    if mode == "fixed_K":
        K = seed.K_target
        x, it, _ = newton(
            lambda v: residual_vector(_slab(v), K), seed.start, scale=[1.0, 1.0, 1e-3, 1e-3]
        )
        slab = _slab(x)
    elif mode == "fixed_eta":
        slab, K, it = _refine_fixed_eta(seed.eta1, seed.eta2, seed.kappa1, seed.kappa2, seed.K_target)
    else:
        raise ValueError(f"unknown refinement mode {mode!r}")
    ss, cpa = _scaled_residuals(slab, K)
    return SelfDualSolution(slab.n1, slab.n2, K, seed.m_plus, seed.m_minus, ss, cpa, it, seed, mode)


def _refine_fixed_eta(eta1, eta2, kappa1, kappa2, K0):
    def fun(v):
        return residual_vector(BilayerSlab(ComplexIndex(eta1, v[0]), ComplexIndex(eta2, v[1])), v[2])

    x, it, _ = newton(fun, [kappa1, kappa2, K0], scale=[1e-3, 1e-3, 1.0])
    return BilayerSlab(ComplexIndex(eta1, x[0]), ComplexIndex(eta2, x[1])), float(x[2]), it


def refine_fixed_eta(eta1: float, eta2: float, kappa1: float, kappa2: float, K0: float) -> SelfDualSolution:
    """Least-squares self-dual search with the real parts held fixed.

    Unknowns are ``(kappa1, kappa2, K)``; raises :class:`ConvergenceError`
    when the four residuals cannot be driven below tolerance.
    """
    slab, K, it = _refine_fixed_eta(eta1, eta2, kappa1, kappa2, K0)
    ss, cpa = _scaled_residuals(slab, K)
    m_minus = round(K * (eta1 + eta2) / (4 * math.pi))
    m_plus = round(K * abs(eta1 - eta2) / (4 * math.pi))
    return SelfDualSolution(slab.n1, slab.n2, K, m_plus, m_minus, ss, cpa, it, None, "fixed_eta")


def _same_root(a: SelfDualSolution, b: SelfDualSolution, tol: float = DEDUPE_TOL) -> bool:
    va, vb = a.as_vector(), b.as_vector()
    return bool(np.all(np.abs(va - vb) <= tol * np.maximum(1.0, np.abs(va))))


def dedupe(solutions: Sequence[SelfDualSolution]) -> list[SelfDualSolution]:
    """Residual-sorted, with roots within ``1e-8`` componentwise merged."""
    out: list[SelfDualSolution] = []
    for sol in sorted(solutions, key=lambda s: s.residual_ss + s.residual_cpa):
        if not any(_same_root(sol, kept) for kept in out):
            out.append(sol)
    return out


@dataclass
class SearchResult:
    solutions: list[SelfDualSolution]
    seeds: list[ApproxSeed]
    failures: list[tuple[ApproxSeed, Exception]]
    rejected: list[SelfDualSolution] = field(default_factory=list)

    @property
    def best_residual(self) -> float:
        vals = [s.residual_ss + s.residual_cpa for s in self.solutions + self.rejected]
        vals += [getattr(e, "residual", math.inf) for _, e in self.failures]
        return min(vals, default=math.inf)


def accepted(sol: SelfDualSolution) -> bool:
    """Converged, physical, and on the mode numbers of its seed."""
    return sol.converged and sol.is_physical and sol.mode_consistent


def find_selfdual(
    eta1: float, eta2: float, K_target: float, max_solutions: int | None = None
) -> SearchResult:
    """Seed, refine every branch, keep accepted roots and their conjugates, dedupe.

    Roots that converge but drift to another mode, or leave the physical
    window, are returned in ``rejected``. ``|eta1 - eta2| < 1e-6`` is routed
    to :class:`NearPTError` before any seeding; :func:`pt_special_case`
    handles that regime.
    """
    if abs(eta1 - eta2) < NEAR_PT_ROUTE:
        raise NearPTError("eta1 == eta2: PT regime, use pt_special_case")
    seeds = generate_seeds(eta1, eta2, K_target)
    found, rejected, failures = [], [], []
    for seed in seeds:
        try:
            sol = refine(seed)
        except ConvergenceError as exc:
            failures.append((seed, exc))
            continue
        if accepted(sol):
            found.append(sol)
            # the root set is closed under time reversal
            conj = sol.conjugate()
            if accepted(conj):
                found.append(conj)
        elif sol.converged:
            rejected.append(sol)
    sols = dedupe(found)
    if max_solutions is not None:
        sols = sols[:max_solutions]
    return SearchResult(sols, seeds, failures, dedupe(rejected))


# --------------------------------------------------------------------------
# PT-symmetric case


def _pt_slab(n0: float, kappa: float) -> BilayerSlab:
    return BilayerSlab(ComplexIndex(n0, kappa), ComplexIndex(n0, -kappa))


def pt_kappa_seed(n0: float, K: float, iterations: int = 50) -> float:
    """Magnitude of ``kappa`` solving ``2k cosh(k K) = ±2 n0 s`` (``kappa_- = 2k``).

    Fixed-point iteration of ``kappa_- = (2/K) asinh(2 n0 sigma / kappa_-)``,
    the equal-real-part counterpart of the ``kappa_-`` seed formula.
    """
    target = 2 * n0 * sigma_parameter(n0, n0)
    km = 4 / K
    for _ in range(iterations):
        km = 2 / K * math.asinh(target / km)
    return km / 2


def pt_special_case(n0: float, mode: int) -> SelfDualSolution:
    """Self-dual point of the PT slab ``n1 = n0 + i kappa``, ``n2 = n0 - i kappa``.

    Solves ``G_1- = 0`` for ``(kappa, K)``; the CPA condition then holds by
    symmetry. The returned representative has ``kappa < 0`` (gain on the
    left). ``mode`` is the mode number ``m`` with ``K ≈ 2 pi m / n0``.
    """
    if n0 < 1 or n0 == 1:
        raise DomainError("n0 must exceed 1")
    if mode < 1:
        raise DomainError("mode must be a positive integer")
    # the cosine equation pins n0 K a quarter period past 2 pi m
    K0 = (2 * math.pi * mode + math.pi / 2) / n0
    kappa0 = -pt_kappa_seed(n0, K0)

    def fun(v):
        r = ss_residual(_pt_slab(n0, v[0]), v[1])
        return np.array([r.real, r.imag])

    x, it, _ = newton(fun, [kappa0, K0], scale=[1e-3, 1.0])
    kappa, K = float(x[0]), float(x[1])
    if kappa > 0:
        kappa = -kappa
    slab = _pt_slab(n0, kappa)
    ss, cpa = _scaled_residuals(slab, K)
    return SelfDualSolution(slab.n1, slab.n2, K, 0, mode, ss, cpa, it, None, "pt")


@dataclass(frozen=True)
class SameRealPartReport:
    """Reality test for ``eta1 = eta2 = n0``.

    ``lhs = kappa_- cosh(kappa_- K/2)`` is real, so a self-dual point needs
    ``rhs = (2 n0 + i kappa_+) s`` real as well.
    """

    lhs: float
    rhs: complex
    s_exact: complex
    s_first_order: complex
    reality_defect: float
    imag_rhs_first_order: float
    admissible: bool


def same_real_part_analysis(
    n0: float, kappa1: float, kappa2: float, K: float, tol: float = 1e-10
) -> SameRealPartReport:
    """Compare the two sides of the equal-real-part self-duality condition.

    ``reality_defect`` is ``kappa_+ (1 + 4 n0^2/(n0^4 - 1))``. The direct first
    order expansion of ``s`` gives ``Im(rhs) ≈ c kappa_+ (1 - 4 n0^2/(n0^4 - 1))``
    with ``c = (n0^2+1)/(n0^2-1)``, reported as ``imag_rhs_first_order``.
    Admissibility is decided on the exact ``Im(rhs)``.
    """
    if abs(kappa1) > 1e-3 * n0 or abs(kappa2) > 1e-3 * n0:
        warnings.warn("|kappa| > 1e-3 n0: outside the small-loss regime", stacklevel=2)
    kp, km = kappa1 + kappa2, kappa1 - kappa2
    slab = BilayerSlab(ComplexIndex(n0, kappa1), ComplexIndex(n0, kappa2))
    s = s_parameter(slab)
    c = (n0**2 + 1) / (n0**2 - 1)
    q = 4 * n0**2 / (n0**4 - 1)
    s1 = c * (1 - 2j * n0 * kp / (n0**4 - 1))
    rhs = (2 * n0 + 1j * kp) * s
    lhs = km * math.cosh(km * K / 2)
    return SameRealPartReport(
        lhs=lhs,
        rhs=rhs,
        s_exact=s,
        s_first_order=s1,
        reality_defect=kp * (1 + q),
        imag_rhs_first_order=c * kp * (1 - q),
        admissible=abs(rhs.imag) <= tol * abs(rhs),
    )


# --------------------------------------------------------------------------
# lasing scan


@dataclass(frozen=True)
class LasingCandidate:
    K: float
    depth: float


def scan_lasing(
    slab: BilayerSlab,
    K_min: float,
    K_max: float,
    steps: int,
    residual: str = "ss",
    polish: bool = True,
) -> list[LasingCandidate]:
    """Local minima of ``|G_1-|/K`` (or the CPA residual) on a real-``K`` grid.

    One complex equation in one real unknown has no generic solution, so the
    minima are near-singularities with their depth, deepest first. With
    ``polish`` each grid minimum is refined by a bounded scalar minimisation
    between its neighbours.
    """
    if not (K_max > K_min > 0):
        raise DomainError("need K_max > K_min > 0")
    if steps < 2:
        raise DomainError("need at least two steps")
    f = {"ss": ss_residual, "cpa": cpa_residual}[residual]
    Ks = np.linspace(K_min, K_max, steps)
    vals = np.array([abs(f(slab, K)) for K in Ks])
    out = []
    for i in range(steps):
        left = vals[i - 1] if i > 0 else math.inf
        right = vals[i + 1] if i < steps - 1 else math.inf
        if vals[i] <= left and vals[i] <= right:
            K, depth = float(Ks[i]), float(vals[i])
            if polish and 0 < i < steps - 1:
                res = minimize_scalar(
                    lambda k: abs(f(slab, k)),
                    bounds=(Ks[i - 1], Ks[i + 1]),
                    method="bounded",
                    options={"xatol": 1e-12 * max(1.0, K)},
                )
                if res.fun < depth:
                    K, depth = float(res.x), float(res.fun)
            out.append(LasingCandidate(K, depth))
    out.sort(key=lambda c: c.depth)
    return out
