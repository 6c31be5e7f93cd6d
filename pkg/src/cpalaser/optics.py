"""Exact scattering of normally incident waves off a two-layer slab.

The slab occupies ``-L/2 <= z <= L/2`` with index ``n1`` on the left half and
``n2`` on the right half, vacuum outside. Everything is expressed through the
dimensionless wavenumber ``K = L k``; lengths are in units of ``L``.

Conventions
-----------
* Time dependence ``exp(-i w t)``, so ``kappa > 0`` is loss and ``kappa < 0``
  is gain.
* The transfer matrix ``M`` maps the plane-wave amplitudes ``(A, B)`` of
  ``A exp(ikz) + B exp(-ikz)`` on the left of the slab to those on the right,
  with phases referenced to the slab centre ``z = 0``.
* ``T = 1/m22``, ``R_left = -m21/m22``, ``R_right = m12/m22``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SpectralSingularityError

#: |m22| / max|m_ij| below which amplitudes are reported as divergent.
SINGULARITY_THRESHOLD = 1e-30


@dataclass(frozen=True)
class ComplexIndex:
    """Refractive index ``eta + i kappa`` of one layer."""

    eta: float
    kappa: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "kappa", float(self.kappa))
        if not (math.isfinite(self.eta) and math.isfinite(self.kappa)):
            raise DomainError(f"non-finite refractive index {self.eta!r} + {self.kappa!r}i")

    @classmethod
    def from_complex(cls, n: complex) -> "ComplexIndex":
        n = complex(n)
        return cls(n.real, n.imag)

    @property
    def value(self) -> complex:
        return complex(self.eta, self.kappa)

    @property
    def is_physical(self) -> bool:
        """Realistic-material range: ``1 <= eta < 5`` and ``|kappa| <= 1e-2``."""
        return 1.0 <= self.eta < 5.0 and abs(self.kappa) <= 1e-2

    def conjugate(self) -> "ComplexIndex":
        return ComplexIndex(self.eta, -self.kappa)

    def __complex__(self):
        return self.value


@dataclass(frozen=True)
class BilayerSlab:
    """Two layers of equal thickness ``L/2``; ``n1`` left, ``n2`` right.

    ``L`` is optional physical metadata (e.g. micrometres); the numerics only
    ever see ``K = L k``.
    """

    n1: ComplexIndex
    n2: ComplexIndex
    L: float | None = None

    @classmethod
    def from_complex(cls, n1: complex, n2: complex, L: float | None = None) -> "BilayerSlab":
        return cls(ComplexIndex.from_complex(n1), ComplexIndex.from_complex(n2), L)

    def conjugate(self) -> "BilayerSlab":
        """Time-reversed slab (both indices conjugated, gain <-> loss)."""
        return BilayerSlab(self.n1.conjugate(), self.n2.conjugate(), self.L)

    @property
    def is_physical(self) -> bool:
        return self.n1.is_physical and self.n2.is_physical

    # sums and differences used throughout the reduced equations
    @property
    def n_plus(self) -> complex:
        return self.n1.value + self.n2.value

    @property
    def n_minus(self) -> complex:
        return self.n1.value - self.n2.value

    @property
    def nt_plus(self) -> complex:
        return self.n1.value * self.n2.value + 1

    @property
    def nt_minus(self) -> complex:
        return self.n1.value * self.n2.value - 1

    @property
    def eta_plus(self) -> float:
        return self.n1.eta + self.n2.eta

    @property
    def eta_minus(self) -> float:
        return self.n1.eta - self.n2.eta

    @property
    def kappa_plus(self) -> float:
        return self.n1.kappa + self.n2.kappa

    @property
    def kappa_minus(self) -> float:
        return self.n1.kappa - self.n2.kappa

    def half_phases(self, K: float) -> tuple[complex, complex]:
        """``(n1 K/2, n2 K/2)``: optical phase across each layer."""
        return self.n1.value * K / 2, self.n2.value * K / 2


def lambda_over_L(K: float) -> float:
    """Vacuum wavelength in units of the slab thickness."""
    return 2 * math.pi / K


def _check(slab: BilayerSlab, K: float) -> tuple[complex, complex]:
    if not (K > 0 and math.isfinite(K)):
        raise DomainError(f"wavenumber K must be real and positive, got {K!r}")
    n1, n2 = slab.n1.value, slab.n2.value
    if n1 == 0 or n2 == 0:
        raise DomainError("refractive index must be nonzero")
    return n1, n2


class LayerSolution(NamedTuple):
    """Layer amplitudes of the two canonical solutions ``phi_1``, ``phi_2``.

    On ``0 <= x < 1/2``: ``phi_j = A_j exp(i K n1 x) + B_j exp(-i K n1 x)``;
    on ``1/2 <= x <= 1``: ``phi_j = C_j exp(i K n2 x) + D_j exp(-i K n2 x)``,
    where ``x = z/L + 1/2``. ``phi_1(0) = 1, phi_1'(0) = -iK`` (purely
    left-going outside) and ``phi_2(0) = 1, phi_2'(0) = 0``.
    """

    A1: complex
    B1: complex
    A2: complex
    B2: complex
    C1: complex
    D1: complex
    C2: complex
    D2: complex

    def phi(self, j: int, x: float, slab: BilayerSlab, K: float) -> tuple[complex, complex]:
        """``(phi_j(x), phi_j'(x))`` from the layer expressions."""
        if j not in (1, 2):
            raise ValueError("j must be 1 or 2")
        if x < 0.5:
            k = K * slab.n1.value
            a, b = (self.A1, self.B1) if j == 1 else (self.A2, self.B2)
        else:
            k = K * slab.n2.value
            a, b = (self.C1, self.D1) if j == 1 else (self.C2, self.D2)
        ep = cmath.exp(1j * k * x)
        em = cmath.exp(-1j * k * x)
        return a * ep + b * em, 1j * k * (a * ep - b * em)


def layer_coefficients(slab: BilayerSlab, K: float) -> LayerSolution:
    n1, n2 = _check(slab, K)
    a1, a2 = slab.half_phases(K)
    c, s = cmath.cos(a1), cmath.sin(a1)
    em, ep = cmath.exp(-1j * a2), cmath.exp(1j * a2)
    return LayerSolution(
        A1=(1 - 1 / n1) / 2,
        B1=(1 + 1 / n1) / 2,
        A2=0.5 + 0j,
        B2=0.5 + 0j,
        C1=em / 2 * ((1 - 1 / n2) * c + 1j * (n1 / n2 - 1 / n1) * s),
        D1=ep / 2 * ((1 + 1 / n2) * c - 1j * (n1 / n2 + 1 / n1) * s),
        C2=em / 2 * (c + 1j * n1 * s / n2),
        D2=ep / 2 * (c - 1j * n1 * s / n2),
    )


class Gammas(NamedTuple):
    """Boundary functionals ``G_j± = phi_j'(1) ± i K phi_j(1)``."""

    g1p: complex
    g1m: complex
    g2p: complex
    g2m: complex


def gamma_factors(slab: BilayerSlab, K: float) -> Gammas:
    """Gamma factors evaluated from the layer coefficients at ``x = 1``."""
    coeffs = layer_coefficients(slab, K)
    out = []
    for j in (1, 2):
        phi, dphi = coeffs.phi(j, 1.0, slab, K)
        out.append((dphi + 1j * K * phi, dphi - 1j * K * phi))
    (g1p, g1m), (g2p, g2m) = out
    return Gammas(g1p, g1m, g2p, g2m)


def closed_form_gammas(slab: BilayerSlab, K: float) -> tuple[complex, complex]:
    """``(G_1-, G_1+ - 2 G_2+)`` from the trigonometric closed forms.

    These are the two combinations whose zeros are the spectral singularity
    (``m22 = 0``) and its time-reversed dual (``m11 = 0``).
    """
    n1, n2 = _check(slab, K)
    npl, nmi = n1 + n2, n1 - n2
    tpl, tmi = n1 * n2 + 1, n1 * n2 - 1
    apl, ami = npl * K / 2, nmi * K / 2
    sines = npl * tpl * cmath.sin(apl) + nmi * tmi * cmath.sin(ami)
    cosines = npl**2 * cmath.cos(apl) - nmi**2 * cmath.cos(ami)
    pref = K / (2 * n1 * n2)
    return -pref * (sines + 1j * cosines), pref * (sines - 1j * cosines)


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def from_array(cls, a) -> "TransferMatrix":
        a = np.asarray(a, dtype=complex)
        return cls(complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def scale(self) -> float:
        """Largest entry magnitude; reference scale for relative checks."""
        return max(abs(self.m11), abs(self.m12), abs(self.m21), abs(self.m22))

    @property
    def det_defect(self) -> float:
        """``|det M - 1|``."""
        return abs(self.det - 1)

    @property
    def relative_det_defect(self) -> float:
        """``|det M - 1|`` relative to the magnitude of the cancelling products.

        With gain the entries grow like ``exp(|kappa| K)`` and the two products
        in ``det`` cancel to ``1``; this is the defect that floating point can
        actually resolve.
        """
        mag = abs(self.m11 * self.m22) + abs(self.m12 * self.m21)
        return self.det_defect / max(1.0, mag)


def transfer_matrix(slab: BilayerSlab, K: float) -> TransferMatrix:
    """Closed-form transfer matrix in the centred (``z``) frame."""
    g = gamma_factors(slab, K)
    d = 2j * K
    e = cmath.exp(1j * K)
    return TransferMatrix(
        m11=-(g.g1p - 2 * g.g2p) / (e * d),
        m12=g.g1p / d,
        m21=(g.g1m - 2 * g.g2m) / d,
        m22=-e * g.g1m / d,
    )


def _interface(na: complex, nb: complex) -> np.ndarray:
    # continuity of psi and psi' across a step from index na to nb
    r = na / nb
    return 0.5 * np.array([[1 + r, 1 - r], [1 - r, 1 + r]], dtype=complex)


def _propagate(n: complex, K: float, d: float) -> np.ndarray:
    ph = 1j * K * n * d
    return np.array([[cmath.exp(ph), 0], [0, cmath.exp(-ph)]], dtype=complex)


def transfer_matrix_oracle(slab: BilayerSlab, K: float) -> TransferMatrix:
    """Transfer matrix by piecewise plane-wave matching.

    Independent of the Gamma route: amplitudes are carried across the three
    index steps (a propagation through each half-layer in between) with
    phases referenced to the left edge of each region, then both outer
    regions are re-referenced to ``z = 0``. Intended for verification.
    """
    n1, n2 = _check(slab, K)
    prod = (
        _interface(n2, 1.0)
        @ _propagate(n2, K, 0.5)
        @ _interface(n1, n2)
        @ _propagate(n1, K, 0.5)
        @ _interface(1.0, n1)
    )
    # left region: phases at z=-1/2 -> z=0; right region: z=+1/2 -> z=0
    shift = np.diag([cmath.exp(-0.5j * K), cmath.exp(0.5j * K)])
    return TransferMatrix.from_array(shift @ prod @ shift)


@dataclass(frozen=True)
class ScatteringAmplitudes:
    t: complex
    r_left: complex
    r_right: complex
    matrix: TransferMatrix | None = field(default=None, compare=False, repr=False)

    @property
    def phi_t(self) -> float:
        return cmath.phase(self.t)

    @property
    def phi_l(self) -> float:
        return cmath.phase(self.r_left)

    @property
    def phi_r(self) -> float:
        return cmath.phase(self.r_right)

    @property
    def T2(self) -> float:
        return abs(self.t) ** 2

    @property
    def Rl2(self) -> float:
        return abs(self.r_left) ** 2

    @property
    def Rr2(self) -> float:
        return abs(self.r_right) ** 2

    def to_transfer_matrix(self) -> TransferMatrix:
        """Rebuild ``M`` from the amplitudes using ``det M = 1``."""
        t, rl, rr = self.t, self.r_left, self.r_right
        return TransferMatrix(t - rl * rr / t, rr / t, -rl / t, 1 / t)


def scattering(M: TransferMatrix) -> ScatteringAmplitudes:
    if M.scale == 0 or abs(M.m22) <= SINGULARITY_THRESHOLD * M.scale:
        raise SpectralSingularityError(
            f"|m22| = {abs(M.m22):.3e}: amplitudes diverge (spectral singularity)"
        )
    return ScatteringAmplitudes(1 / M.m22, -M.m21 / M.m22, M.m12 / M.m22, matrix=M)


def s_matrix(amp: ScatteringAmplitudes) -> tuple[complex, complex]:
    """Eigenvalues ``T + sqrt(Rl Rr)`` and ``T - sqrt(Rl Rr)`` of ``[[T, Rr], [Rl, T]]``.

    The smaller eigenvalue is recovered from ``det S`` rather than by
    subtraction. When the source matrix is known, ``det S = m11/m22`` exactly,
    which keeps the S-matrix zero resolvable next to a pole.
    """
    t = amp.t
    root = cmath.sqrt(amp.r_left * amp.r_right)
    plus, minus = t + root, t - root
    if amp.matrix is not None:
        det = amp.matrix.m11 / amp.matrix.m22
    else:
        det = t * t - amp.r_left * amp.r_right
    if abs(plus) >= abs(minus):
        minus = det / plus if plus != 0 else minus
    else:
        plus = det / minus
    return plus, minus


@dataclass(frozen=True)
class PTReport:
    """PT-symmetry diagnostics. Matrix residuals are scaled by ``max|m_ij|``."""

    is_pt: bool
    re_m12: float
    re_m21: float
    m11_minus_conj_m22: float
    phase_left: float
    phase_right: float
    continuity_sign: int
    continuity_residual: float

    @property
    def max_matrix_residual(self) -> float:
        return max(self.re_m12, self.re_m21, self.m11_minus_conj_m22)


def pt_diagnostics(slab: BilayerSlab, K: float, tol: float = 1e-12) -> PTReport:
    """Check the relations a PT-symmetric slab (``n1 = conj(n2)``) must obey.

    ``phase_left`` and ``phase_right`` are ``|exp(2i(phi_l - phi_t)) + 1|`` and
    the same with ``phi_r``. ``continuity_sign`` is the ``s`` in
    ``|T|^2 + s |Rl Rr| = 1``; for a PT slab it equals
    ``-exp(i(phi_l + phi_r - 2 phi_t))``, so a lossless symmetric slab gives
    ``+1``. Phase residuals are NaN when a reflection amplitude vanishes.
    """
    is_pt = abs(slab.n1.value - slab.n2.value.conjugate()) < tol
    M = transfer_matrix(slab, K)
    sc = M.scale
    amp = scattering(M)

    def unit(z):
        return z / abs(z) if z != 0 else complex("nan")

    ut, ul, ur = unit(amp.t), unit(amp.r_left), unit(amp.r_right)
    phase_l = abs((ul / ut) ** 2 + 1)
    phase_r = abs((ur / ut) ** 2 + 1)
    rr = abs(amp.r_left * amp.r_right)
    if rr == 0:
        sign = 1
    else:
        sign = -1 if (ul * ur / ut**2).real > 0 else 1
    cont = abs(amp.T2 + sign * rr - 1) / max(1.0, amp.T2, rr)
    return PTReport(
        is_pt=is_pt,
        re_m12=abs(M.m12.real) / sc,
        re_m21=abs(M.m21.real) / sc,
        m11_minus_conj_m22=abs(M.m11 - M.m22.conjugate()) / sc,
        phase_left=phase_l,
        phase_right=phase_r,
        continuity_sign=sign,
        continuity_residual=cont,
    )
