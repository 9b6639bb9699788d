"""S-resolvents of quaternionic matrices and contour-based Riesz projectors.

For a square quaternionic T and a quaternion s outside the right spectral
spheres, the characteristic operator

    Q_s(T) = T^2 - 2 Re(s) T + |s|^2 I

is invertible, and the two resolvents are

    left:   -Q_s(T)^{-1} (T - conj(s) I)
    right:  -(T - conj(s) I) Q_s(T)^{-1}.

Projectors onto the spectral part enclosed by a circle with *real* center
(so that whole spheres are either inside or outside) are computed with the
periodic trapezoid rule, which converges exponentially for these analytic
integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ContourOnSpectrumError,
    InvalidSpecError,
    OnSpectrumError,
    RankDeficiencyError,
    ShapeError,
    SingularMatrixError,
)
from .quat import I_DEFAULT, Quaternion, UnitImaginary
from .qmatrix import (
    QMatrix,
    as_qmatrix,
    char_operator,
    range_basis,
    right_eigen_spheres,
    solve,
    solve_right,
)


def s_resolvent_left(s, T, rtol=1e-12):
    """Left S-resolvent at s; raises OnSpectrumError if Q_s(T) is singular."""
    T = as_qmatrix(T)
    Q = char_operator(T, s)
    rhs = -(T - s.conj() * QMatrix.eye(T.rows))
    try:
        return solve(Q, rhs, rtol)
    except SingularMatrixError as exc:
        raise OnSpectrumError("s = %s lies on a spectral sphere of T" % (s,)) from exc


def s_resolvent_right(s, T, rtol=1e-12):
    """Right S-resolvent at s."""
    T = as_qmatrix(T)
    Q = char_operator(T, s)
    lhs = -(T - s.conj() * QMatrix.eye(T.rows))
    try:
        return solve_right(Q, lhs, rtol)
    except SingularMatrixError as exc:
        raise OnSpectrumError("s = %s lies on a spectral sphere of T" % (s,)) from exc


def resolvent_eq_residuals(s, T):
    """Frobenius residuals of the two defining resolvent equations.

    left :  S_L(s,T) s - T S_L(s,T) = I      (s acting as a right scalar)
    right:  s S_R(s,T) - S_R(s,T) T = I
    """
    T = as_qmatrix(T)
    I_n = QMatrix.eye(T.rows)
    SL = s_resolvent_left(s, T)
    SR = s_resolvent_right(s, T)
    left = (SL * s - T @ SL - I_n).norm()
    right = (s * SR - SR @ T - I_n).norm()
    return left, right


@dataclass(frozen=True)
class ContourSpec:
    """Circle with a real center traversed in a single slice plane.

    nodes must be even and at least 16; the default is plenty for spectra
    separated from the contour by a modest margin.
    """

    center: float
    radius: float
    nodes: int = 256

    def __post_init__(self):
        if not (self.radius > 0):
            raise InvalidSpecError("contour radius must be positive")
        if self.nodes < 16 or self.nodes % 2:
            raise InvalidSpecError("contour nodes must be even and >= 16")

    def points(self, unit=None):
        """Quaternionic nodes center + radius * exp(unit * theta_k)."""
        unit = (unit or I_DEFAULT).as_quaternion()
        out = []
        for k in range(self.nodes):
            th = 2.0 * math.pi * k / self.nodes
            e = Quaternion(math.cos(th)) + unit * math.sin(th)
            out.append((Quaternion(self.center) + e * self.radius, e))
        return out

    def encloses(self, sphere, band=0.0):
        d = math.hypot(sphere.re - self.center, sphere.im_mag)
        return d < self.radius - band


def _check_contour_clear(T, spec, band_factor=1e-6):
    band = band_factor * spec.radius
    for sphere, _ in right_eigen_spheres(T):
        d = math.hypot(sphere.re - spec.center, sphere.im_mag)
        if abs(d - spec.radius) <= band:
            raise ContourOnSpectrumError(
                "contour passes within %g of the spectral sphere %s" % (band, sphere))


def riesz_projector(T, spec, unit=None, check=True):
    """Projector onto the spectral part inside the contour.

    Parameters
    ----------
    T : QMatrix, square
    spec : ContourSpec
    unit : UnitImaginary, optional
        Slice plane in which the circle is traversed; the result does not
        depend on it (checked in the test-suite), default is the i-plane.
    check : bool
        Verify first that no spectral sphere sits on the contour.

    Returns
    -------
    QMatrix P with P^2 = P and PT = TP up to quadrature error.
    """
    T = as_qmatrix(T)
    if not T.is_square():
        raise ShapeError("riesz_projector needs a square matrix")
    if check:
        _check_contour_clear(T, spec)
    acc = QMatrix.zeros(T.rows, T.rows)
    for s, e in spec.points(unit):
        acc = acc + s_resolvent_left(s, T) * e
    return acc * (spec.radius / spec.nodes)


def riesz_s_part(T, spec, unit=None, check=True):
    """Contour integral of the resolvent against f(s) = s.

    Equals T @ P for the projector P of the same contour, once the
    quadrature has converged; a useful independent consistency check.
    """
    T = as_qmatrix(T)
    if check:
        _check_contour_clear(T, spec)
    acc = QMatrix.zeros(T.rows, T.rows)
    for s, e in spec.points(unit):
        acc = acc + s_resolvent_left(s, T) * (e * s)
    return acc * (spec.radius / spec.nodes)


@dataclass
class SpectralSplit:
    """Invariant-subspace data extracted from a Riesz projector."""

    projector: QMatrix
    basis: QMatrix          # orthonormal columns spanning ran(P)
    rank: int
    restriction: QMatrix    # basis* T basis, the enclosed part of T
    inside: list = field(default_factory=list)   # (Sphere, mult) inside
    outside: list = field(default_factory=list)  # (Sphere, mult) outside


def spectral_split(T, spec, unit=None, rank_threshold=1e-7):
    """Split T along the contour: projector, range basis and restriction.

    The rank of the projector is decided on the singular values of its
    complex adjoint with the absolute threshold rank_threshold; quadrature
    noise sits orders of magnitude below it for reasonable contours.

    Raises
    ------
    RankDeficiencyError
        If a clean basis of ran(P) cannot be extracted at that rank.
    """
    T = as_qmatrix(T)
    P = riesz_projector(T, spec, unit)
    basis, rank = range_basis(P, rank_threshold)
    if basis.cols != rank:
        raise RankDeficiencyError(
            "projector range extraction got %d of %d directions"
            % (basis.cols, rank))
    restriction = basis.adjoint() @ T @ basis
    inside, outside = [], []
    for sphere, mult in right_eigen_spheres(T):
        (inside if spec.encloses(sphere) else outside).append((sphere, mult))
    return SpectralSplit(P, basis, rank, restriction, inside, outside)
