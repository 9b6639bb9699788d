"""Truncated power series sum_n p^n A_n with quaternionic matrix coefficients.

The variable sits to the left of the coefficients, so pointwise evaluation
is unambiguous; products use the star (convolution) product

    (f * g)_n = sum_k f_k g_{n-k},

which agrees with the pointwise product only when the left factor has real
coefficients.  A series carries a truncation degree; binary operations
return the smaller of the two degrees, since nothing is known about either
tail beyond it.  Exact polynomial arithmetic is done by padding first.
"""

from __future__ import annotations

import numpy as np

from .errors import NotInvertibleAtZeroError, ShapeError, SingularMatrixError
from .quat import Quaternion, slice_decompose
from .qmatrix import QMatrix, as_qmatrix, inverse, matrix_power, solve


class SliceSeries:
    """Truncated series; immutable list of equally-shaped QMatrix coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        coeffs = [as_qmatrix(c) for c in coeffs]
        if not coeffs:
            raise ShapeError("a series needs at least the constant coefficient")
        shape = coeffs[0].shape
        for c in coeffs[1:]:
            if c.shape != shape:
                raise ShapeError("coefficient shapes differ: %s vs %s" % (shape, c.shape))
        self._coeffs = tuple(coeffs)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def polynomial(cls, coeffs, degree=None):
        """Series from explicit coefficients, zero-padded up to degree."""
        coeffs = [as_qmatrix(c) for c in coeffs]
        if not coeffs:
            raise ShapeError("empty coefficient list")
        if degree is not None and degree + 1 > len(coeffs):
            r, c = coeffs[0].shape
            coeffs = coeffs + [QMatrix.zeros(r, c)] * (degree + 1 - len(coeffs))
        return cls(coeffs)

    @classmethod
    def constant(cls, value, degree):
        return cls.polynomial([as_qmatrix(value)], degree)

    @classmethod
    def one(cls, degree, n=1):
        return cls.polynomial([QMatrix.eye(n)], degree)

    @classmethod
    def variable(cls, degree):
        """The scalar series p itself."""
        return cls.polynomial([QMatrix.zeros(1, 1), QMatrix.eye(1)], degree)

    # -- basic queries ------------------------------------------------------------

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def shape(self):
        return self._coeffs[0].shape

    @property
    def rows(self):
        return self._coeffs[0].rows

    @property
    def cols(self):
        return self._coeffs[0].cols

    def coeff(self, n):
        """n-th coefficient; zero beyond the truncation degree."""
        if 0 <= n <= self.degree:
            return self._coeffs[n]
        return QMatrix.zeros(*self.shape)

    def coeffs(self):
        return list(self._coeffs)

    def pad(self, degree):
        if degree <= self.degree:
            return self
        z = QMatrix.zeros(*self.shape)
        return SliceSeries(list(self._coeffs) + [z] * (degree - self.degree))

    def truncate(self, degree):
        return SliceSeries(self._coeffs[:degree + 1])

    def shift(self, k):
        """Multiply by p^k."""
        z = QMatrix.zeros(*self.shape)
        return SliceSeries([z] * k + list(self._coeffs))

    def norm_tail(self, start=0):
        return float(sum(c.norm() for c in self._coeffs[start:]))

    # -- ring operations ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SliceSeries):
            return other
        return SliceSeries.constant(as_qmatrix(other), self.degree)

    def __add__(self, other):
        other = self._coerce(other)
        d = min(self.degree, other.degree)
        return SliceSeries([self._coeffs[n] + other._coeffs[n] for n in range(d + 1)])

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        d = min(self.degree, other.degree)
        return SliceSeries([self._coeffs[n] - other._coeffs[n] for n in range(d + 1)])

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return SliceSeries([-c for c in self._coeffs])

    def __mul__(self, other):
        """Star product with a series, or the star multiple by a constant."""
        if isinstance(other, SliceSeries):
            return star_mul(self, other)
        q = as_qmatrix(other)
        return SliceSeries([c @ q if q.rows == self.cols else c * other
                            for c in self._coeffs])

    def __rmul__(self, other):
        # left star multiple by a constant: coefficientwise left product
        if isinstance(other, (int, float)):
            return SliceSeries([c * other for c in self._coeffs])
        q = as_qmatrix(other)
        return SliceSeries([q @ c for c in self._coeffs])

    def conj(self):
        """Entrywise conjugate of every coefficient."""
        return SliceSeries([c.conj_entries() for c in self._coeffs])

    def series_adjoint(self):
        return SliceSeries([c.adjoint() for c in self._coeffs])

    # -- evaluation -------------------------------------------------------------------

    def eval(self, p):
        """Pointwise value at a quaternion p, by left Horner recursion."""
        if not isinstance(p, Quaternion):
            p = Quaternion._coerce(p)
        acc = self._coeffs[-1]
        for n in range(self.degree - 1, -1, -1):
            acc = self._coeffs[n] + p * acc
        return acc

    def __call__(self, p):
        return self.eval(p)

    def __repr__(self):
        return "SliceSeries(degree=%d, shape=%s)" % (self.degree, (self.shape,))

    # -- serialization ------------------------------------------------------------------

    def to_dict(self):
        return {"degree": self.degree,
                "coefficients": [c.to_dict() for c in self._coeffs]}

    @classmethod
    def from_dict(cls, d):
        return cls([QMatrix.from_dict(c) for c in d["coefficients"]])


def star_mul(f, g):
    """Convolution (star) product, truncated at min(deg f, deg g)."""
    if f.cols != g.rows:
        raise ShapeError("star product shape mismatch %s * %s" % (f.shape, g.shape))
    d = min(f.degree, g.degree)
    out = []
    for n in range(d + 1):
        acc = QMatrix.zeros(f.rows, g.cols)
        for k in range(n + 1):
            acc = acc + f.coeff(k) @ g.coeff(n - k)
        out.append(acc)
    return SliceSeries(out)


def star_pow(f, k):
    if f.rows != f.cols:
        raise ShapeError("star power of a non-square series")
    out = SliceSeries.one(f.degree, f.rows)
    for _ in range(k):
        out = star_mul(out, f)
    return out


def series_conj(f):
    return f.conj()


def series_sym(f, tol=1e-10):
    """Symmetrization conj(f) * f of a scalar series; always real coefficients.

    The imaginary parts cancel exactly in exact arithmetic; they are checked
    against tol * (1 + scale) and then dropped.
    """
    if f.shape != (1, 1):
        raise ShapeError("symmetrization is defined for scalar series")
    fs = star_mul(f.conj(), f)
    scale = max((c.norm() for c in fs.coeffs()), default=0.0)
    out = []
    for c in fs.coeffs():
        q = c.item()
        if q.imag_norm() > tol * (1.0 + scale):
            raise ShapeError("symmetrized coefficient not real: %r" % (q,))
        out.append(QMatrix.scalar(Quaternion(q.x0)))
    return SliceSeries(out)


def star_solve_left(f, g, rtol=1e-12):
    """Solve f * x = g for a series x (degree = min of the two).

    Requires the constant coefficient of f to be invertible.
    """
    if f.rows != f.cols:
        raise ShapeError("left star division needs a square left factor")
    if g.rows != f.cols:
        raise ShapeError("star division shape mismatch")
    c0 = f.coeff(0)
    try:
        c0_inv = inverse(c0, rtol)
    except SingularMatrixError as exc:
        raise NotInvertibleAtZeroError(
            "constant coefficient is singular, no star inverse exists") from exc
    d = min(f.degree, g.degree)
    xs = []
    for n in range(d + 1):
        acc = g.coeff(n)
        for k in range(1, n + 1):
            acc = acc - f.coeff(k) @ xs[n - k]
        xs.append(c0_inv @ acc)
    return SliceSeries(xs)


def star_inverse(f, rtol=1e-12):
    """Star inverse of a square series with invertible constant coefficient."""
    return star_solve_left(f, SliceSeries.one(f.degree, f.rows), rtol)


def star_resolvent(A, degree):
    """The series (I - pA)^{-*} = sum_n p^n A^n, truncated at degree."""
    A = as_qmatrix(A)
    if not A.is_square():
        raise ShapeError("resolvent series of a non-square matrix")
    coeffs = [QMatrix.eye(A.rows)]
    for _ in range(degree):
        coeffs.append(coeffs[-1] @ A)
    return SliceSeries(coeffs)


def _real_quadratic(A, p):
    """|p|^2 A^2 - 2 Re(p) A + I, the real-coefficient denominator at p."""
    n = A.rows
    return p.norm_sq() * (A @ A) - (2.0 * p.x0) * A + QMatrix.eye(n)


def star_resolvent_eval(A, p, rtol=1e-12):
    """Closed-form value of (I - pA)^{-*} at p.

    Equal to (I - conj(p) A) (|p|^2 A^2 - 2 Re(p) A + I)^{-1}; valid whenever
    the quadratic factor is invertible, independently of series convergence.
    """
    A = as_qmatrix(A)
    if not A.is_square():
        raise ShapeError("resolvent of a non-square matrix")
    if not isinstance(p, Quaternion):
        p = Quaternion._coerce(p)
    R = _real_quadratic(A, p)
    Rin = inverse(R, rtol)
    return (QMatrix.eye(A.rows) - p.conj() * A) @ Rin


def star_left_eval(C, A, p, rtol=1e-12):
    """Value at p of the series C * (I - pA)^{-*} = sum_n p^n (C A^n).

    A constant left factor does not commute with powers of p, so this is
    not C @ star_resolvent_eval(A, p); the correct closed form is

        (C - conj(p) C A) (|p|^2 A^2 - 2 Re(p) A + I)^{-1}.
    """
    C = as_qmatrix(C)
    A = as_qmatrix(A)
    if C.cols != A.rows or not A.is_square():
        raise ShapeError("shape mismatch in star_left_eval")
    if not isinstance(p, Quaternion):
        p = Quaternion._coerce(p)
    R = _real_quadratic(A, p)
    Rin = inverse(R, rtol)
    return (C - p.conj() * (C @ A)) @ Rin
