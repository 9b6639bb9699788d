"""Coefficient kernels of generalized Schur functions and negative squares.

For a series S = sum_n p^n s_n between spaces with signatures sigma1
(input side) and sigma2 (output side), the kernel coefficients are

    a_{n,m} = delta_{n,m} sigma2 - sum_{k=0}^{min(n,m)} s_{n-k} sigma1 s_{m-k}*.

Finite sections A_mu = [a_{n,m}]_{n,m<=mu} are Hermitian; the number of
negative squares of the kernel is the supremum over mu of their negative
eigenvalue counts, which stabilizes at finite mu for rational S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ShapeError
from .quat import Quaternion
from .qmatrix import QMatrix, as_qmatrix, block, herm_eig
from .series import SliceSeries


class KernelCoeffs:
    """Lazy table of kernel coefficients a_{n,m} of a series."""

    def __init__(self, series, sigma1=None, sigma2=None):
        self.series = series
        r, c = series.shape
        self.sigma1 = QMatrix.eye(c) if sigma1 is None else as_qmatrix(sigma1)
        self.sigma2 = QMatrix.eye(r) if sigma2 is None else as_qmatrix(sigma2)
        if self.sigma1.shape != (c, c):
            raise ShapeError("sigma1 must match the input dimension %d" % c)
        if self.sigma2.shape != (r, r):
            raise ShapeError("sigma2 must match the output dimension %d" % r)
        self._cache = {}

    def coeff(self, n, m):
        key = (n, m)
        if key not in self._cache:
            s = self.series
            acc = QMatrix.zeros(s.rows, s.rows)
            for k in range(min(n, m) + 1):
                acc = acc + s.coeff(n - k) @ self.sigma1 @ s.coeff(m - k).adjoint()
            a = (self.sigma2 - acc) if n == m else -acc
            self._cache[key] = a
        return self._cache[key]

    def block_matrix(self, mu):
        """The Hermitian section A_mu = [a_{n,m}]_{n,m=0..mu}."""
        return block([[self.coeff(n, m) for m in range(mu + 1)]
                      for n in range(mu + 1)])

    def hermitian_defect(self, mu):
        A = self.block_matrix(mu)
        return (A - A.adjoint()).norm()

    def value(self, p, q, degree):
        """Truncated kernel value sum_{n,m<=degree} p^n a_{n,m} conj(q)^m."""
        if not isinstance(p, Quaternion):
            p = Quaternion._coerce(p)
        if not isinstance(q, Quaternion):
            q = Quaternion._coerce(q)
        qc = q.conj()
        r = self.series.rows
        acc = QMatrix.zeros(r, r)
        for m in range(degree, -1, -1):
            inner = self.coeff(degree, m)
            for n in range(degree - 1, -1, -1):
                inner = self.coeff(n, m) + p * inner
            acc = inner + acc * qc
        return acc


def schur_kernel_coeffs(S, sigma1=None, sigma2=None):
    return KernelCoeffs(S, sigma1, sigma2)


def lower_toeplitz(f, mu):
    """Block lower-triangular Toeplitz section L = [f_{n-m}]_{n>=m, n,m<=mu}.

    Multiplication by L implements the star product on stacked coefficient
    vectors: stacking the first mu+1 coefficients of g into x, L(f) x stacks
    those of f * g.
    """
    r, c = f.shape
    z = QMatrix.zeros(r, c)
    return block([[f.coeff(n - m) if n >= m else z for m in range(mu + 1)]
                  for n in range(mu + 1)])


@dataclass
class NegSquares:
    """Negative-square counts of the kernel sections A_0 .. A_{mu_max}."""

    counts: list
    kappa: int
    stabilized: bool
    window: int = 3
    tols: list = field(default_factory=list)

    def table(self):
        return [(mu, c) for mu, c in enumerate(self.counts)]


def neg_squares(S, sigma1=None, sigma2=None, mu_max=12, tol=None, window=3):
    """Count negative squares by sweeping kernel sections.

    Parameters
    ----------
    S : SliceSeries
    sigma1, sigma2 : QMatrix signatures (identity when omitted)
    mu_max : last section index to inspect
    tol : float, optional
        Eigenvalue zero-threshold; default 1e-8 * max|eigenvalue| per block.
    window : int
        The count is declared stabilized when the last `window` sections
        agree and equal the maximum.

    Returns NegSquares.
    """
    if mu_max + 1 > S.degree + 1:
        mu_max = S.degree
    kc = KernelCoeffs(S, sigma1, sigma2)
    counts = []
    tols = []
    for mu in range(mu_max + 1):
        A = kc.block_matrix(mu)
        spec, _ = herm_eig(A, tol=tol)
        counts.append(spec.negatives)
        scale = max((abs(x) for x in spec.eigenvalues), default=0.0)
        tols.append(tol if tol is not None else 1e-8 * scale)
    kappa = max(counts) if counts else 0
    tail = counts[-window:]
    stabilized = len(counts) >= window and all(c == kappa for c in tail)
    return NegSquares(counts, kappa, stabilized, window, tols)
