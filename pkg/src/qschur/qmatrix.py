"""Dense quaternionic matrices via the complex-pair representation.

A matrix M over the quaternions is stored as a pair of complex arrays
(a, b) with M = a + b*j, using q = (x0 + x1*i) + (x2 + x3*i)*j entrywise.
The complex adjoint

    chi(M) = [[a, b], [-conj(b), conj(a)]]

is a *-homomorphism into complex matrices of doubled size: it respects
products, adjoints and identities, so eigenvalue problems, linear solves
and rank decisions are all delegated to numpy on chi(M).

Column vectors v = v1 + v2*j correspond to psi(v) = [v1; -conj(v2)], which
intertwines the embedding: chi(M) psi(v) = psi(M v), and psi(v*z) = psi(v)*z
for complex z.  Right eigenvalues of M therefore appear as ordinary
eigenvalues of chi(M), in conjugate pairs (one pair per spectral sphere).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CompletionFailureError,
    NotDiagonalizableError,
    NotHermitianError,
    ShapeError,
    SingularMatrixError,
    ZeroVectorError,
)
from .quat import Quaternion, Sphere


class QMatrix:
    """Immutable dense matrix over the quaternions."""

    __slots__ = ("_a", "_b")

    def __init__(self, a, b, copy=True):
        a = np.array(a, dtype=complex, copy=copy)
        b = np.array(b, dtype=complex, copy=copy)
        if a.ndim != 2 or a.shape != b.shape:
            raise ShapeError("component arrays must be 2-d and equal-shaped")
        a.setflags(write=False)
        b.setflags(write=False)
        self._a = a
        self._b = b

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        z = np.zeros((rows, cols), dtype=complex)
        return cls(z, z.copy(), copy=False)

    @classmethod
    def eye(cls, n):
        return cls(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex), copy=False)

    @classmethod
    def from_components(cls, w, x, y, z):
        w, x, y, z = (np.asarray(t, dtype=float) for t in (w, x, y, z))
        return cls(w + 1j * x, y + 1j * z, copy=False)

    @classmethod
    def from_real(cls, arr):
        arr = np.asarray(arr, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        return cls(arr.astype(complex), np.zeros_like(arr, dtype=complex), copy=False)

    @classmethod
    def from_entries(cls, rows):
        """Build from nested lists of Quaternion / real / complex entries."""
        rows = [list(r) for r in rows]
        m, n = len(rows), len(rows[0])
        a = np.zeros((m, n), dtype=complex)
        b = np.zeros((m, n), dtype=complex)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ShapeError("ragged rows in entry list")
            for j, e in enumerate(row):
                q = e if isinstance(e, Quaternion) else Quaternion._coerce(e)
                if q is None:
                    raise TypeError("cannot interpret %r as a quaternion" % (e,))
                a[i, j] = complex(q.x0, q.x1)
                b[i, j] = complex(q.x2, q.x3)
        return cls(a, b, copy=False)

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        out_a = np.zeros((n, n), dtype=complex)
        out_b = np.zeros((n, n), dtype=complex)
        for i, e in enumerate(values):
            q = e if isinstance(e, Quaternion) else Quaternion._coerce(e)
            out_a[i, i] = complex(q.x0, q.x1)
            out_b[i, i] = complex(q.x2, q.x3)
        return cls(out_a, out_b, copy=False)

    @classmethod
    def scalar(cls, q):
        q = q if isinstance(q, Quaternion) else Quaternion._coerce(q)
        return cls.from_entries([[q]])

    # -- shape ------------------------------------------------------------------

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    def is_square(self):
        return self.rows == self.cols

    # -- entry access -------------------------------------------------------------

    def entry(self, i, j):
        a = self._a[i, j]
        b = self._b[i, j]
        return Quaternion(a.real, a.imag, b.real, b.imag)

    def __getitem__(self, idx):
        i, j = idx
        return self.entry(i, j)

    def item(self):
        if self.shape != (1, 1):
            raise ShapeError("item() requires a 1x1 matrix, got %s" % (self.shape,))
        return self.entry(0, 0)

    def column(self, j):
        return QMatrix(self._a[:, j:j + 1], self._b[:, j:j + 1])

    def to_components(self):
        """(rows, cols, 4) float array of (x0, x1, x2, x3) entries."""
        return np.stack(
            [self._a.real, self._a.imag, self._b.real, self._b.imag], axis=-1
        )

    # -- algebra -------------------------------------------------------------------

    def __add__(self, other):
        other = as_qmatrix(other)
        if other.shape != self.shape:
            raise ShapeError("shape mismatch %s + %s" % (self.shape, other.shape))
        return QMatrix(self._a + other._a, self._b + other._b, copy=False)

    def __sub__(self, other):
        other = as_qmatrix(other)
        if other.shape != self.shape:
            raise ShapeError("shape mismatch %s - %s" % (self.shape, other.shape))
        return QMatrix(self._a - other._a, self._b - other._b, copy=False)

    def __neg__(self):
        return QMatrix(-self._a, -self._b, copy=False)

    def __matmul__(self, other):
        other = as_qmatrix(other)
        if self.cols != other.rows:
            raise ShapeError("cannot multiply %s by %s" % (self.shape, other.shape))
        a = self._a @ other._a - self._b @ np.conj(other._b)
        b = self._a @ other._b + self._b @ np.conj(other._a)
        return QMatrix(a, b, copy=False)

    def __mul__(self, other):
        """Right scalar multiple M*q (entrywise m_ij * q)."""
        if isinstance(other, (int, float)):
            return QMatrix(self._a * other, self._b * other, copy=False)
        q = other if isinstance(other, Quaternion) else Quaternion._coerce(other)
        if q is None:
            return NotImplemented
        qa = complex(q.x0, q.x1)
        qb = complex(q.x2, q.x3)
        a = self._a * qa - self._b * np.conj(qb)
        b = self._a * qb + self._b * np.conj(qa)
        return QMatrix(a, b, copy=False)

    def __rmul__(self, other):
        """Left scalar multiple q*M (entrywise q * m_ij)."""
        if isinstance(other, (int, float)):
            return QMatrix(self._a * other, self._b * other, copy=False)
        q = other if isinstance(other, Quaternion) else Quaternion._coerce(other)
        if q is None:
            return NotImplemented
        qa = complex(q.x0, q.x1)
        qb = complex(q.x2, q.x3)
        a = qa * self._a - qb * np.conj(self._b)
        b = qa * self._b + qb * np.conj(self._a)
        return QMatrix(a, b, copy=False)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return QMatrix(self._a / other, self._b / other, copy=False)
        return NotImplemented

    def adjoint(self):
        """Conjugate transpose M*."""
        return QMatrix(np.conj(self._a).T, -self._b.T, copy=False)

    def conj_entries(self):
        """Entrywise quaternion conjugate (no transpose)."""
        return QMatrix(np.conj(self._a), -self._b, copy=False)

    def norm(self):
        """Frobenius norm."""
        return math.sqrt(float((np.abs(self._a) ** 2 + np.abs(self._b) ** 2).sum()))

    def norm2(self):
        """Operator (spectral) norm, equal to that of the complex adjoint."""
        if self.rows == 0 or self.cols == 0:
            return 0.0
        return float(np.linalg.norm(self.complex_adjoint(), 2))

    def herm_defect(self):
        return (self - self.adjoint()).norm()

    def complex_adjoint(self):
        """The 2r x 2c complex adjoint chi(M)."""
        return np.block([[self._a, self._b],
                         [-np.conj(self._b), np.conj(self._a)]])

    def allclose(self, other, tol=1e-12):
        other = as_qmatrix(other)
        return (self - other).norm() <= tol * (1.0 + self.norm())

    def __repr__(self):
        return "QMatrix(%dx%d)" % self.shape

    # -- serialization ---------------------------------------------------------------

    def to_dict(self):
        comp = self.to_components().reshape(-1, 4)
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[float(v) for v in row] for row in comp],
        }

    @classmethod
    def from_dict(cls, d):
        rows, cols = int(d["rows"]), int(d["cols"])
        entries = d["entries"]
        if len(entries) != rows * cols:
            raise ShapeError("expected %d entries, got %d" % (rows * cols, len(entries)))
        comp = np.asarray(entries, dtype=float).reshape(rows, cols, 4)
        return cls.from_components(comp[..., 0], comp[..., 1], comp[..., 2], comp[..., 3])


def as_qmatrix(x):
    """Coerce quaternions/reals/complex to a 1x1 QMatrix; pass QMatrix through."""
    if isinstance(x, QMatrix):
        return x
    if isinstance(x, Quaternion):
        return QMatrix.scalar(x)
    q = Quaternion._coerce(x)
    if q is not None:
        return QMatrix.scalar(q)
    raise TypeError("cannot interpret %r as a quaternionic matrix" % (x,))


def complex_adjoint(M):
    return as_qmatrix(M).complex_adjoint()


def from_complex_adjoint(chi):
    """Inverse of the embedding; averages the redundant blocks."""
    chi = np.asarray(chi, dtype=complex)
    if chi.ndim != 2 or chi.shape[0] % 2 or chi.shape[1] % 2:
        raise ShapeError("complex adjoint must have even dimensions")
    r, c = chi.shape[0] // 2, chi.shape[1] // 2
    a = 0.5 * (chi[:r, :c] + np.conj(chi[r:, c:]))
    b = 0.5 * (chi[:r, c:] - np.conj(chi[r:, :c]))
    return QMatrix(a, b, copy=False)


def _columns_from_complex(u, n):
    """Map complex 2n-vectors (columns of u) back to quaternionic columns."""
    u = np.asarray(u, dtype=complex)
    if u.ndim == 1:
        u = u[:, None]
    return QMatrix(u[:n, :], -np.conj(u[n:, :]), copy=False)


def hstack(mats):
    mats = [as_qmatrix(m) for m in mats]
    return QMatrix(np.concatenate([m._a for m in mats], axis=1),
                   np.concatenate([m._b for m in mats], axis=1), copy=False)


def vstack(mats):
    mats = [as_qmatrix(m) for m in mats]
    return QMatrix(np.concatenate([m._a for m in mats], axis=0),
                   np.concatenate([m._b for m in mats], axis=0), copy=False)


def block(rows):
    """Assemble a block matrix from a nested list of QMatrix blocks."""
    return vstack([hstack(r) for r in rows])


def matrix_power(A, k):
    A = as_qmatrix(A)
    if not A.is_square():
        raise ShapeError("matrix power needs a square matrix")
    out = QMatrix.eye(A.rows)
    for _ in range(k):
        out = out @ A
    return out


def singular_values(M):
    return np.linalg.svd(as_qmatrix(M).complex_adjoint(), compute_uv=False)


def smallest_singular_value(M):
    s = singular_values(M)
    return float(s[-1]) if len(s) else 0.0


def is_invertible(M, rtol=1e-10):
    s = singular_values(M)
    return bool(len(s)) and s[-1] > rtol * max(1.0, s[0])


def solve(M, rhs, rtol=1e-12):
    """Solve M X = rhs over the quaternions.

    Parameters
    ----------
    M : QMatrix, square
    rhs : QMatrix with matching row count
    rtol : float
        Rank threshold relative to the operator norm of M; below it the
        system is declared singular.

    Returns
    -------
    QMatrix solution X.

    Raises
    ------
    SingularMatrixError
        If chi(M) is rank deficient at the stated tolerance.
    """
    M = as_qmatrix(M)
    rhs = as_qmatrix(rhs)
    if not M.is_square():
        raise ShapeError("solve needs a square matrix, got %s" % (M.shape,))
    if rhs.rows != M.rows:
        raise ShapeError("rhs has %d rows, expected %d" % (rhs.rows, M.rows))
    chi = M.complex_adjoint()
    sv = np.linalg.svd(chi, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= rtol * sv[0]:
        raise SingularMatrixError(
            "matrix is singular at relative tolerance %g (sv ratio %g)"
            % (rtol, 0.0 if sv[0] == 0.0 else sv[-1] / sv[0]))
    x = np.linalg.solve(chi, rhs.complex_adjoint())
    return from_complex_adjoint(x)


def solve_right(M, rhs, rtol=1e-12):
    """Solve X M = rhs (a right division rhs * M^{-1})."""
    return solve(as_qmatrix(M).adjoint(), as_qmatrix(rhs).adjoint(), rtol).adjoint()


def inverse(M, rtol=1e-12):
    M = as_qmatrix(M)
    return solve(M, QMatrix.eye(M.rows), rtol)


def char_operator(T, s):
    """Q_s(T) = T^2 - 2*Re(s)*T + |s|^2 * I."""
    T = as_qmatrix(T)
    if not T.is_square():
        raise ShapeError("char_operator needs a square matrix")
    return T @ T - (2.0 * s.x0) * T + s.norm_sq() * QMatrix.eye(T.rows)


def s_eigencheck(T, v, s):
    """Relative residual ||Q_s(T) v|| / ||v|| (zero iff s is a right eigenvalue for v)."""
    v = as_qmatrix(v)
    nv = v.norm()
    if nv == 0.0:
        raise ZeroVectorError("eigencheck of the zero vector")
    return (char_operator(T, s) @ v).norm() / nv


# -- Gram-Schmidt machinery ---------------------------------------------------------


def gram_schmidt_columns(M, rtol=1e-10):
    """Pivoted modified Gram-Schmidt over the quaternions.

    Returns (Q, rank) where the columns of Q are orthonormal under the
    Hermitian inner product [u, v] = v* u and span the column space of M.
    """
    M = as_qmatrix(M)
    cols = [M.column(j) for j in range(M.cols)]
    scale = max([c.norm() for c in cols], default=0.0)
    chosen = []
    while cols:
        norms = [c.norm() for c in cols]
        k = int(np.argmax(norms))
        if norms[k] <= rtol * (scale if scale > 0 else 1.0):
            break
        v = cols.pop(k)
        # second orthogonalization pass against the accepted columns
        for q in chosen:
            v = v - q * (q.adjoint() @ v).item()
        nv = v.norm()
        if nv <= rtol * (scale if scale > 0 else 1.0):
            continue
        q = v * (1.0 / nv)
        chosen.append(q)
        cols = [c - q * (q.adjoint() @ c).item() for c in cols]
    if not chosen:
        return QMatrix.zeros(M.rows, 0), 0
    return hstack(chosen), len(chosen)


def indefinite_gram_schmidt(M, J, neutral_tol=1e-10):
    """Orthonormalize columns under the indefinite metric [u, v] = v* J u.

    Pivots on the largest |self inner product| at every step.  Returns
    (Y, signs) with Y* J Y = diag(signs), positive columns first.

    Raises
    ------
    CompletionFailureError
        If the best remaining candidate is numerically neutral.
    """
    M = as_qmatrix(M)
    J = as_qmatrix(J)
    cols = [M.column(j) for j in range(M.cols)]
    scale = max([c.norm() for c in cols], default=1.0)
    chosen = []
    signs = []
    while cols:
        ips = [((c.adjoint() @ (J @ c)).item().x0) for c in cols]
        k = int(np.argmax(np.abs(ips)))
        ip = ips[k]
        if abs(ip) <= neutral_tol * (scale ** 2):
            raise CompletionFailureError(
                "neutral direction met in indefinite Gram-Schmidt "
                "(|[v,v]| = %g)" % abs(ip))
        v = cols.pop(k)
        s = 1.0 if ip > 0 else -1.0
        q = v * (1.0 / math.sqrt(abs(ip)))
        chosen.append(q)
        signs.append(s)
        cols = [c - q * ((q.adjoint() @ (J @ c)).item() * s) for c in cols]
    order = sorted(range(len(chosen)), key=lambda i: -signs[i])
    Y = hstack([chosen[i] for i in order]) if chosen else QMatrix.zeros(M.rows, 0)
    return Y, [signs[i] for i in order]


def null_basis(M, rtol=1e-10):
    """Quaternionic orthonormal basis of ker(M) (possibly zero columns)."""
    M = as_qmatrix(M)
    chi = M.complex_adjoint()
    u, sv, vh = np.linalg.svd(chi)
    zero = sv <= rtol * (sv[0] if len(sv) and sv[0] > 0 else 1.0)
    take = [i for i in range(vh.shape[0]) if i >= len(sv) or zero[i]]
    if not take:
        return QMatrix.zeros(M.cols, 0)
    cand = _columns_from_complex(vh.conj().T[:, take], M.cols)
    basis, _ = gram_schmidt_columns(cand, rtol=1e-8)
    return basis


def range_basis(M, threshold):
    """Orthonormal basis of ran(M); rank counts singular values > threshold.

    The threshold is absolute, applied to the singular values of chi(M)
    (which each appear twice); the quaternionic rank is half the count.
    """
    M = as_qmatrix(M)
    u, sv, vh = np.linalg.svd(M.complex_adjoint())
    big = int(np.sum(sv > threshold))
    rank = big // 2
    if 2 * rank != big:
        rank = int(round(big / 2.0))
    if rank == 0:
        return QMatrix.zeros(M.rows, 0), 0
    cand = _columns_from_complex(u[:, :2 * rank], M.rows)
    basis, got = gram_schmidt_columns(cand, rtol=1e-8)
    if got > rank:
        basis = hstack([basis.column(j) for j in range(rank)])
    return basis, rank


# -- spectra -------------------------------------------------------------------------


def _cluster_indices(keys, tols):
    """Union-find clustering of 2-d points with per-pair tolerances."""
    n = len(keys)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            t = max(tols[i], tols[j])
            if abs(keys[i][0] - keys[j][0]) <= t and abs(keys[i][1] - keys[j][1]) <= t:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def right_eigen_spheres(T, cluster_tol=1e-8):
    """Eigenvalue spheres of the right spectrum with multiplicities.

    Eigenvalues of chi(T) come in conjugate pairs; clustering the points
    (Re, |Im|) and halving the cluster sizes yields one entry per sphere.
    Real eigenvalues occur with even chi-multiplicity and contribute half.

    Returns a list of (Sphere, multiplicity), sorted by (re, im).
    """
    T = as_qmatrix(T)
    if not T.is_square():
        raise ShapeError("spectrum of a non-square matrix")
    w = np.linalg.eigvals(T.complex_adjoint())
    keys = [(float(z.real), float(abs(z.imag))) for z in w]
    tols = [cluster_tol * (1.0 + abs(z)) for z in w]
    out = []
    for grp in _cluster_indices(keys, tols):
        re = float(np.mean([keys[i][0] for i in grp]))
        im = float(np.mean([keys[i][1] for i in grp]))
        mult = max(1, int(round(len(grp) / 2.0)))
        out.append((Sphere(re, im), mult))
    out.sort(key=lambda t: (t[0].re, t[0].im_mag))
    return out


def right_eigen_decomposition(T, cluster_tol=1e-8, cond_tol=1e-8):
    """Spheres, slice representatives and eigenvector bases of a square matrix.

    Returns (parts, V) where parts is a list of (Sphere, rep, basis): rep is
    the representative eigenvalue in the i-slice with nonnegative imaginary
    part, and basis an n x mult QMatrix with T basis = basis * rep columnwise.
    V stacks all bases.

    Raises
    ------
    NotDiagonalizableError
        If eigenvectors fail to span (numerically defective input).
    """
    T = as_qmatrix(T)
    n = T.rows
    if not T.is_square():
        raise ShapeError("eigendecomposition of a non-square matrix")
    w, U = np.linalg.eig(T.complex_adjoint())
    keys = [(float(z.real), float(abs(z.imag))) for z in w]
    tols = [cluster_tol * (1.0 + abs(z)) for z in w]
    parts = []
    for grp in _cluster_indices(keys, tols):
        re = float(np.mean([keys[i][0] for i in grp]))
        im = float(np.mean([keys[i][1] for i in grp]))
        mult = len(grp) // 2
        if mult == 0:
            raise NotDiagonalizableError("eigenvalue cluster of odd size")
        if im <= cluster_tol * (1.0 + math.hypot(re, im)):
            # real sphere: the eigenspace is a genuine quaternionic subspace
            cand = _columns_from_complex(U[:, grp], n)
            basis, got = gram_schmidt_columns(cand, rtol=1e-8)
            rep = Quaternion(re)
            im = 0.0
        else:
            # nonreal: stay inside the complex lambda-eigenspace (a C_I-module,
            # not an H-subspace) and orthonormalize over C before mapping back
            pos = [i for i in grp if w[i].imag > 0]
            if len(pos) != mult:
                raise NotDiagonalizableError("unbalanced conjugate eigenvalue pairs")
            q, r = np.linalg.qr(U[:, pos])
            diag = np.abs(np.diag(r))
            got = int(np.sum(diag > 1e-8 * (diag.max() if diag.size else 1.0)))
            basis = _columns_from_complex(q[:, :got], n)
            rep = Quaternion(re, im)
        if got < mult:
            raise NotDiagonalizableError(
                "eigenspace dimension %d below multiplicity %d" % (got, mult))
        parts.append((Sphere(re, im), rep, basis))
    parts.sort(key=lambda t: (t[0].re, t[0].im_mag))
    if sum(p[2].cols for p in parts) != n:
        raise NotDiagonalizableError("eigenvectors do not span")
    V = hstack([p[2] for p in parts])
    sv = singular_values(V)
    if sv[-1] <= cond_tol * sv[0]:
        raise NotDiagonalizableError(
            "eigenvector basis numerically singular (sv ratio %g)" % (sv[-1] / sv[0]))
    return parts, V


@dataclass
class HermSpectrum:
    """Eigenvalues (ascending, one per quaternionic multiplicity) and signature."""

    eigenvalues: list
    signature: tuple  # (positive, negative, zero) counts

    @property
    def negatives(self):
        return self.signature[1]


def herm_eig(H, tol=None):
    """Spectral data and congruence factor of a Hermitian quaternionic matrix.

    Parameters
    ----------
    H : QMatrix, Hermitian within 1e-10 * (1 + ||H||).
    tol : float, optional
        Threshold below which |eigenvalue| counts as zero.  Defaults to
        1e-8 * max|eigenvalue|.

    Returns
    -------
    (HermSpectrum, V) with H = V diag(I_t, -I_r, 0_s) V*.  V carries the
    factors sqrt(|eigenvalue|); its columns are ordered positive, negative,
    zero, and V is always invertible.

    Raises
    ------
    NotHermitianError if the input is not Hermitian at tolerance.
    """
    H = as_qmatrix(H)
    if not H.is_square():
        raise ShapeError("herm_eig needs a square matrix")
    if H.herm_defect() > 1e-10 * (1.0 + H.norm()):
        raise NotHermitianError("matrix is not Hermitian (defect %g)" % H.herm_defect())
    n = H.rows
    w, U = np.linalg.eigh(H.complex_adjoint())
    scale = float(np.max(np.abs(w))) if len(w) else 0.0
    if tol is None:
        tol = 1e-8 * scale
    # consecutive grouping: chi eigenvalues occur in near-exact duplicates
    gap = 1e-12 * (1.0 + scale)
    groups = []
    start = 0
    for i in range(1, 2 * n + 1):
        if i == 2 * n or w[i] - w[i - 1] > gap:
            groups.append(list(range(start, i)))
            start = i
    # every quaternionic eigenvalue shows up twice, so odd groups mean the
    # gap split a duplicate pair: merge such a group with its closer neighbour
    while any(len(g) % 2 for g in groups):
        i = next(k for k, g in enumerate(groups) if len(g) % 2)
        if i + 1 < len(groups) and (i == 0 or
                w[groups[i + 1][0]] - w[groups[i][-1]]
                <= w[groups[i][0]] - w[groups[i - 1][-1]]):
            groups[i] = groups[i] + groups.pop(i + 1)
        else:
            groups[i - 1] = groups[i - 1] + groups.pop(i)
    eigs = []
    plus, minus, zero = [], [], []
    for grp in groups:
        lam = float(np.mean(w[grp]))
        mult = len(grp) // 2
        cand = _columns_from_complex(U[:, grp], n)
        basis, got = gram_schmidt_columns(cand, rtol=1e-8)
        if got < mult:
            raise NotHermitianError("eigenspace extraction failed (defective input?)")
        cols = [basis.column(j) for j in range(mult)]
        eigs.extend([lam] * mult)
        for c in cols:
            if lam > tol:
                plus.append((lam, c * math.sqrt(lam)))
            elif lam < -tol:
                minus.append((lam, c * math.sqrt(-lam)))
            else:
                zero.append((lam, c))
    plus.sort(key=lambda t: -t[0])
    minus.sort(key=lambda t: t[0])
    ordered = [c for _, c in plus] + [c for _, c in minus] + [c for _, c in zero]
    V = hstack(ordered)
    spec = HermSpectrum(sorted(eigs), (len(plus), len(minus), len(zero)))
    return spec, V


def signature_blocks(t, r, s, n=None):
    """diag(I_t, -I_r, 0_s) as a QMatrix."""
    vals = [1.0] * t + [-1.0] * r + [0.0] * s
    return QMatrix.diag([Quaternion(v) for v in vals])


def is_signature_matrix(sig, tol=1e-8):
    """Hermitian involution test: sig = sig* and sig^2 = I within tol."""
    sig = as_qmatrix(sig)
    if not sig.is_square():
        return False
    n = sig.rows
    return (sig.herm_defect() <= tol * (1.0 + sig.norm())
            and (sig @ sig - QMatrix.eye(n)).norm() <= tol * (1.0 + sig.norm()))
