"""Matrix arguments: banded/sparse Hermitian storage, test-matrix
constructors, spectral enclosures and Kronecker-sum index arithmetic.

All row/column indices in the public interface are 1-based, matching the
usual linear-algebra convention used throughout the package (columns such
as t=127 or t=94 read the same in code, CSV output and tests).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
import scipy.io
import scipy.sparse


class MatrixFormatError(ValueError):
    """Raised when an input file cannot be parsed as a Hermitian matrix."""


@dataclass(frozen=True, eq=False)
class BandedHermitianMatrix:
    """Hermitian band storage: ``diagonals[j]`` holds the j-th superdiagonal
    (length n - j); subdiagonals are implied by conjugate symmetry."""

    n: int
    beta: int
    diagonals: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be positive")
        if self.beta < 0 or self.beta >= self.n:
            raise ValueError(f"bandwidth {self.beta} invalid for order {self.n}")
        if len(self.diagonals) != self.beta + 1:
            raise ValueError("need one stored diagonal per offset 0..beta")
        diags = []
        for j, d in enumerate(self.diagonals):
            arr = np.asarray(d)
            if arr.shape != (self.n - j,):
                raise ValueError(f"diagonal {j} must have length {self.n - j}")
            if j == 0:
                if np.iscomplexobj(arr) and np.max(np.abs(arr.imag)) > 0:
                    raise ValueError("Hermitian matrices have a real main diagonal")
                arr = arr.real.astype(float)
            elif not np.iscomplexobj(arr):
                arr = arr.astype(float)
            diags.append(arr)
        object.__setattr__(self, "diagonals", tuple(diags))

    @property
    def is_complex(self):
        return any(np.iscomplexobj(d) for d in self.diagonals[1:])

    def entry(self, i, j):
        """Entry (i, j), 1-based."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"index ({i}, {j}) outside 1..{self.n}")
        off = j - i
        if abs(off) > self.beta:
            return 0.0
        if off >= 0:
            return self.diagonals[off][i - 1]
        return np.conj(self.diagonals[-off][j - 1])

    def toarray(self):
        dtype = complex if self.is_complex else float
        a = np.zeros((self.n, self.n), dtype=dtype)
        idx = np.arange(self.n)
        a[idx, idx] = self.diagonals[0]
        for j in range(1, self.beta + 1):
            r = np.arange(self.n - j)
            a[r, r + j] = self.diagonals[j]
            a[r + j, r] = np.conj(self.diagonals[j])
        return a

    def diagonal_max(self):
        return float(np.max(self.diagonals[0]))

    def pattern_neighbors(self, i, drop_tol=0.0):
        """Off-diagonal neighbors of node i (1-based) in the stored pattern;
        entries with |value| <= drop_tol are not edges."""
        out = []
        for j in range(1, self.beta + 1):
            if i + j <= self.n and abs(self.diagonals[j][i - 1]) > drop_tol:
                out.append(i + j)
            if i - j >= 1 and abs(self.diagonals[j][i - j - 1]) > drop_tol:
                out.append(i - j)
        return out


def banded_from_stencil(stencil, n):
    """Banded Hermitian Toeplitz matrix from an odd-length stencil
    ``(c_-beta, ..., c_0, ..., c_beta)`` with c_{-j} = conj(c_j)."""
    stencil = [complex(s) if isinstance(s, complex) else float(s) for s in stencil]
    if len(stencil) % 2 == 0:
        raise ValueError("stencil length must be odd")
    beta = (len(stencil) - 1) // 2
    if n < 2 * beta + 1:
        raise ValueError(f"order {n} too small for bandwidth {beta}")
    mid = beta
    for j in range(1, beta + 1):
        if not np.isclose(stencil[mid - j], np.conj(stencil[mid + j])):
            raise ValueError("stencil is not Hermitian")
    diags = tuple(np.full(n - j, stencil[mid + j]) for j in range(beta + 1))
    return BandedHermitianMatrix(n=n, beta=beta, diagonals=diags)


_TEST_STENCILS = {
    "tridiag": (-1.0, 4.0, -1.0),
    "pentadiag": (-0.5, -1.0, 4.0, -1.0, -0.5),
}


def make_test_matrix(kind, n):
    """The two standard test matrices: tridiag(-1,4,-1) and
    pentadiag(-0.5,-1,4,-1,-0.5)."""
    if kind not in _TEST_STENCILS:
        raise ValueError(f"unknown test matrix kind {kind!r}")
    stencil = _TEST_STENCILS[kind]
    least = len(stencil)
    if n < least:
        raise ValueError(f"{kind} requires n >= {least}, got {n}")
    return banded_from_stencil(stencil, n)


def parse_matrix_spec(spec, n=None):
    """Build a matrix from a generator string or a Matrix Market path.

    Generator strings: ``tridiag``, ``pentadiag`` (standard stencils) or
    ``tridiag:a,b,c`` / ``pentadiag:a,b,c,d,e`` with explicit values; these
    require ``n``.  Anything else is treated as a file path.
    """
    head, _, rest = spec.partition(":")
    if head in _TEST_STENCILS:
        if n is None:
            raise ValueError("generator strings require the matrix order n")
        if rest:
            values = [float(v) for v in rest.split(",")]
            expected = {"tridiag": 3, "pentadiag": 5}[head]
            if len(values) != expected:
                raise ValueError(f"{head} generator takes {expected} values")
            return banded_from_stencil(values, n)
        return make_test_matrix(head, n)
    return load_matrix_market(spec)


@dataclass(frozen=True, eq=False)
class SparseHermitianMatrix:
    """General Hermitian sparsity: CSR storage with a symmetric pattern."""

    n: int
    matrix: object  # scipy CSR

    def __post_init__(self):
        m = scipy.sparse.csr_matrix(self.matrix)
        if m.shape != (self.n, self.n):
            raise ValueError("shape disagrees with declared order")
        skew = m - m.conj().T
        scale = max(1.0, abs(m).max() if m.nnz else 1.0)
        if skew.nnz and abs(skew).max() > 1e-12 * scale:
            raise ValueError("matrix is not Hermitian")
        object.__setattr__(self, "matrix", m)

    def toarray(self):
        a = self.matrix.toarray()
        return a.real if not np.iscomplexobj(a) or np.max(np.abs(a.imag)) == 0 else a

    def diagonal_max(self):
        return float(np.max(self.matrix.diagonal().real))

    @property
    def bandwidth(self):
        coo = self.matrix.tocoo()
        if coo.nnz == 0:
            return 0
        return int(np.max(np.abs(coo.row - coo.col)))

    def pattern_neighbors(self, i, drop_tol=0.0):
        row = self.matrix.getrow(i - 1)
        out = []
        for j, v in zip(row.indices, row.data):
            if j != i - 1 and abs(v) > drop_tol:
                out.append(int(j) + 1)
        return out


def load_matrix_market(path):
    """Read a symmetric/hermitian Matrix Market coordinate file."""
    try:
        rows, cols, _, fmt, _, symmetry = scipy.io.mminfo(path)
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise MatrixFormatError(f"cannot parse {path}: {exc}") from exc
    if symmetry not in ("symmetric", "hermitian"):
        raise MatrixFormatError(
            f"{path}: header declares {symmetry!r}; a symmetric or hermitian "
            "qualifier is required")
    if rows != cols:
        raise MatrixFormatError(f"{path}: matrix is not square ({rows}x{cols})")
    if fmt != "coordinate":
        raise MatrixFormatError(f"{path}: only coordinate format is supported")
    mat = scipy.io.mmread(path).tocsr()
    return SparseHermitianMatrix(n=rows, matrix=mat)


@dataclass(frozen=True)
class SpectralInterval:
    """Enclosure [lambda_min, lambda_max] of the spectrum with provenance."""

    lambda_min: float
    lambda_max: float
    source: str = "exact"

    def __post_init__(self):
        if self.lambda_min > self.lambda_max:
            raise ValueError("lambda_min exceeds lambda_max")
        if self.source not in ("exact", "gershgorin"):
            raise ValueError(f"unknown source {self.source!r}")

    @property
    def rho(self):
        return (self.lambda_max - self.lambda_min) / 4.0

    @property
    def kappa(self):
        if self.lambda_min <= 0:
            raise ValueError("condition number needs a positive definite interval")
        return self.lambda_max / self.lambda_min

    @property
    def is_positive_definite(self):
        return self.lambda_min > 0


def _gershgorin_banded(M):
    radius = np.zeros(M.n)
    for j in range(1, M.beta + 1):
        a = np.abs(M.diagonals[j])
        radius[: M.n - j] += a
        radius[j:] += a
    center = M.diagonals[0]
    return float(np.min(center - radius)), float(np.max(center + radius))


def _gershgorin_sparse(M):
    m = M.matrix
    absrow = np.asarray(abs(m).sum(axis=1)).ravel()
    diag = m.diagonal().real
    radius = absrow - np.abs(diag)
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def spectral_interval(M, mode="exact"):
    """Spectral enclosure of a Hermitian matrix.

    ``exact`` uses a dense symmetric eigensolve (intended for desk-scale
    orders); ``gershgorin`` returns the disc enclosure, never tighter than
    exact but computed without densifying.
    """
    if mode == "exact":
        w = np.linalg.eigvalsh(M.toarray())
        return SpectralInterval(float(w[0]), float(w[-1]), source="exact")
    if mode == "gershgorin":
        if isinstance(M, BandedHermitianMatrix):
            lo, hi = _gershgorin_banded(M)
        else:
            lo, hi = _gershgorin_sparse(M)
        return SpectralInterval(lo, hi, source="gershgorin")
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True, eq=False)
class KroneckerSum:
    """Kronecker sum of banded Hermitian factors.

    Multi-indices pair component L with ``factors[L-1]`` and are linearized
    with the first component varying fastest, so for two factors of order n
    the linear index is k = k1 + (k2 - 1) n.  With this convention
    k=94, n=20 corresponds to (k1, k2) = (14, 5) and the dense assembly
    satisfies exp(-tau A) entry (k, t) = prod_L exp(-tau M_L)[k_L, t_L].
    """

    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ValueError("a Kronecker sum needs at least two factors")
        for f in self.factors:
            if not isinstance(f, BandedHermitianMatrix):
                raise TypeError("factors must be BandedHermitianMatrix")

    @property
    def orders(self):
        return tuple(f.n for f in self.factors)

    @property
    def total_order(self):
        return math.prod(self.orders)

    @property
    def strides(self):
        s, out = 1, []
        for n in self.orders:
            out.append(s)
            s *= n
        return tuple(out)

    def linearize(self, multi):
        """1-based multi-index -> 1-based linear index."""
        if len(multi) != len(self.factors):
            raise ValueError("component count disagrees with factor count")
        lin = 0
        for comp, n, stride in zip(multi, self.orders, self.strides):
            if not (1 <= comp <= n):
                raise IndexError(f"component {comp} outside 1..{n}")
            lin += (comp - 1) * stride
        return lin + 1

    def delinearize(self, k):
        """1-based linear index -> 1-based multi-index tuple."""
        if not (1 <= k <= self.total_order):
            raise IndexError(f"linear index {k} outside 1..{self.total_order}")
        rem = k - 1
        out = []
        for n in self.orders:
            out.append(rem % n + 1)
            rem //= n
        return tuple(out)

    def toarray(self, max_order=4096):
        """Dense assembly; guarded since it is only meant for identity and
        dominance checks at desk scale."""
        if self.total_order > max_order:
            raise ValueError(
                f"dense assembly capped at order {max_order}; "
                f"requested {self.total_order}")
        eyes = [np.eye(n) for n in self.orders]
        acc = np.zeros((self.total_order, self.total_order))
        for pos, f in enumerate(self.factors):
            mats = list(eyes)
            mats[pos] = f.toarray()
            acc = acc + functools.reduce(np.kron, mats[::-1])
        return acc


def kron_product_dense(blocks):
    """Dense Kronecker product paired with the same first-component-fastest
    linearization used by :class:`KroneckerSum`."""
    return functools.reduce(np.kron, [np.asarray(b) for b in blocks][::-1])
