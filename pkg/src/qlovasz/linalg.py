"""Dense complex linear algebra on numpy arrays.

Composite systems use the A-major convention: basis index (i_A, i_B) maps to
``i_A * dim_B + i_B``, which is what ``np.kron`` produces.
"""
import numpy as np

from .errors import DimensionMismatch, NonHermitianError

HERMITIAN_TOL = 1e-12


def as_matrix(m):
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {m.shape}")
    return m.astype(complex) if not np.iscomplexobj(m) else m


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = 1.0 + (np.abs(m).max() if m.size else 0.0)
    return bool(np.abs(m - m.conj().T).max(initial=0.0) <= tol * scale)


def dagger(m):
    return np.asarray(m).conj().T


def kron(a, b):
    return np.kron(a, b)


def ket(index, dim):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def ketbra(i, j, dim):
    """Matrix unit |i><j| on a ``dim``-dimensional space."""
    m = np.zeros((dim, dim), dtype=complex)
    m[i, j] = 1.0
    return m


def proj(v):
    v = np.asarray(v)
    return np.outer(v, v.conj())


def max_entangled(dim):
    """Unnormalized |Phi> = sum_i |ii>."""
    return np.eye(dim, dtype=complex).reshape(dim * dim)


def partial_trace(m, dim_a, dim_b, over):
    """Trace out subsystem ``over`` ('A' or 'B') of an operator on A (x) B."""
    m = np.asarray(m)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise DimensionMismatch(f"matrix of shape {m.shape} is not {n}x{n}")
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if over == "A":
        return np.einsum("ijik->jk", t)
    if over == "B":
        return np.einsum("ijkj->ik", t)
    raise ValueError(f"over must be 'A' or 'B', got {over!r}")


def hermitian_eig(m):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues ascending."""
    m = np.asarray(m)
    if not is_hermitian(m):
        raise NonHermitianError("hermitian_eig requires a Hermitian matrix")
    # symmetrize away the roundoff allowed by is_hermitian
    return np.linalg.eigh((m + m.conj().T) / 2)


def min_eig(m):
    m = np.asarray(m)
    return float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])


def hs_inner(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(a, b))


def operator_norm(m):
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def support_projector(m, rel_cutoff=1e-9):
    """Orthogonal projector onto eigenvectors of PSD ``m`` above ``rel_cutoff * lambda_max``."""
    w, v = hermitian_eig(m)
    keep = w > rel_cutoff * max(w[-1], 0.0)
    vs = v[:, keep]
    return vs @ vs.conj().T, int(keep.sum())
