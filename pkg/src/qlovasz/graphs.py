"""Operator subspaces under the Hilbert-Schmidt inner product.

A subspace is stored as an orthonormal basis of matrices. Rank decisions
are made from the singular values of the stacked, vectorized spanning set.
"""
from dataclasses import dataclass

import numpy as np

from .errors import AllZeroInput, DimensionMismatch

RANK_CUTOFF = 1e-10
MEMBER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class OperatorSubspace:
    shape: tuple
    basis: np.ndarray  # (k, rows, cols), orthonormal under tr(a^dag b)
    label: str = ""

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def ambient_dim(self):
        return self.shape[0] * self.shape[1]

    def vectors(self):
        return self.basis.reshape(self.dim, -1)

    def projector(self):
        """Matrix of the orthogonal projection acting on vectorized operators."""
        v = self.vectors()
        return v.T @ v.conj()

    def project(self, m):
        v = self.vectors()
        coeffs = v.conj() @ np.asarray(m).reshape(-1)
        return (coeffs @ v).reshape(self.shape)


def _from_vectors(vecs, shape, label):
    return OperatorSubspace(tuple(shape), np.asarray(vecs).reshape(-1, *shape), label)


def span_of(ops, label="", cutoff=RANK_CUTOFF):
    ops = [np.asarray(o, dtype=complex) for o in ops]
    if not ops:
        raise AllZeroInput("span of an empty list")
    shape = ops[0].shape
    if any(o.shape != shape for o in ops):
        raise DimensionMismatch("operators in a span must share one shape")
    a = np.array([o.reshape(-1) for o in ops])
    _, s, vh = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0:
        raise AllZeroInput("all operators are zero")
    r = int((s > cutoff * s[0]).sum())
    return _from_vectors(vh[:r], shape, label)


def full_space(dim_out, dim_in=None, label="full"):
    dim_in = dim_out if dim_in is None else dim_in
    return _from_vectors(np.eye(dim_out * dim_in, dtype=complex), (dim_out, dim_in), label)


def ncgraph(ch):
    """S = span{E_j^dag E_k}."""
    ops = [a.conj().T @ b for a in ch.kraus for b in ch.kraus]
    return span_of(ops, label=f"S({ch.label})")


def ncbigraph(ch):
    """K = span{E_k}."""
    return span_of(list(ch.kraus), label=f"K({ch.label})")


def complement(s):
    n = s.ambient_dim
    if s.dim == 0:
        return full_space(*s.shape, label=f"{s.label}^perp")
    # null space of the stacked basis rows
    _, _, vh = np.linalg.svd(s.vectors(), full_matrices=True)
    return _from_vectors(vh[s.dim:n], s.shape, f"{s.label}^perp")


def residual(s, m):
    m = np.asarray(m)
    if m.shape != tuple(s.shape):
        raise DimensionMismatch(f"operator of shape {m.shape} vs subspace of {s.shape}")
    return float(np.linalg.norm(m - s.project(m)))


def contains(s, m, tol=MEMBER_TOL):
    return residual(s, m) <= tol * (1.0 + np.linalg.norm(m))


def same_subspace(s1, s2, tol=1e-9):
    if s1.shape != s2.shape or s1.dim != s2.dim:
        return False
    return bool(np.abs(s1.projector() - s2.projector()).max() <= tol)


def is_adjoint_closed(s):
    return all(contains(s, b.conj().T) for b in s.basis)


def _orthonormal_real_combos(mats, cutoff=RANK_CUTOFF):
    """Orthonormal basis of the real span of Hermitian matrices, taken via a real SVD."""
    if not mats:
        return []
    v = np.array([m.reshape(-1) for m in mats])
    vr = np.hstack([v.real, v.imag])
    _, s, vh = np.linalg.svd(vr, full_matrices=False)
    if s[0] == 0:
        return []
    r = int((s > cutoff * s[0]).sum())
    half = v.shape[1]
    out = vh[:r, :half] + 1j * vh[:r, half:]
    return [o.reshape(mats[0].shape) for o in out]


def hermitian_basis(s):
    """Orthonormal basis of the Hermitian part of an adjoint-closed subspace.

    Its real span has the same dimension as ``s`` and its complex span is ``s``.
    When ``s`` is also closed under entrywise conjugation, every element is
    either real symmetric or purely imaginary antisymmetric.
    """
    herm = []
    for b in s.basis:
        herm.append((b + b.conj().T) / 2)
        herm.append((b - b.conj().T) / 2j)
    conj_closed = all(contains(s, b.conj()) for b in s.basis)
    if conj_closed:
        real_group = _orthonormal_real_combos([h.real.astype(complex) for h in herm])
        imag_group = _orthonormal_real_combos([1j * h.imag for h in herm])
        # clear roundoff so each element is exactly real or exactly imaginary
        basis = [b.real.astype(complex) for b in real_group] + [1j * b.imag for b in imag_group]
    else:
        basis = _orthonormal_real_combos(herm)
    return basis


def standard_hermitian_basis(d):
    """Orthonormal Hermitian basis of d x d matrices: real symmetric units first, then imaginary ones."""
    out = []
    for i in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[i, i] = 1
        out.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = m[j, i] = 1 / np.sqrt(2)
            out.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = -1j / np.sqrt(2)
            m[j, i] = 1j / np.sqrt(2)
            out.append(m)
    return out
