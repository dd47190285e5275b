"""Quantum channels in Kraus form, their Choi matrices, and the channel families used here."""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import CompletenessViolation, DimensionMismatch, DomainError, NotStochastic

COMPLETENESS_TOL = 1e-10
SUPPORT_CUTOFF = 1e-9


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    dim_in: int
    dim_out: int
    kraus: tuple
    label: str = ""
    completeness_residual: float = 0.0

    def apply(self, rho):
        return sum(k @ rho @ k.conj().T for k in self.kraus)


@dataclass(frozen=True, eq=False)
class ChoiData:
    J: np.ndarray
    P: np.ndarray
    rank: int
    dim_in: int = field(default=0)
    dim_out: int = field(default=0)


def make_channel(kraus, label=""):
    ops = [linalg.as_matrix(k) for k in kraus]
    if not ops:
        raise DimensionMismatch("a channel needs at least one Kraus operator")
    shape = ops[0].shape
    if any(k.shape != shape for k in ops):
        raise DimensionMismatch("Kraus operators must share one shape")
    dim_out, dim_in = shape
    total = sum(k.conj().T @ k for k in ops)
    residual = linalg.operator_norm(total - np.eye(dim_in))
    if residual > COMPLETENESS_TOL:
        raise CompletenessViolation(residual)
    return QuantumChannel(dim_in, dim_out, tuple(ops), label, residual)


def _check_alpha(alpha):
    if not (0.0 < alpha <= np.pi / 4):
        raise DomainError(f"alpha must lie in (0, pi/4], got {alpha!r}")


def nalpha_kraus(alpha):
    """The two Kraus operators (E_alpha, D_alpha) of the qutrit family."""
    _check_alpha(alpha)
    e = np.zeros((3, 3), dtype=complex)
    e[0, 1] = np.sin(alpha)
    e[1, 2] = 1.0
    d = np.zeros((3, 3), dtype=complex)
    d[2, 1] = np.cos(alpha)
    d[1, 0] = 1.0
    return e, d


def family_nalpha(alpha):
    return make_channel(nalpha_kraus(alpha), label=f"N_alpha({alpha:.10g})")


def identity_channel(dim):
    return make_channel([np.eye(dim)], label=f"identity({dim})")


def depolarizing_channel(dim):
    """Completely depolarizing channel rho -> tr(rho) 1/d."""
    ops = [linalg.ketbra(i, j, dim) / np.sqrt(dim) for i in range(dim) for j in range(dim)]
    return make_channel(ops, label=f"depolarizing({dim})")


def tensor_channel(ch1, ch2):
    ops = [np.kron(a, b) for a in ch1.kraus for b in ch2.kraus]
    return make_channel(ops, label=f"{ch1.label}x{ch2.label}")


def check_stochastic(p, tol=1e-10):
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or p.size == 0:
        raise NotStochastic("stochastic matrix must be a nonempty 2-d array")
    if (p < 0).any():
        raise NotStochastic("negative transition probability")
    sums = p.sum(axis=0)
    if np.abs(sums - 1.0).max() > tol:
        raise NotStochastic(f"column sums deviate from 1 by {np.abs(sums - 1).max():.3e}")
    return p


def classical_channel(p, label="classical"):
    """Channel from a column-stochastic matrix p[y, x] = p(y|x)."""
    p = check_stochastic(p)
    n_y, n_x = p.shape
    ops = []
    for x in range(n_x):
        for y in range(n_y):
            if p[y, x] > 0:
                k = np.zeros((n_y, n_x), dtype=complex)
                k[y, x] = np.sqrt(p[y, x])
                ops.append(k)
    return make_channel(ops, label=label)


def pentagon_matrix():
    """p(y|x) = 1/2 for y in {x, x+1 mod 5}."""
    p = np.zeros((5, 5))
    for x in range(5):
        p[x, x] = 0.5
        p[(x + 1) % 5, x] = 0.5
    return p


def choi(ch):
    """Choi matrix sum_ij |i><j| (x) N(|i><j|) and the projector onto its support."""
    phi = linalg.max_entangled(ch.dim_in)
    # (1 (x) E_k)|Phi> for each Kraus operator
    vecs = [np.kron(np.eye(ch.dim_in), k) @ phi for k in ch.kraus]
    J = sum(np.outer(v, v.conj()) for v in vecs)
    J = (J + J.conj().T) / 2
    P, rank = linalg.support_projector(J, SUPPORT_CUTOFF)
    return ChoiData(J, P, rank, ch.dim_in, ch.dim_out)
