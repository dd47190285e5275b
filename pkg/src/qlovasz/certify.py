"""Analytic feasible points for the N_alpha family, checked without the solver.

Each witness is assembled from trigonometric expressions in alpha and its
constraints are evaluated with plain linear algebra. Keyword arguments on
the builders allow deliberate corruption of a witness so that the checks
themselves can be exercised.
"""
from dataclasses import dataclass, field

import numpy as np

from . import graphs, linalg
from .channels import _check_alpha, choi, family_nalpha, nalpha_kraus
from .linalg import ketbra, min_eig, partial_trace
from .quantities import closed_form_nalpha

RESIDUAL_TOL = 1e-9
BOUNDARY_TOL = 1e-12  # minimum-eigenvalue slack for witnesses lying on the cone boundary
OBJECTIVE_RTOL = 1e-12


@dataclass
class Check:
    description: str
    residual: float
    tol: float = RESIDUAL_TOL

    @property
    def ok(self):
        return self.residual <= self.tol


@dataclass
class WitnessReport:
    witness_name: str
    constraints_checked: list
    objective: float
    closed_form: float
    extra: dict = field(default_factory=dict)

    @property
    def objective_error(self):
        return abs(self.objective - self.closed_form)

    @property
    def max_residual(self):
        return max(c.residual for c in self.constraints_checked)

    @property
    def passed(self):
        return all(c.ok for c in self.constraints_checked) and \
            self.objective_error <= OBJECTIVE_RTOL * (1.0 + abs(self.closed_form))


def _psd(desc, m, tol=BOUNDARY_TOL):
    return Check(f"{desc} >= 0", max(0.0, -min_eig(m)), tol)


def _zero(desc, m):
    return Check(f"{desc} = 0", float(np.abs(np.asarray(m)).max(initial=0.0)))


def _k(i, j, d=3):
    return ketbra(i, j, d)


def _kk(i, j, k, l):
    """|ij><kl| on a pair of qutrits."""
    return np.kron(_k(i, k), _k(j, l))


def nalpha_support_projector(alpha):
    """P_alpha = |u><u| + |v><v| from the closed-form eigenvectors of J_alpha."""
    s, c = np.sin(alpha), np.cos(alpha)
    u = np.zeros(9)
    u[3 * 1 + 0] = s
    u[3 * 2 + 1] = 1.0
    u /= np.sqrt(1 + s * s)
    v = np.zeros(9)
    v[3 * 1 + 2] = c
    v[3 * 0 + 1] = 1.0
    v /= np.sqrt(1 + c * c)
    return linalg.proj(u) + linalg.proj(v)


# ---------------------------------------------------------------------------
# NS-assisted capacity and simulation cost


def prop1_capacity_point(alpha, perturb=0.0):
    s, c = np.sin(alpha), np.cos(alpha)
    R = 2 * (c * c * _k(0, 0) + _k(1, 1) + s * s * _k(2, 2))
    U = (c * c * _kk(0, 1, 0, 1) + s * s * _kk(2, 1, 2, 1) + _kk(1, 0, 1, 0) + _kk(1, 2, 1, 2)
         + s * (_kk(1, 0, 2, 1) + _kk(2, 1, 1, 0)) + c * (_kk(0, 1, 1, 2) + _kk(1, 2, 0, 1)))
    if perturb:
        U = U + perturb * (_kk(1, 0, 2, 1) + _kk(2, 1, 1, 0))
    return R, U


def prop1_capacity_witness(alpha, perturb=0.0):
    """(R_A, U_AB) feasible for the one-shot NS-assisted capacity SDP with tr R_A = 4."""
    _check_alpha(alpha)
    R, U = prop1_capacity_point(alpha, perturb)
    P = nalpha_support_projector(alpha)
    slack = np.kron(R, np.eye(3)) - U
    checks = [
        _psd("U_AB", U, RESIDUAL_TOL),
        _psd("R_A x 1_B - U_AB", slack, RESIDUAL_TOL),
        _zero("tr_A U_AB - 1_B", partial_trace(U, 3, 3, "A") - np.eye(3)),
        Check("tr P(R_A x 1_B - U_AB) = 0", abs(np.trace(P @ slack))),
        _zero("P(R_A x 1_B - U_AB)", P @ slack),
    ]
    return WitnessReport("prop1-capacity", checks, float(np.trace(R).real),
                         closed_form_nalpha(alpha)["upsilon"])


def prop1_simulation_point(alpha, scale=1.0):
    s, c = np.sin(alpha), np.cos(alpha)
    return scale * 2 * (s * s * _k(0, 0) + _k(1, 1) + c * c * _k(2, 2))


def prop1_simulation_witness(alpha, scale=1.0):
    """T_B with 1 x T_B >= J_alpha and tr T_B = 4."""
    _check_alpha(alpha)
    T = prop1_simulation_point(alpha, scale)
    J = choi(family_nalpha(alpha)).J
    checks = [_psd("1_A x T_B - J_alpha", np.kron(np.eye(3), T) - J)]
    return WitnessReport("prop1-simulation", checks, float(np.trace(T).real),
                         closed_form_nalpha(alpha)["sigma"])


# ---------------------------------------------------------------------------
# quantum Lovasz number


def prop2_graph_bases(alpha):
    """(F_1..F_4) spanning S and (M_1..M_5) spanning S^perp for N_alpha."""
    c2, s2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    F = [_k(0, 0) + c2 * _k(1, 1), s2 * _k(1, 1) + _k(2, 2), _k(0, 2), _k(2, 0)]
    M = [_k(0, 1), _k(1, 0), _k(1, 2), _k(2, 1),
         _k(0, 0) - _k(1, 1) / c2 + np.tan(alpha) ** 2 * _k(2, 2)]
    return F, M


def prop2_primal_point(alpha, include_R=True):
    c2, s2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    rho = (c2 * _k(0, 0) + _k(1, 1)) / (1 + c2)
    T1 = (_k(0, 0) - _k(1, 1) / c2 + (s2 / c2) * _k(2, 2)) / (1 + c2)
    T2 = c2 * c2 * _k(0, 0) - _k(1, 1)
    T = np.kron(T1, T2)
    if include_R:
        T = T + _kk(0, 0, 1, 1) + _kk(1, 1, 0, 0)
    return rho, T


def prop2_primal_witness(alpha, include_R=True):
    """(rho, T) feasible for the primal Lovasz SDP with value 2 + cos^2 + cos^-2."""
    _check_alpha(alpha)
    rho, T = prop2_primal_point(alpha, include_R)
    S = graphs.span_of(prop2_graph_bases(alpha)[0], label="S_alpha")
    S_L = [np.kron(f, e) for f in S.basis for e in graphs.standard_hermitian_basis(3)]
    overlap = max(abs(linalg.hs_inner(g, T)) for g in S_L)
    Z = np.kron(np.eye(3), rho) + T
    phi = linalg.max_entangled(3)
    checks = [
        Check("tr rho = 1", abs(np.trace(rho) - 1)),
        _psd("rho", rho),
        Check("T in S^perp x L(A')", overlap),
        _psd("1 x rho + T", Z),
    ]
    objective = float(np.real(phi.conj() @ Z @ phi))
    return WitnessReport("prop2-primal", checks, objective, closed_form_nalpha(alpha)["theta"],
                         {"min_eig": min_eig(Z)})


def prop2_dual_point(alpha, y3_coeff=None):
    c2, s2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    Y1 = (1 + c2) / c2 * _k(0, 0) + (1 + c2) * _k(1, 1)
    Y2 = (2 - 1 / c2) * _k(0, 0) + (1 / c2 - s2) * _k(1, 1) + (1 + c2) / c2 * _k(2, 2)
    Y3 = _kk(0, 0, 2, 2) + _kk(2, 2, 0, 0)
    coeff = (1 + c2) / c2 if y3_coeff is None else y3_coeff
    return np.kron(Y1, _k(0, 0) + _k(1, 1)) + np.kron(Y2, _k(2, 2)) + coeff * Y3


def prop2_dual_witness(alpha, y3_coeff=None):
    """Y >= |Phi><Phi| in S x L(A') with tr_A Y = (2 + cos^2 + cos^-2) 1."""
    _check_alpha(alpha)
    Y = prop2_dual_point(alpha, y3_coeff)
    M = prop2_graph_bases(alpha)[1]
    Sperp = graphs.span_of(M)
    perp_L = [np.kron(m, e) for m in Sperp.basis for e in graphs.standard_hermitian_basis(3)]
    overlap = max(abs(linalg.hs_inner(g, Y)) for g in perp_L)
    value = closed_form_nalpha(alpha)["theta"]
    trA = partial_trace(Y, 3, 3, "A")
    checks = [
        Check("Y in S x L(A')", overlap),
        _psd("Y - |Phi><Phi|", Y - linalg.proj(linalg.max_entangled(3)), RESIDUAL_TOL),
        _zero("tr_A Y - value * 1_B", trA - value * np.eye(3)),
    ]
    return WitnessReport("prop2-dual", checks, linalg.operator_norm(trA), value)


# ---------------------------------------------------------------------------
# quantum fractional packing number


def lemma1_points(alpha, x=None):
    c2, s2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    x = 1 + 1 / c2 if x is None else x
    R = (2 - s2) * _k(0, 0) + x * _k(1, 1)
    T = (2 - s2) * _k(1, 1) + (1 + 1 / c2) * _k(2, 2)
    return R, T


def lemma1_witnesses(alpha, x=None):
    """Primal R_A and dual T_B for the fractional packing SDPs, both at 2 + cos^2 + cos^-2."""
    _check_alpha(alpha)
    R, T = lemma1_points(alpha, x)
    P = nalpha_support_projector(alpha)
    load_b = partial_trace(P @ np.kron(R, np.eye(3)), 3, 3, "A")
    load_a = partial_trace(P @ np.kron(np.eye(3), T), 3, 3, "B")
    value = closed_form_nalpha(alpha)["aram"]
    dual_obj = float(np.trace(T).real)
    checks = [
        _psd("R_A", R),
        _psd("1_B - tr_A P(R_A x 1_B)", np.eye(3) - load_b),
        _psd("T_B", T),
        _psd("tr_B P(1_A x T_B) - 1_A", load_a - np.eye(3)),
        Check("tr T_B - closed form", abs(dual_obj - value), OBJECTIVE_RTOL * (1 + value)),
    ]
    return WitnessReport("lemma1", checks, float(np.trace(R).real), value, {"dual_objective": dual_obj})


# ---------------------------------------------------------------------------


def extremality_check(alpha=None, kraus=None, cutoff=1e-10):
    """True iff {E_i^dag E_j} is linearly independent (N_alpha unless ``kraus`` is given)."""
    if kraus is None:
        _check_alpha(alpha)
        kraus = nalpha_kraus(alpha)
    ops = np.array([(a.conj().T @ b).reshape(-1) for a in kraus for b in kraus])
    s = np.linalg.svd(ops, compute_uv=False)
    return bool((s > cutoff * s[0]).sum() == len(ops))


def all_witnesses(alpha):
    return [
        prop1_capacity_witness(alpha),
        prop1_simulation_witness(alpha),
        prop2_primal_witness(alpha),
        prop2_dual_witness(alpha),
        lemma1_witnesses(alpha),
    ]


def injected_faults(alpha):
    """Corrupted variants of every witness; each should fail its checks."""
    return [
        prop1_capacity_witness(alpha, perturb=1e-3),
        prop1_simulation_witness(alpha, scale=0.99),
        prop2_primal_witness(alpha, include_R=False),
        prop2_dual_witness(alpha, y3_coeff=0.0),
        lemma1_witnesses(alpha, x=2.0),
    ]
