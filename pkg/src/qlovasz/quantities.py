"""Conic formulations of the zero-error quantities and their evaluation.

Every evaluator returns a :class:`QuantityResult` holding the optimal value,
the solver report and the optimal points keyed by the usual symbol names.
All problems are built in minimization form for :mod:`qlovasz.sdp`; maximized
quantities are recovered by a sign flip.
"""
from dataclasses import dataclass, field

import numpy as np

from . import graphs, linalg
from .channels import _check_alpha, check_stochastic, choi
from .errors import SolverFailure, SubspaceNotValid
from .sdp import FREE, NONNEG, PSD, Block, ConicProblem, solve

EQUALITY_TOL = 1e-6


@dataclass(eq=False)
class QuantityResult:
    name: str
    value: float
    log2_value: float
    report: object
    witness: dict = field(default_factory=dict)
    dual_value: float = None
    dual_report: object = None


def _require_optimal(report, what):
    if not report.optimal:
        raise SolverFailure(f"{what}: solver finished with status {report.status}", report)


def _result(name, value, report, witness, dual_value=None, dual_report=None):
    return QuantityResult(name, float(value), float(np.log2(value)), report, witness, dual_value, dual_report)


def _check_duality(name, primal, dual, tol=EQUALITY_TOL):
    if abs(primal - dual) > tol * max(1.0, abs(primal)):
        raise SolverFailure(f"{name}: primal {primal!r} and dual {dual!r} disagree")


# ---------------------------------------------------------------------------
# quantum Lovasz number


def _tensor_hermitian_basis(sub, d):
    return [np.kron(h, e) for h in graphs.hermitian_basis(sub) for e in graphs.standard_hermitian_basis(d)]


def validate_ncgraph(s):
    d = s.shape[0]
    if s.shape[0] != s.shape[1]:
        raise SubspaceNotValid("non-commutative graph must consist of square operators")
    if not graphs.contains(s, np.eye(d)):
        raise SubspaceNotValid("identity is not in the subspace")
    if not graphs.is_adjoint_closed(s):
        raise SubspaceNotValid("subspace is not closed under adjoint")


def theta_primal_problem(s):
    """max <Phi|Z|Phi>, tr rho = 1, Z - 1 x rho in S^perp x L(A'), rho >= 0, Z >= 0.

    T = Z - 1 x rho is eliminated, which keeps the Newton systems definite.
    Blocks: rho (PSD d), Z (PSD d^2).
    """
    d = s.shape[0]
    phi = linalg.max_entangled(d)
    cons = [([np.eye(d), None], 1.0)]
    for g in _tensor_hermitian_basis(s, d):
        cons.append(([-linalg.partial_trace(g, d, d, "A"), g], 0.0))
    return ConicProblem(
        [Block(PSD, d), Block(PSD, d * d)],
        [None, -linalg.proj(phi)],
        cons,
        label=f"theta-primal[{s.label}]",
    )


def theta_dual_problem(s):
    """min t, Y >= |Phi><Phi|, Y in S x L(A'), t 1 - tr_A Y >= 0.

    Blocks: W = Y - |Phi><Phi| (PSD d^2), V = t 1 - tr_A Y (PSD d), t (nonneg 1).
    """
    d = s.shape[0]
    n = d * d
    phiphi = linalg.proj(linalg.max_entangled(d))
    cons = []
    for g in _tensor_hermitian_basis(graphs.complement(s), d):
        cons.append(([g, None, None], -np.real(np.vdot(g, phiphi))))
    for k in graphs.standard_hermitian_basis(d):
        tr = float(np.trace(k).real)
        cons.append(([np.kron(np.eye(d), k), k, np.array([-tr])], -tr))
    return ConicProblem(
        [Block(PSD, n), Block(PSD, d), Block(NONNEG, 1)],
        [None, None, np.array([1.0])],
        cons,
        label=f"theta-dual[{s.label}]",
    )


def theta(s, tol=1e-8, max_iters=200):
    """Quantum Lovasz number of a non-commutative graph, from both of its SDPs."""
    validate_ncgraph(s)
    d = s.shape[0]
    rp = solve(theta_primal_problem(s), tol, max_iters)
    _require_optimal(rp, "theta primal")
    rd = solve(theta_dual_problem(s), tol, max_iters)
    _require_optimal(rd, "theta dual")
    primal, dual = -rp.primal_objective, rd.primal_objective
    _check_duality("theta", primal, dual)
    phiphi = linalg.proj(linalg.max_entangled(d))
    witness = {
        "rho": rp.primal_solution[0],
        "T": rp.primal_solution[1] - np.kron(np.eye(d), rp.primal_solution[0]),
        "Y": rd.primal_solution[0] + phiphi,
        "t": float(rd.primal_solution[2][0]),
    }
    return _result("theta", primal, rp, witness, dual, rd)


# ---------------------------------------------------------------------------
# one-shot NS-assisted zero-error capacity


def _kernel_isometry(P):
    w, v = np.linalg.eigh(P)
    return v[:, w < 0.5]


def upsilon_problem(ch):
    """max tr R, 0 <= U <= R x 1, tr_A U = 1_B, tr P (R x 1 - U) = 0.

    ``R x 1 - U`` is PSD with zero overlap on supp(P), so it is written as
    Q W Q^dag with Q an isometry onto ker(P). Blocks: U (PSD n), W (PSD
    dim ker P, omitted when P = 1), R (free d_A).
    """
    da, db = ch.dim_in, ch.dim_out
    n = da * db
    Q = _kernel_isometry(choi(ch).P)
    has_w = Q.shape[1] > 0
    blocks = [Block(PSD, n)] + ([Block(PSD, Q.shape[1])] if has_w else []) + [Block(FREE, da)]
    cons = []
    for h in graphs.standard_hermitian_basis(n):
        w = [Q.conj().T @ h @ Q] if has_w else []
        cons.append(([h] + w + [-linalg.partial_trace(h, da, db, "B")], 0.0))
    for k in graphs.standard_hermitian_basis(db):
        cons.append(([np.kron(np.eye(da), k)] + [None] * has_w + [None], float(np.trace(k).real)))
    objective = [None] * (len(blocks) - 1) + [-np.eye(da)]
    return ConicProblem(blocks, objective, cons, label=f"upsilon[{ch.label}]")


def pack_upsilon_point(ch, R, U):
    """Primal point of :func:`upsilon_problem` corresponding to the pair (R_A, U_AB)."""
    Q = _kernel_isometry(choi(ch).P)
    slack = np.kron(R, np.eye(ch.dim_out)) - U
    return [U] + ([Q.conj().T @ slack @ Q] if Q.shape[1] else []) + [R]


def upsilon(ch, tol=1e-8, max_iters=200):
    r = solve(upsilon_problem(ch), tol, max_iters)
    _require_optimal(r, "upsilon")
    witness = {"R_A": r.primal_solution[-1], "U_AB": r.primal_solution[0]}
    return _result("upsilon", -r.primal_objective, r, witness, -r.dual_objective)


# ---------------------------------------------------------------------------
# NS-assisted simulation cost


def sigma_problem(ch):
    """max <J, X>, tr_A X = 1_B, X >= 0.

    Its multipliers give T_B of the conditional min-entropy program
    min tr T_B s.t. 1_A x T_B >= J, which is the conic dual.
    """
    J = choi(ch).J
    da, db = ch.dim_in, ch.dim_out
    basis = graphs.standard_hermitian_basis(db)
    cons = [([np.kron(np.eye(da), k)], float(np.trace(k).real)) for k in basis]
    return ConicProblem([Block(PSD, da * db)], [-J], cons, label=f"sigma[{ch.label}]"), basis


def sigma(ch, tol=1e-8, max_iters=200):
    problem, basis = sigma_problem(ch)
    r = solve(problem, tol, max_iters)
    _require_optimal(r, "sigma")
    T = -sum(yi * k for yi, k in zip(r.multipliers, basis))
    witness = {"T_B": T, "X_AB": r.primal_solution[0]}
    return _result("sigma", -r.dual_objective, r, witness, -r.primal_objective)


# ---------------------------------------------------------------------------
# quantum fractional packing number


def aram_primal_problem(ch):
    """max tr R, R >= 0, tr_A P (R x 1) <= 1_B.  Blocks: R (PSD d_A), slack (PSD d_B)."""
    P = choi(ch).P
    da, db = ch.dim_in, ch.dim_out
    cons = []
    for k in graphs.standard_hermitian_basis(db):
        coef = linalg.partial_trace(P @ np.kron(np.eye(da), k), da, db, "B")
        cons.append(([(coef + coef.conj().T) / 2, k], float(np.trace(k).real)))
    return ConicProblem([Block(PSD, da), Block(PSD, db)], [-np.eye(da), None], cons,
                        label=f"aram-primal[{ch.label}]")


def aram_dual_problem(ch):
    """min tr T, T >= 0, tr_B P (1 x T) >= 1_A.  Blocks: T (PSD d_B), surplus (PSD d_A)."""
    P = choi(ch).P
    da, db = ch.dim_in, ch.dim_out
    cons = []
    for k in graphs.standard_hermitian_basis(da):
        coef = linalg.partial_trace(P @ np.kron(k, np.eye(db)), da, db, "A")
        cons.append(([(coef + coef.conj().T) / 2, -k], float(np.trace(k).real)))
    return ConicProblem([Block(PSD, db), Block(PSD, da)], [np.eye(db), None], cons,
                        label=f"aram-dual[{ch.label}]")


def aram(ch, tol=1e-8, max_iters=200):
    """Quantum fractional packing number A(K) of the channel's Kraus span."""
    rp = solve(aram_primal_problem(ch), tol, max_iters)
    _require_optimal(rp, "aram primal")
    rd = solve(aram_dual_problem(ch), tol, max_iters)
    _require_optimal(rd, "aram dual")
    primal, dual = -rp.primal_objective, rd.primal_objective
    _check_duality("aram", primal, dual)
    witness = {"R_A": rp.primal_solution[0], "T_B": rd.primal_solution[0]}
    return _result("aram", primal, rp, witness, dual, rd)


# ---------------------------------------------------------------------------
# classical fractional packing


def fractional_packing_problem(p):
    """max sum_x v_x, sum_{x ~ y} v_x <= 1 for every output y, 0 <= v_x <= 1.

    x ~ y means p(y|x) > 0, i.e. (x, y) is an edge of the channel's bipartite graph.
    Blocks: v (nonneg n_x), output slacks (nonneg n_y), upper-bound slacks (nonneg n_x).
    """
    p = check_stochastic(p)
    n_y, n_x = p.shape
    adj = (p > 0).astype(float)
    cons = []
    for y in range(n_y):
        cons.append(([adj[y], np.eye(n_y)[y], None], 1.0))
    for x in range(n_x):
        cons.append(([np.eye(n_x)[x], None, np.eye(n_x)[x]], 1.0))
    return ConicProblem([Block(NONNEG, n_x), Block(NONNEG, n_y), Block(NONNEG, n_x)],
                        [-np.ones(n_x), None, None], cons, label="fractional-packing")


def fractional_packing(p, tol=1e-8, max_iters=200):
    r = solve(fractional_packing_problem(p), tol, max_iters)
    _require_optimal(r, "fractional packing")
    return _result("fractional_packing", -r.primal_objective, r, {"v_x": r.primal_solution[0]},
                   -r.dual_objective)


# ---------------------------------------------------------------------------
# the qutrit family


def closed_form_nalpha(alpha):
    _check_alpha(alpha)
    c2 = np.cos(alpha) ** 2
    lovasz = 2.0 + c2 + 1.0 / c2
    return {"theta": lovasz, "upsilon": 4.0, "sigma": 4.0, "aram": lovasz}


def separation_report(alpha, tol=1e-8, max_iters=200):
    """log2 theta - log2 upsilon for N_alpha, both computed by SDP."""
    from .channels import family_nalpha

    ch = family_nalpha(alpha)
    th = theta(graphs.ncgraph(ch), tol, max_iters)
    up = upsilon(ch, tol, max_iters)
    gap = th.log2_value - up.log2_value
    if not gap > 0:
        raise SolverFailure(f"no separation at alpha={alpha}: gap {gap}")
    return {"log2_theta": th.log2_value, "log2_upsilon": up.log2_value, "gap": gap}
