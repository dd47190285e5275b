import io

import numpy as np
import pytest
from scipy.optimize import linprog

from qlovasz import certify, channels, graphs, quantities, sdp
from qlovasz.sdp import FREE, NONNEG, PSD, Block, ConicProblem, solve, verify_certificate
from conftest import random_hermitian


def positive_part_problem(A):
    """min tr X over X >= 0, X - S = A, S >= 0."""
    n = A.shape[0]
    cons = [([h, -h], float(np.real(np.vdot(h, A)))) for h in graphs.standard_hermitian_basis(n)]
    return ConicProblem([Block(PSD, n), Block(PSD, n)], [np.eye(n), None], cons, label="positive-part")


def lp_problem(c, A_ub, b_ub):
    """min c.x s.t. A_ub x <= b_ub, x >= 0, with explicit slacks."""
    m, n = A_ub.shape
    cons = [([A_ub[i], np.eye(m)[i]], float(b_ub[i])) for i in range(m)]
    return ConicProblem([Block(NONNEG, n), Block(NONNEG, m)], [np.asarray(c, float), None], cons)


def test_trivial_example():
    p = positive_part_problem(np.diag([1.0, -1.0]))
    r = solve(p)
    assert r.optimal
    assert r.primal_objective == pytest.approx(1, abs=1e-8)
    assert verify_certificate(p, r).max_violation <= 1e-9


def test_optimal_report_invariants():
    p = quantities.theta_primal_problem(graphs.ncgraph(channels.family_nalpha(np.pi / 4)))
    r = solve(p)
    assert r.optimal
    assert r.primal_objective == pytest.approx(-4.5, abs=1e-7)
    assert r.duality_gap <= 1e-7 * (1 + abs(r.primal_objective))
    assert r.primal_residual <= 1e-8 and r.dual_residual <= 1e-8
    for blk, x, z in zip(p.blocks, r.primal_solution, r.dual_solution):
        if blk.kind != FREE:
            assert sdp._cone_min(blk, x) >= -1e-8
            assert sdp._cone_min(blk, z) >= -1e-8


def test_pentagon_lp():
    r = solve(quantities.fractional_packing_problem(channels.pentagon_matrix()))
    assert r.optimal
    assert -r.primal_objective == pytest.approx(2.5, abs=1e-8)
    assert np.allclose(r.primal_solution[0], 0.5, atol=1e-7)


def test_positive_part_oracle_random():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(2, 10))
        A = random_hermitian(rng, n)
        r = solve(positive_part_problem(A))
        assert r.optimal
        w = np.linalg.eigvalsh(A)
        assert r.primal_objective == pytest.approx(w[w > 0].sum(), abs=1e-7)


def test_lp_against_linprog():
    rng = np.random.default_rng(5)
    for _ in range(20):
        m, n = rng.integers(2, 7, size=2)
        A = rng.uniform(0, 1, size=(m, n))
        b = rng.uniform(1, 2, size=m)
        c = -rng.uniform(0.1, 1, size=n)
        ref = linprog(c, A_ub=A, b_ub=b, bounds=(0, None), method="highs")
        r = solve(lp_problem(c, A, b))
        assert r.optimal
        assert r.primal_objective == pytest.approx(ref.fun, abs=1e-7)


def test_complex_embedding_matches_analytic():
    rng = np.random.default_rng(21)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        A = np.diag(rng.normal(size=n)).astype(complex)
        r = solve(positive_part_problem(A), real_reduction=False)
        assert r.optimal
        d = np.diag(A).real
        assert r.primal_objective == pytest.approx(d[d > 0].sum(), abs=1e-7)


def test_complex_data_uses_embedding():
    rng = np.random.default_rng(22)
    A = random_hermitian(rng, 4)
    assert not sdp._conjugation_invariant(positive_part_problem(A))[0]
    r = solve(positive_part_problem(A))
    w = np.linalg.eigvalsh(A)
    assert r.primal_objective == pytest.approx(w[w > 0].sum(), abs=1e-7)
    assert np.abs(r.primal_solution[0].imag).max() > 1e-6


def test_real_reduction_agrees_with_embedding():
    p = quantities.upsilon_problem(channels.family_nalpha(np.pi / 12))
    a, b = solve(p), solve(p, real_reduction=False)
    assert a.primal_objective == pytest.approx(b.primal_objective, abs=1e-7)


def test_free_block():
    # min x^2-free problem: minimize <C, F> over free F with tr F = 1 and F - S = 0, S >= 0
    n = 3
    C = np.diag([3.0, 1.0, 2.0])
    cons = [([h, -h], 0.0) for h in graphs.standard_hermitian_basis(n)]
    cons.append(([np.eye(n), None], 1.0))
    p = ConicProblem([Block(FREE, n), Block(PSD, n)], [C, None], cons)
    r = solve(p)
    assert r.optimal
    assert r.primal_objective == pytest.approx(1.0, abs=1e-8)


def test_verify_analytic_capacity_point():
    alpha = np.pi / 5
    ch = channels.family_nalpha(alpha)
    p = quantities.upsilon_problem(ch)
    R, U = certify.prop1_capacity_point(alpha)
    X = quantities.pack_upsilon_point(ch, R, U)
    report = sdp.SolveReport("Optimal", 0, 0, 0, 0, 0, 0, primal_solution=X)
    cert = verify_certificate(p, report)
    assert cert.max_violation <= 1e-9
    assert sum(sdp._pair(c, x) for c, x in zip(p.objective, X)) == pytest.approx(-4, abs=1e-12)


def test_verify_detects_perturbation():
    p = positive_part_problem(np.diag([1.0, -1.0]))
    r = solve(p)
    X = [x.copy() for x in r.primal_solution]
    X[0][0, 0] += 1e-3
    bad = sdp.SolveReport(r.status, 0, 0, 0, 0, 0, 0, X, r.dual_solution, r.multipliers)
    assert verify_certificate(p, bad).max_violation >= 1e-4


def test_determinism():
    p = quantities.sigma_problem(channels.family_nalpha(0.3))[0]
    a, b = solve(p), solve(p)
    assert a.iterations == b.iterations
    assert a.primal_objective == b.primal_objective
    assert a.dual_objective == b.dual_objective


def _property_problems():
    s = graphs.ncgraph(channels.family_nalpha(np.pi / 4))
    ch = channels.family_nalpha(np.pi / 7)
    return [
        quantities.theta_primal_problem(s),
        quantities.theta_dual_problem(s),
        quantities.upsilon_problem(ch),
        quantities.sigma_problem(ch)[0],
        quantities.aram_primal_problem(ch),
        quantities.aram_dual_problem(ch),
        quantities.fractional_packing_problem(channels.pentagon_matrix()),
        positive_part_problem(random_hermitian(np.random.default_rng(2), 5)),
    ]


@pytest.mark.parametrize("problem", _property_problems(), ids=lambda p: p.label)
def test_scaling_covariance(problem):
    base = solve(problem).primal_objective
    for c in (0.1, 0.5, 3.0, 10.0):
        scaled = ConicProblem(problem.blocks, [None if o is None else c * o for o in problem.objective],
                              problem.constraints)
        r = solve(scaled)
        assert r.optimal
        assert abs(r.primal_objective - c * base) <= 1e-9 * abs(c * base)


@pytest.mark.parametrize("problem", _property_problems(), ids=lambda p: p.label)
def test_weak_duality_on_iterates(problem):
    r = solve(problem)
    checked = 0
    for _, pobj, dobj, pinf, dinf, _ in r.history:
        if pinf <= 1e-6 and dinf <= 1e-6:
            assert pobj >= dobj - 1e-9
            checked += 1
    assert checked > 0


def test_infeasible_status():
    p = ConicProblem([Block(NONNEG, 2)], [np.ones(2)], [([np.array([1.0, 1.0])], -1.0)])
    assert solve(p).status == sdp.INFEASIBLE


def test_inconsistent_equalities_are_infeasible():
    p = ConicProblem([Block(NONNEG, 1)], [np.ones(1)],
                     [([np.array([1.0])], 1.0), ([np.array([2.0])], 3.0)])
    assert solve(p).status == sdp.INFEASIBLE


def test_unbounded_status():
    p = ConicProblem([Block(NONNEG, 2)], [np.array([-1.0, 0.0])], [([np.array([1.0, -1.0])], 0.0)])
    assert solve(p).status == sdp.UNBOUNDED


def test_max_iterations_status():
    r = solve(positive_part_problem(np.diag([1.0, -1.0])), max_iters=2)
    assert r.status == sdp.MAX_ITERATIONS


def test_problem_validation():
    with pytest.raises(ValueError):
        ConicProblem([Block(PSD, 2)], [np.eye(2)], [])
    with pytest.raises(ValueError):
        ConicProblem([Block(PSD, 2)], [np.array([[0, 1], [0, 0]])], [([np.eye(2)], 1.0)])
    with pytest.raises(ValueError):
        ConicProblem([Block(PSD, 2)], [np.eye(3)], [([np.eye(2)], 1.0)])


def test_dump_load_round_trip():
    p = quantities.upsilon_problem(channels.family_nalpha(0.5))
    buf = io.StringIO()
    sdp.dump_problem(p, buf)
    q = sdp.load_problem(io.StringIO(buf.getvalue()))
    assert q.label == p.label
    assert [(b.kind, b.size) for b in q.blocks] == [(b.kind, b.size) for b in p.blocks]
    assert len(q.constraints) == len(p.constraints)
    for (ca, ra), (cb, rb) in zip(p.constraints, q.constraints):
        assert ra == rb
        for blk, a, b in zip(p.blocks, ca, cb):
            zero = blk.zero()
            assert np.array_equal(zero if a is None else a, zero if b is None else b)
    assert solve(q).primal_objective == solve(p).primal_objective
