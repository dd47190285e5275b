"""The full set of numerical checks behind the separation results for N_alpha."""
from dataclasses import dataclass

import numpy as np

from . import certify, channels, graphs, quantities
from .errors import SolverFailure

REL_TOL = 1e-6
PI4_GAP = np.log2(4.5) - 2.0


@dataclass
class ClaimCheck:
    name: str
    alpha: float
    value: float
    expected: float
    passed: bool


def random_stochastic(rng, n_y, n_x, min_entry=0.05):
    """Column-stochastic matrix whose entries are 0 or at least ``min_entry``."""
    p = np.zeros((n_y, n_x))
    for x in range(n_x):
        while True:
            k = int(rng.choice([1, 2, 2, 3]))
            support = rng.choice(n_y, size=k, replace=False)
            w = rng.uniform(min_entry, 1.0, size=k)
            w /= w.sum()
            if w.min() >= min_entry:
                break
        p[:, x] = 0.0
        p[support, x] = w
    return p


def classical_corpus(seed=2017, count=20):
    """Pentagon channel followed by ``count`` random 4x4 / 5x5 stochastic matrices."""
    rng = np.random.default_rng(seed)
    out = [("pentagon", channels.pentagon_matrix())]
    for i in range(count):
        n = 4 if i % 2 == 0 else 5
        out.append((f"random{i}", random_stochastic(rng, n, n)))
    return out


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def _solver_checks(alpha, tol, max_iters):
    cf = quantities.closed_form_nalpha(alpha)
    ch = channels.family_nalpha(alpha)
    out = []
    th = quantities.theta(graphs.ncgraph(ch), tol, max_iters)
    out.append(ClaimCheck("theta", alpha, th.value, cf["theta"], _rel(th.value, cf["theta"]) <= REL_TOL))
    out.append(ClaimCheck("theta primal=dual", alpha, th.dual_value, th.value,
                          _rel(th.dual_value, th.value) <= REL_TOL))
    up = quantities.upsilon(ch, tol, max_iters)
    out.append(ClaimCheck("upsilon", alpha, up.value, 4.0, _rel(up.value, 4.0) <= REL_TOL))
    sg = quantities.sigma(ch, tol, max_iters)
    out.append(ClaimCheck("sigma", alpha, sg.value, 4.0, _rel(sg.value, 4.0) <= REL_TOL))
    out.append(ClaimCheck("S_0NS = log2 sigma", alpha, sg.log2_value, 2.0, abs(sg.log2_value - 2.0) <= 1e-7))
    ar = quantities.aram(ch, tol, max_iters)
    out.append(ClaimCheck("aram", alpha, ar.value, cf["aram"], _rel(ar.value, cf["aram"]) <= REL_TOL))
    out.append(ClaimCheck("aram primal=dual", alpha, ar.dual_value, ar.value,
                          _rel(ar.dual_value, ar.value) <= REL_TOL))
    gap = th.log2_value - up.log2_value
    expected_gap = np.log2(cf["theta"]) - 2.0
    ok = gap > 0
    if np.isclose(alpha, np.pi / 4, rtol=0, atol=1e-12):
        ok = ok and abs(gap - PI4_GAP) <= 1e-4
    out.append(ClaimCheck("separation log2 theta - log2 upsilon", alpha, gap, expected_gap, ok))
    # C_0F <= C_minE = 2 bits, so log2 A > 2 separates A from the feedback capacity
    out.append(ClaimCheck("log2 aram > C_minE = 2", alpha, ar.log2_value, 2.0, ar.log2_value > 2.0))
    return out


def additivity_checks(tol=1e-8, max_iters=200):
    ch = channels.family_nalpha(np.pi / 4)
    two = channels.tensor_channel(ch, ch)
    s2 = quantities.sigma(two, tol, max_iters)
    up = quantities.upsilon(ch, tol, max_iters)
    out = [ClaimCheck("sigma(N x N) = sigma(N)^2", np.pi / 4, s2.value, 16.0, _rel(s2.value, 16.0) <= 1e-5)]
    # upsilon is supermultiplicative and bounded by sigma: upsilon^2 <= upsilon(K x K) <= sigma(N x N)
    lo, hi = up.value ** 2, s2.value
    out.append(ClaimCheck("upsilon(K x K) lower bound", np.pi / 4, lo, 16.0, abs(lo - 16.0) <= 1e-4))
    out.append(ClaimCheck("upsilon(K x K) upper bound", np.pi / 4, hi, 16.0, abs(hi - 16.0) <= 1e-4))
    return out


def classical_checks(tol=1e-8, max_iters=200):
    out = []
    for name, p in classical_corpus():
        a = quantities.aram(channels.classical_channel(p, label=name), tol, max_iters).value
        f = quantities.fractional_packing(p, tol, max_iters).value
        out.append(ClaimCheck(f"aram = fractional packing [{name}]", None, a, f, abs(a - f) <= 1e-6))
    return out


def witness_checks(alpha):
    out = []
    for w in certify.all_witnesses(alpha):
        out.append(ClaimCheck(f"witness {w.witness_name}", alpha, w.objective, w.closed_form, w.passed))
    for w in certify.injected_faults(alpha):
        out.append(ClaimCheck(f"fault rejected {w.witness_name}", alpha, w.objective, w.closed_form,
                              not w.passed))
    out.append(ClaimCheck("extremal channel", alpha, 1.0, 1.0, certify.extremality_check(alpha)))
    return out


def run_claim_checks(alphas, tol=1e-8, max_iters=200):
    checks = []
    for alpha in alphas:
        checks.extend(witness_checks(alpha))
        try:
            checks.extend(_solver_checks(alpha, tol, max_iters))
        except SolverFailure as exc:
            checks.append(ClaimCheck(f"solver: {exc}", alpha, np.nan, np.nan, False))
    try:
        checks.extend(classical_checks(tol, max_iters))
        checks.extend(additivity_checks(tol, max_iters))
    except SolverFailure as exc:
        checks.append(ClaimCheck(f"solver: {exc}", None, np.nan, np.nan, False))
    return checks
