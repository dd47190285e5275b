"""Small dense conic solver: PSD blocks, nonnegative orthants and free Hermitian variables.

Problems are stated in equality standard form::

    minimize    sum_b <C_b, X_b>
    subject to  sum_b <A_ib, X_b> = b_i        (i = 1..m)
                X_b in K_b

with <A, X> = Re tr(A X). The dual is::

    maximize    b^T y
    subject to  C_b - sum_i y_i A_ib = Z_b in K_b*   (Z_b = 0 on free blocks)

The solver is an infeasible-start primal-dual path-following method with
Nesterov-Todd scaling and Mehrotra's predictor-corrector. Complex Hermitian
PSD blocks are embedded as real symmetric blocks of twice the side via
``[[Re, -Im], [Im, Re]] / sqrt(2)``, which preserves the trace pairing, so
reported objectives refer to the complex problem. Problems whose data is
invariant under complex conjugation are solved directly over real
symmetric matrices instead.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch
from .linalg import is_hermitian, min_eig

PSD = "psd"
NONNEG = "nonneg"
FREE = "free"

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"
MAX_ITERATIONS = "MaxIterations"
NUMERICAL_TROUBLE = "NumericalTrouble"

STEP_FRACTION = 0.98
# after reaching tol, keep iterating while the gap still shrinks, down to this fraction of tol
POLISH_FACTOR = 1e-3
REFINE_STEPS = 2
PINV_CUTOFF = 1e-14
_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Block:
    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (PSD, NONNEG, FREE):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("block size must be positive")

    def zero(self):
        if self.kind == NONNEG:
            return np.zeros(self.size)
        return np.zeros((self.size, self.size), dtype=complex)


@dataclass(eq=False)
class ConicProblem:
    """Equality-form conic program; ``None`` entries stand for zero coefficients."""

    blocks: list
    objective: list
    constraints: list  # [(coefficients per block, rhs), ...]
    label: str = ""

    def __post_init__(self):
        self.blocks = [b if isinstance(b, Block) else Block(*b) for b in self.blocks]
        if len(self.objective) != len(self.blocks):
            raise DimensionMismatch("objective needs one entry per block")
        if not self.constraints:
            raise ValueError("constraint list must be nonempty")
        self.objective = [self._check(k, c) for k, c in enumerate(self.objective)]
        checked = []
        for coeffs, rhs in self.constraints:
            if len(coeffs) != len(self.blocks):
                raise DimensionMismatch("each constraint needs one coefficient entry per block")
            checked.append(([self._check(k, c) for k, c in enumerate(coeffs)], float(rhs)))
        self.constraints = checked

    def _check(self, k, coeff):
        if coeff is None:
            return None
        blk = self.blocks[k]
        a = np.asarray(coeff)
        if blk.kind == NONNEG:
            if a.shape != (blk.size,):
                raise DimensionMismatch(f"block {k}: expected vector of length {blk.size}")
            if np.iscomplexobj(a) and np.abs(a.imag).max() > 0:
                raise ValueError(f"block {k}: nonnegative-block coefficients must be real")
            return a.real.astype(float)
        if a.shape != (blk.size, blk.size):
            raise DimensionMismatch(f"block {k}: expected {blk.size}x{blk.size} matrix, got {a.shape}")
        if not is_hermitian(a, 1e-10):
            raise ValueError(f"block {k}: coefficient matrix is not Hermitian")
        a = a.astype(complex)
        return (a + a.conj().T) / 2

    @property
    def num_constraints(self):
        return len(self.constraints)

    def rhs(self):
        return np.array([r for _, r in self.constraints])


@dataclass(eq=False)
class SolveReport:
    status: str
    primal_objective: float
    dual_objective: float
    duality_gap: float
    primal_residual: float
    dual_residual: float
    iterations: int
    primal_solution: list = None
    dual_solution: list = None  # slack Z_b per block (zero on free blocks)
    multipliers: np.ndarray = None  # y, one per constraint
    history: list = field(default_factory=list)
    label: str = ""

    @property
    def optimal(self):
        return self.status == OPTIMAL


@dataclass
class CertificateReport:
    primal_violation: float
    dual_violation: float
    gap: float
    complementarity: float
    primal_min_eigs: list
    dual_min_eigs: list
    max_violation: float


# ---------------------------------------------------------------------------
# coordinates


def _embed(m):
    return np.block([[m.real, -m.imag], [m.imag, m.real]]) / _SQRT2


def _unembed(r):
    n = r.shape[0] // 2
    return (r[:n, :n] + r[n:, n:] + 1j * (r[n:, :n] - r[:n, n:])) / _SQRT2


def _hvec(m, real):
    n = m.shape[0]
    iu = np.triu_indices(n, 1)
    parts = [np.diag(m).real, _SQRT2 * m[iu].real]
    if not real:
        parts.append(_SQRT2 * m[iu].imag)
    return np.concatenate(parts)


def _hmat(v, n, real):
    iu = np.triu_indices(n, 1)
    k = len(iu[0])
    m = np.zeros((n, n), dtype=complex)
    m[np.diag_indices(n)] = v[:n]
    off = v[n:n + k] / _SQRT2
    if not real:
        off = off + 1j * v[n + k:n + 2 * k] / _SQRT2
    m[iu] = off
    m[(iu[1], iu[0])] = off.conj()
    return m


def _hvec_len(n, real):
    return n * (n + 1) // 2 if real else n * n


def _conjugation_invariant(problem, tol=1e-14):
    """Classify rows for the real reduction; returns (invariant?, mask of real rows)."""
    def scale(arrs):
        return max([np.abs(a).max() for a in arrs if a is not None] + [0.0])

    if any(c is not None and np.iscomplexobj(c) and np.abs(c.imag).max() > tol * (1 + scale([c]))
           for c in problem.objective):
        return False, None
    keep = []
    for coeffs, rhs in problem.constraints:
        s = tol * (1.0 + scale(coeffs))
        mats = [c for c in coeffs if c is not None]
        imag = max([np.abs(np.imag(c)).max() for c in mats] + [0.0])
        real = max([np.abs(np.real(c)).max() for c in mats] + [0.0])
        if imag <= s:
            keep.append(True)
        elif real <= s and rhs == 0.0:
            # satisfied identically by real variables
            keep.append(False)
        else:
            return False, None
    return True, np.array(keep)


class _Compiled:
    """Real-coordinate form of a problem, with dependent rows removed."""

    def __init__(self, problem, real_reduction=True):
        self.problem = problem
        self.real, row_mask = _conjugation_invariant(problem) if real_reduction else (False, None)
        m_all = problem.num_constraints
        rows = np.arange(m_all) if row_mask is None else np.flatnonzero(row_mask)
        b_all = problem.rhs()

        self.kinds, self.sizes, self.C, self.A = [], [], [], []
        for k, blk in enumerate(problem.blocks):
            coeffs = [problem.constraints[i][0][k] for i in rows]
            obj = problem.objective[k]
            if blk.kind == PSD:
                conv = (lambda a: a.real) if self.real else _embed
                N = blk.size if self.real else 2 * blk.size
                A = np.zeros((len(rows), N, N))
                for i, c in enumerate(coeffs):
                    if c is not None:
                        A[i] = conv(c)
                C = np.zeros((N, N)) if obj is None else conv(obj)
            elif blk.kind == NONNEG:
                N = blk.size
                A = np.zeros((len(rows), N))
                for i, c in enumerate(coeffs):
                    if c is not None:
                        A[i] = c
                C = np.zeros(N) if obj is None else obj.copy()
            else:
                N = _hvec_len(blk.size, self.real)
                A = np.zeros((len(rows), N))
                for i, c in enumerate(coeffs):
                    if c is not None:
                        A[i] = _hvec(c, self.real)
                C = np.zeros(N) if obj is None else _hvec(obj, self.real)
            self.kinds.append(blk.kind)
            self.sizes.append(N)
            self.C.append(C)
            self.A.append(A)

        self.rows, self.inconsistent = self._presolve(rows, b_all)
        self.b = b_all[self.rows]
        self.m = len(self.rows)

    def _presolve(self, rows, b_all):
        """Drop linearly dependent constraint rows; flag inconsistent ones."""
        if len(rows) == 0:
            return rows, False
        mat = np.hstack([a.reshape(len(rows), -1) for a in self.A])
        if not mat.any():
            return rows[:0], bool(np.abs(b_all[rows]).max() > 1e-12)
        _, r, piv = sla.qr(mat.T, mode="economic", pivoting=True)
        d = np.abs(np.diag(r))
        rank = int((d > 1e-11 * d[0]).sum())
        keep = np.sort(piv[:rank])
        inconsistent = False
        if rank < len(rows):
            sub = mat[keep]
            coef, *_ = np.linalg.lstsq(sub.T, mat.T, rcond=None)
            pred = coef.T @ b_all[rows][keep]
            scale = 1 + np.abs(b_all[rows]).max()
            inconsistent = bool(np.abs(pred - b_all[rows]).max() > 1e-9 * scale)
        for k in range(len(self.A)):
            self.A[k] = self.A[k][keep]
        return rows[keep], inconsistent

    # linear maps -----------------------------------------------------------

    def Aop(self, xs):
        out = np.zeros(self.m)
        for kind, A, x in zip(self.kinds, self.A, xs):
            if kind == PSD:
                out += np.tensordot(A, x, axes=2)
            else:
                out += A @ x
        return out

    def ATop(self, k, y):
        if self.kinds[k] == PSD:
            return np.tensordot(y, self.A[k], axes=1)
        return self.A[k].T @ y

    def inner(self, k, a, b):
        return float(np.vdot(a, b))

    # mapping back to the user's problem -----------------------------------

    def to_user(self, k, x):
        kind, n = self.kinds[k], self.problem.blocks[k].size
        if kind == PSD:
            return x.astype(complex) if self.real else _unembed(x)
        if kind == NONNEG:
            return x.copy()
        return _hmat(x, n, self.real)

    def full_multipliers(self, y):
        out = np.zeros(self.problem.num_constraints)
        out[self.rows] = y
        return out


# ---------------------------------------------------------------------------
# interior-point iteration


def _nt_scaling(X, Z):
    L = np.linalg.cholesky(X)
    R = np.linalg.cholesky(Z)
    U, s, Vt = np.linalg.svd(R.T @ L)
    G = L @ Vt.T / np.sqrt(s)
    Ginv = (np.sqrt(s)[:, None] * Vt) @ sla.solve_triangular(L, np.eye(len(s)), lower=True)
    return G, Ginv, s, L, R


def _max_step(chol, d):
    """Largest a with chol chol^T + a d still PSD (inf if d is PSD)."""
    t = sla.solve_triangular(chol, d, lower=True)
    t = sla.solve_triangular(chol, t.T, lower=True)
    lam = np.linalg.eigvalsh((t + t.T) / 2)[0]
    return np.inf if lam >= 0 else -1.0 / lam


def _max_step_vec(x, d):
    neg = d < 0
    return np.inf if not neg.any() else float(np.min(-x[neg] / d[neg]))


def solve(problem, tol=1e-8, max_iters=200, real_reduction=True):
    """Solve ``problem``; failures are reported through ``SolveReport.status``.

    ``real_reduction=False`` forces the complex embedding even for real data.
    """
    cp = _Compiled(problem, real_reduction)
    nb = len(cp.kinds)
    cones = [k for k in range(nb) if cp.kinds[k] != FREE]
    frees = [k for k in range(nb) if cp.kinds[k] == FREE]

    if cp.inconsistent:
        return _report(cp, INFEASIBLE, None, None, np.zeros(cp.m), 0, [], np.nan, np.nan)

    tau = 1.0 + (np.abs(cp.b).max() if cp.m else 0.0)
    X, Z = [], []
    for k in range(nb):
        if cp.kinds[k] == PSD:
            X.append(tau * np.eye(cp.sizes[k]))
            Z.append(tau * np.eye(cp.sizes[k]))
        elif cp.kinds[k] == NONNEG:
            X.append(np.full(cp.sizes[k], tau))
            Z.append(np.full(cp.sizes[k], tau))
        else:
            X.append(np.zeros(cp.sizes[k]))
            Z.append(None)
    y = np.zeros(cp.m)
    nu = sum(cp.sizes[k] for k in cones)
    b_norm = np.linalg.norm(cp.b)
    c_norm = np.sqrt(sum(np.linalg.norm(cp.C[k]) ** 2 for k in range(nb)))
    history = []
    status = MAX_ITERATIONS
    best = None  # state of the most accurate iterate that met the tolerances

    it = 0
    while True:
        rp = cp.b - cp.Aop(X)
        rd = [None] * nb
        for k in range(nb):
            rd[k] = cp.C[k] - cp.ATop(k, y) - (Z[k] if Z[k] is not None else 0.0)
        pobj = sum(cp.inner(k, cp.C[k], X[k]) for k in range(nb))
        dobj = float(cp.b @ y)
        pinf = np.linalg.norm(rp) / (1.0 + b_norm)
        dinf = np.sqrt(sum(np.linalg.norm(r) ** 2 for r in rd)) / (1.0 + c_norm)
        gap = abs(pobj - dobj)
        rel_gap = gap / (1.0 + abs(pobj) + abs(dobj))
        mu = sum(cp.inner(k, X[k], Z[k]) for k in cones) / nu if nu else 0.0
        history.append((it, pobj, dobj, pinf, dinf, mu))

        converged = rel_gap <= tol and pinf <= tol and dinf <= tol
        if converged:
            if best is not None and rel_gap > 0.5 * best[0]:
                break  # polishing stalled; keep the best optimal iterate
            best = (rel_gap, [x.copy() for x in X], [None if z is None else z.copy() for z in Z],
                    y.copy(), it, pinf, dinf, pobj, dobj)
            if rel_gap <= POLISH_FACTOR * tol:
                break
        elif best is not None:
            break
        cert = None if best is not None else _infeasibility(cp, X, y, cones, frees)
        if cert is not None:
            status = cert
            break
        if it >= max_iters:
            status = MAX_ITERATIONS
            break

        try:
            step = _direction(cp, X, Z, y, rp, rd, mu, cones, frees)
        except (np.linalg.LinAlgError, sla.LinAlgError, FloatingPointError, ValueError):
            status = NUMERICAL_TROUBLE
            break
        dX, dZ, dy, ap, ad = step
        if max(ap, ad) < 1e-12 or not np.isfinite(ap + ad):
            status = NUMERICAL_TROUBLE
            break
        for k in range(nb):
            X[k] = X[k] + ap * dX[k]
            if cp.kinds[k] == PSD:
                X[k] = (X[k] + X[k].T) / 2
            if Z[k] is not None:
                Z[k] = Z[k] + ad * dZ[k]
                if cp.kinds[k] == PSD:
                    Z[k] = (Z[k] + Z[k].T) / 2
        y = y + ad * dy
        it += 1

    if best is not None:
        _, X, Z, y, it, pinf, dinf, pobj, dobj = best
        status = OPTIMAL
    return _report(cp, status, X, Z, y, it, history, pinf, dinf, pobj, dobj)


def _eig_factor(K):
    """Truncated symmetric eigen-solve restricted to the numerical range of ``K``."""
    w, v = np.linalg.eigh(K)
    keep = np.abs(w) > PINV_CUTOFF * max(np.abs(w).max(), 1e-300)
    return ("eig", (v[:, keep], 1.0 / w[keep]))


def _lu_factor(K):
    """LU of the saddle-point matrix, or the eigen fallback when a pivot collapses."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu = sla.lu_factor(K, check_finite=True)
    d = np.abs(np.diag(lu[0]))
    if d.min() > PINV_CUTOFF * d.max():
        return ("lu", lu)
    return _eig_factor(K)


def _direction(cp, X, Z, y, rp, rd, mu, cones, frees):
    nb = len(cp.kinds)
    scal = {}
    for k in cones:
        if cp.kinds[k] == PSD:
            G, Ginv, s, L, R = _nt_scaling(X[k], Z[k])
            scal[k] = (G, Ginv, s, L, R, G @ G.T)
        else:
            scal[k] = X[k] / Z[k]

    m = cp.m
    M = np.zeros((m, m))
    for k in cones:
        A = cp.A[k]
        if cp.kinds[k] == PSD:
            W = scal[k][5]
            WAW = W @ A @ W
            M += np.tensordot(A, WAW, axes=([1, 2], [1, 2]))
        else:
            M += (A * scal[k]) @ A.T
    M = (M + M.T) / 2
    Af = np.hstack([cp.A[k] for k in frees]) if frees else np.zeros((m, 0))
    nf = Af.shape[1]
    if nf:
        K = np.block([[M, Af], [Af.T, np.zeros((nf, nf))]])
        fac = _lu_factor(K)
    else:
        K = M
        try:
            fac = ("cho", sla.cho_factor(M, lower=True))
        except (np.linalg.LinAlgError, sla.LinAlgError):
            # degenerate problems lose definiteness close to the optimum
            fac = _eig_factor(M)

    def base_solve(rhs):
        if fac[0] == "lu":
            return sla.lu_solve(fac[1], rhs)
        if fac[0] == "cho":
            return sla.cho_solve(fac[1], rhs)
        v, winv = fac[1]
        return v @ (winv * (v.T @ rhs))

    def linsolve(rhs):
        out = base_solve(rhs)
        # a few rounds of iterative refinement; the system degrades near optimality
        for _ in range(REFINE_STEPS):
            out = out + base_solve(rhs - K @ out)
        return out
    rdf = np.concatenate([rd[k] for k in frees]) if frees else np.zeros(0)

    def rhs_for(k, sigma_mu, corr):
        """R_c with dX + W dZ W = R_c."""
        if cp.kinds[k] == PSD:
            G, _, s, *_ = scal[k]
            H = -corr
            H[np.diag_indices_from(H)] += sigma_mu - s * s
            Rhat = 2.0 * H / (s[:, None] + s[None, :])
            return G @ Rhat @ G.T
        return (sigma_mu - X[k] * Z[k] - corr) / Z[k]

    def solve_newton(sigma_mu, corrs):
        Rc = {k: rhs_for(k, sigma_mu, corrs[k]) for k in cones}
        rhs = rp.copy()
        for k in cones:
            if cp.kinds[k] == PSD:
                W = scal[k][5]
                rhs -= np.tensordot(cp.A[k], Rc[k] - W @ rd[k] @ W, axes=2)
            else:
                rhs -= cp.A[k] @ (Rc[k] - scal[k] * rd[k])
        full = np.concatenate([rhs, rdf])
        sol = linsolve(full)
        dy = sol[:m]
        dX, dZ = [None] * nb, [None] * nb
        off = m
        for k in range(nb):
            if cp.kinds[k] == FREE:
                dX[k] = sol[off:off + cp.sizes[k]]
                off += cp.sizes[k]
                continue
            dZ[k] = rd[k] - cp.ATop(k, dy)
            if cp.kinds[k] == PSD:
                W = scal[k][5]
                dX[k] = Rc[k] - W @ dZ[k] @ W
                dX[k] = (dX[k] + dX[k].T) / 2
            else:
                dX[k] = Rc[k] - scal[k] * dZ[k]
        ap = ad = np.inf
        for k in cones:
            if cp.kinds[k] == PSD:
                ap = min(ap, _max_step(scal[k][3], dX[k]))
                ad = min(ad, _max_step(scal[k][4], dZ[k]))
            else:
                ap = min(ap, _max_step_vec(X[k], dX[k]))
                ad = min(ad, _max_step_vec(Z[k], dZ[k]))
        return dX, dZ, dy, ap, ad

    zero_corr = {k: np.zeros_like(X[k]) for k in cones}

    # predictor
    dX, dZ, dy, ap, ad = solve_newton(0.0, zero_corr)
    ap, ad = min(1.0, ap), min(1.0, ad)
    nu = sum(cp.sizes[k] for k in cones)
    mu_aff = sum(cp.inner(k, X[k] + ap * dX[k], Z[k] + ad * dZ[k]) for k in cones) / nu
    sigma = min(1.0, max(0.0, mu_aff / mu)) ** 3 if mu > 0 else 0.0

    # corrector: second-order term from the scaled predictor directions
    corrs = {}
    for k in cones:
        if cp.kinds[k] == PSD:
            G, Ginv = scal[k][0], scal[k][1]
            dxh = Ginv @ dX[k] @ Ginv.T
            dzh = G.T @ dZ[k] @ G
            corrs[k] = (dxh @ dzh + dzh @ dxh) / 2
        else:
            corrs[k] = dX[k] * dZ[k]
    dX, dZ, dy, ap, ad = solve_newton(sigma * mu, corrs)
    ap = min(1.0, STEP_FRACTION * ap)
    ad = min(1.0, STEP_FRACTION * ad)
    return dX, dZ, dy, ap, ad


def _infeasibility(cp, X, y, cones, frees, big=1e8, tol=1e-6):
    """Farkas-style tests on diverging iterates."""
    by = float(cp.b @ y)
    if np.linalg.norm(y) > big and by > 0:
        yb = y / by
        ok = all(np.linalg.norm(cp.ATop(k, yb)) <= tol for k in frees)
        for k in cones:
            z = -cp.ATop(k, yb)
            lo = np.linalg.eigvalsh(z)[0] if cp.kinds[k] == PSD else z.min()
            ok = ok and lo >= -tol
        if ok:
            return INFEASIBLE
    cx = sum(cp.inner(k, cp.C[k], X[k]) for k in range(len(X)))
    xn = np.sqrt(sum(np.linalg.norm(x) ** 2 for x in X))
    if xn > big and cx < 0:
        xb = [x / -cx for x in X]
        if np.linalg.norm(cp.Aop(xb)) <= tol:
            return UNBOUNDED
    return None


def _report(cp, status, X, Z, y, iters, history, pinf, dinf, pobj=np.nan, dobj=np.nan):
    prim = dual = None
    if X is not None:
        prim = [cp.to_user(k, X[k]) for k in range(len(X))]
        dual = []
        for k in range(len(X)):
            if Z[k] is None:
                dual.append(cp.problem.blocks[k].zero())
            else:
                dual.append(cp.to_user(k, Z[k]))
    return SolveReport(
        status=status,
        primal_objective=float(pobj),
        dual_objective=float(dobj),
        duality_gap=float(abs(pobj - dobj)),
        primal_residual=float(pinf),
        dual_residual=float(dinf),
        iterations=iters,
        primal_solution=prim,
        dual_solution=dual,
        multipliers=cp.full_multipliers(y),
        history=history,
        label=cp.problem.label,
    )


# ---------------------------------------------------------------------------
# independent re-checking


def _pair(a, x):
    if a is None:
        return 0.0
    return float(np.real(np.vdot(a, x))) if np.ndim(a) == 1 else float(np.real(np.sum(a.conj() * x)))


def _cone_min(block, x):
    if block.kind == PSD:
        return min_eig(x)
    if block.kind == NONNEG:
        return float(np.min(x))
    return None


def verify_certificate(problem, report):
    """Recompute feasibility, gap and cone membership from the reported points alone."""
    X = report.primal_solution
    prim_viol = 0.0
    for coeffs, rhs in problem.constraints:
        val = sum(_pair(c, x) for c, x in zip(coeffs, X))
        prim_viol = max(prim_viol, abs(val - rhs))
    p_eigs = [_cone_min(b, x) for b, x in zip(problem.blocks, X)]
    herm = max(float(np.abs(x - x.conj().T).max()) for b, x in zip(problem.blocks, X) if b.kind != NONNEG) \
        if any(b.kind != NONNEG for b in problem.blocks) else 0.0
    prim_viol = max(prim_viol, herm)
    pobj = sum(_pair(c, x) for c, x in zip(problem.objective, X))

    dual_viol, d_eigs, gap, comp = 0.0, [], np.nan, np.nan
    if report.multipliers is not None and report.dual_solution is not None:
        y = report.multipliers
        Zs = report.dual_solution
        for k, blk in enumerate(problem.blocks):
            resid = blk.zero() if problem.objective[k] is None else problem.objective[k].copy()
            for (coeffs, _), yi in zip(problem.constraints, y):
                if coeffs[k] is not None:
                    resid = resid - yi * coeffs[k]
            resid = resid - Zs[k]
            dual_viol = max(dual_viol, float(np.abs(resid).max()))
        d_eigs = [_cone_min(b, z) for b, z in zip(problem.blocks, Zs)]
        gap = pobj - float(problem.rhs() @ y)
        comp = sum(_pair(x, z) for b, x, z in zip(problem.blocks, X, Zs) if b.kind != FREE)
    neg = [-e for e in p_eigs + d_eigs if e is not None]
    max_violation = max([prim_viol, dual_viol] + neg)
    return CertificateReport(prim_viol, dual_viol, gap, comp, p_eigs, d_eigs, max_violation)


# ---------------------------------------------------------------------------
# text dump


def dump_problem(problem, fh):
    """Write ``problem`` in the line-oriented debug format (see the cli module)."""
    fh.write(f"# conic problem: {problem.label}\n")
    fh.write("blocks " + " ".join(f"{b.kind}:{b.size}" for b in problem.blocks) + "\n")
    fh.write("objective" + _triplets(problem.blocks, problem.objective) + "\n")
    for coeffs, rhs in problem.constraints:
        fh.write(f"constraint {rhs!r}" + _triplets(problem.blocks, coeffs) + "\n")


def _triplets(blocks, coeffs):
    out = []
    for k, (blk, c) in enumerate(zip(blocks, coeffs)):
        if c is None:
            continue
        if blk.kind == NONNEG:
            for i in np.flatnonzero(c):
                out.append(f"{k},{i},{i},{float(c[i])!r},0.0")
        else:
            for i, j in zip(*np.nonzero(np.triu(c))):
                v = c[i, j]
                out.append(f"{k},{i},{j},{float(v.real)!r},{float(v.imag)!r}")
    return "".join(" " + t for t in out)


def load_problem(fh):
    """Inverse of :func:`dump_problem`."""
    label, blocks, objective, constraints = "", None, None, []

    def parse(tokens):
        coeffs = [None] * len(blocks)
        for t in tokens:
            k, i, j, re, im = t.split(",")
            k, i, j = int(k), int(i), int(j)
            blk = blocks[k]
            if coeffs[k] is None:
                coeffs[k] = blk.zero().astype(float if blk.kind == NONNEG else complex)
            if blk.kind == NONNEG:
                coeffs[k][i] = float(re)
            else:
                v = complex(float(re), float(im))
                coeffs[k][i, j] = v
                coeffs[k][j, i] = v.conjugate()
        return coeffs

    for line in fh:
        line = line.strip()
        if line.startswith("# conic problem:"):
            label = line[len("# conic problem:"):].strip()
        elif line.startswith("blocks"):
            blocks = [Block(kind, int(size)) for kind, size in (t.split(":") for t in line.split()[1:])]
        elif line.startswith("objective"):
            objective = parse(line.split()[1:])
        elif line.startswith("constraint"):
            parts = line.split()
            constraints.append((parse(parts[2:]), float(parts[1])))
    return ConicProblem(blocks, objective, constraints, label)
