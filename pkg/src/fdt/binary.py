"""Fractional decomposition tree for binary IPs.

Level by level, every fractional node is split by a branching LP into a
0-branch and a 1-branch whose weighted sum stays below the node, then the
level is trimmed back to at most t nodes by a pruning LP whose vertex
optimum cannot lose total mass.  Leaves are integral points dominating the
relaxation; each is pushed down into an actual feasible solution.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .domtoip import UnboundedGapOrInfeasible, dom_to_ip
from .model import ZERO_TOL, Certificate, support

CHECK_TOL = 1e-6
GAMMA_TOL = 1e-9


class InvariantError(AssertionError):
    """A level invariant failed; indicates a solver tolerance breach."""


@dataclass
class BranchResult:
    gamma0: object
    gamma1: object
    x_hat0: tuple = None  # None when the matching gamma is 0
    x_hat1: tuple = None

    @property
    def total(self):
        return self.gamma0 + self.gamma1


def branch_lpc(inst, x_prime, ell, integral_prefix=(), mode="float"):
    """Split x' on coordinate ell into a 0-branch and a 1-branch.

    Solves the two-copy branching LP, rescales each copy by its multiplier,
    and rounds the already-branched prefix coordinates up to restore exact
    integrality there.  Branches with zero multiplier are reported absent.
    """
    exact = mode == "rational"
    tol = 0 if exact else ZERO_TOL
    active = [i for i, v in enumerate(x_prime) if not _le(v, 0, tol)]
    if ell not in active:
        raise ValueError("branch coordinate has value 0; nothing to split")
    a = len(active)
    col = {i: k for k, i in enumerate(active)}  # x^0 block
    L0, L1 = 2 * a, 2 * a + 1
    one = Fraction(1) if exact else 1.0

    prob = lp.LpProblem(
        num_cols=2 * a + 2,
        lower=[0] * (2 * a + 2),
        upper=[None] * (2 * a) + [one, one],
        objective=[0] * (2 * a) + [1, 1],
        maximize=True,
    )
    prob.upper[col[ell]] = 0  # x^0_ell = 0
    for j, lam, off in ((0, L0, 0), (1, L1, a)):
        for row in inst.rows:
            coef = {off + col[i]: c for i, c in row.coef.items() if i in col}
            coef[lam] = coef.get(lam, 0) - row.rhs
            prob.add_row(coef, ">=", 0)
        for i in active:
            prob.add_row({off + col[i]: 1, lam: -1}, "<=", 0)
    prob.add_row({a + col[ell]: 1, L1: -1}, "==", 0)  # x^1_ell = lambda_1
    for i in active:
        prob.add_row({col[i]: 1, a + col[i]: 1}, "<=", x_prime[i])
    prob.add_row({L0: 1, L1: 1}, "<=", 1)

    out = lp.solve(prob, mode=mode)
    if out.status != lp.OPTIMAL:
        raise lp.LpError(f"branching LP unexpectedly {out.status}")
    g0, g1 = out.solution[L0], out.solution[L1]
    if g0 + g1 <= GAMMA_TOL:
        raise UnboundedGapOrInfeasible(
            "branching LP optimum is 0: point outside dom(P) or unbounded gap"
        )
    res = BranchResult(gamma0=g0 if g0 > GAMMA_TOL else 0,
                       gamma1=g1 if g1 > GAMMA_TOL else 0)
    if res.gamma0:
        res.x_hat0 = _scale_branch(out.solution, 0, col, res.gamma0,
                                   len(x_prime), integral_prefix, exact)
    if res.gamma1:
        res.x_hat1 = _scale_branch(out.solution, a, col, res.gamma1,
                                   len(x_prime), integral_prefix, exact)
    return res


def _scale_branch(sol, off, col, gamma, n, integral_prefix, exact):
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    x = [zero] * n
    for i, k in col.items():
        v = sol[off + k] / gamma
        if not exact:
            v = min(max(v, 0.0), 1.0)
        x[i] = v
    for i in integral_prefix:
        x[i] = zero if _le(x[i], 0, ZERO_TOL) else one  # prefix round-up
    return tuple(x)


def prune(nodes, x_star, supp=None, mode="float"):
    """Trim a level with the pruning LP; returns (kept_nodes, old_total, new_total).

    The optimum is a vertex, so at most |supp| multipliers survive; total
    mass never drops because the incoming weights are themselves feasible.
    """
    if supp is None:
        supp = support(x_star)
    prob = lp.LpProblem(num_cols=len(nodes), maximize=True,
                        objective=[1] * len(nodes))
    for i in supp:
        coef = {j: x[i] for j, (x, _) in enumerate(nodes) if not _le(x[i], 0, ZERO_TOL)}
        prob.add_row(coef, "<=", x_star[i])
    out = lp.solve(prob, mode=mode)
    if out.status == lp.UNBOUNDED:
        raise lp.LpError(
            "pruning LP unbounded: a node has empty support; "
            "the zero vector dominates the relaxation"
        )
    if out.status != lp.OPTIMAL:
        raise lp.LpError(f"pruning LP unexpectedly {out.status}")
    old_total = sum(w for _, w in nodes)
    kept = [(x, th) for (x, _), th in zip(nodes, out.solution) if th > GAMMA_TOL]
    return kept, old_total, sum(w for _, w in kept)


def fdt_tree(inst, x_star, mode="float", branch_order=None, check=True, trace=None):
    """Full decomposition: returns a certificate of feasible solutions whose
    convex combination is dominated by factor * x_star componentwise."""
    exact = mode == "rational"
    x0 = tuple(Fraction(v) if exact else float(v) for v in x_star)
    supp = support(x0)
    t = len(supp)
    order = list(supp)
    if branch_order == "random":
        random.Random(0).shuffle(order)
    elif isinstance(branch_order, (list, tuple)):
        order = list(branch_order)

    levels = _run_levels(inst, x0, order, supp, mode, check, trace)
    return _assemble(inst, x0, levels, mode)


def _run_levels(inst, x0, order, supp, mode, check, trace):
    exact = mode == "rational"
    tol = 0 if exact else CHECK_TOL
    L = [(x0, Fraction(1) if exact else 1.0)]
    for depth, coord in enumerate(order):
        grown = []
        branch_totals = []
        for x, w in L:
            v = x[coord]
            if _is01(v, exact):
                grown.append((_snap(x, (coord,), exact), w))
                continue
            br = branch_lpc(inst, x, coord, integral_prefix=order[:depth], mode=mode)
            branch_totals.append(float(br.total))
            if br.gamma0:
                grown.append((br.x_hat0, w * br.gamma0))
            if br.gamma1:
                grown.append((br.x_hat1, w * br.gamma1))
        L, old_total, new_total = prune(grown, x0, supp, mode=mode)
        if check:
            _check_level(L, x0, order[: depth + 1], len(supp), old_total, new_total, tol)
        if trace is not None:
            trace.append({
                "level": depth + 1, "coordinate": coord,
                "pre_prune_size": len(grown), "size": len(L),
                "pre_prune_mass": float(old_total), "mass": float(new_total),
                "branch_totals": branch_totals,
            })
    return L


def _assemble(inst, x0, leaves, mode):
    exact = mode == "rational"
    solutions, weights = [], []
    for x, w in leaves:
        xi = [int(round(float(v))) for v in x]
        solutions.append(tuple(dom_to_ip(inst, xi, mode=mode)))
        weights.append(w)
    total = sum(weights)
    if total <= 0:
        raise UnboundedGapOrInfeasible("no leaf mass survived")
    factor = (Fraction(1) / total) if exact else 1.0 / total
    return Certificate(
        factor=factor,
        weights=tuple(w * factor for w in weights),
        solutions=tuple(solutions),
        base_point=x0,
        name=inst.name,
    )


def fdt_dive(inst, x_star, seed=0, mode="float", trace=None):
    """One random root-to-leaf walk of the tree; deterministic given seed."""
    exact = mode == "rational"
    rng = random.Random(seed)
    y = tuple(Fraction(v) if exact else float(v) for v in x_star)
    order = support(y)
    for depth, coord in enumerate(order):
        if _is01(y[coord], exact):
            y = _snap(y, (coord,), exact)
            continue
        br = branch_lpc(inst, y, coord, integral_prefix=order[:depth], mode=mode)
        p0 = br.gamma0 / br.total
        took0 = rng.random() < p0
        if trace is not None:
            trace.append({"coordinate": coord, "p0": float(p0), "branch": 0 if took0 else 1})
        y = br.x_hat0 if took0 else br.x_hat1
    return dom_to_ip(inst, [int(round(float(v))) for v in y], mode=mode)


def _check_level(L, x_star, branched, t, old_total, new_total, tol):
    if len(L) > t:
        raise InvariantError(f"level has {len(L)} nodes, limit {t}")
    if new_total < old_total - max(tol, 1e-9):
        raise InvariantError(
            f"prune lost mass: {float(old_total)} -> {float(new_total)}"
        )
    n = len(x_star)
    comb = [0] * n
    for x, w in L:
        for i in branched:
            if abs(float(x[i])) > tol and abs(float(x[i]) - 1) > tol:
                raise InvariantError(f"coordinate {i} not integral: {x[i]}")
        for i in range(n):
            comb[i] += w * x[i]
    for i in range(n):
        if comb[i] > x_star[i] + tol:
            raise InvariantError(
                f"mass exceeds base point at {i}: {float(comb[i])} > {float(x_star[i])}"
            )


def _le(a, b, tol):
    return a <= b + tol


def _is01(v, exact):
    if exact:
        return v == 0 or v == 1
    return abs(v) <= ZERO_TOL or abs(v - 1) <= ZERO_TOL


def _snap(x, coords, exact):
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    x = list(x)
    for c in coords:
        x[c] = zero if abs(float(x[c])) <= ZERO_TOL else one
    return tuple(x)
