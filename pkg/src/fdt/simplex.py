"""Exact bounded-variable primal simplex over the rationals.

Two-phase full-tableau method with Bland's pivoting rule.  Slow compared to
any float solver, but every optimum it returns is an exact vertex of the
feasible region, which the pruning step downstream relies on.  Intended for
small problems (a few hundred nonzeros); the float backend handles the rest.
"""

from fractions import Fraction

MAX_ITER = 200_000


class CyclingError(RuntimeError):
    """Iteration guard tripped; unreachable under Bland's rule."""


def _to_equality_form(problem):
    """Append one slack column per inequality row; returns (A, b, lo, hi, c)."""
    n = problem.num_cols
    lo = [Fraction(v) for v in problem.lower]
    hi = [None if v is None else Fraction(v) for v in problem.upper]
    c = [Fraction(v) for v in problem.objective]
    if problem.maximize:
        c = [-v for v in c]
    rows = []
    b = []
    ncol = n
    for coef, sense, rhs in problem.rows:
        row = {int(i): Fraction(v) for i, v in coef.items() if Fraction(v) != 0}
        rhs = Fraction(rhs)
        if sense == ">=":
            row[ncol] = Fraction(-1)
        elif sense == "<=":
            row[ncol] = Fraction(1)
        elif sense in ("==", "="):
            ncol -= 1  # no slack
        else:
            raise ValueError(f"unknown sense {sense!r}")
        if sense in (">=", "<="):
            lo.append(Fraction(0))
            hi.append(None)
            c.append(Fraction(0))
        ncol += 1
        rows.append(row)
        b.append(rhs)
    for v in lo:
        if v is None:
            raise ValueError("finite lower bounds required")
    for l, h in zip(lo, hi):
        if h is not None and h < l:
            raise ValueError("upper bound below lower bound")
    return rows, b, lo, hi, c, ncol


class _Tableau:
    def __init__(self, rows, b, lo, hi, ncol):
        self.m = len(rows)
        self.n = ncol
        self.lo = lo
        self.hi = hi
        # nonbasic start: everything at its lower bound
        self.at_upper = set()
        xN = lo
        sgn = []
        self.xB = []
        for k, row in enumerate(rows):
            r = b[k] - sum(v * xN[j] for j, v in row.items())
            sgn.append(1 if r >= 0 else -1)
            self.xB.append(abs(r))
        self.T = []
        for k, row in enumerate(rows):
            dense = [Fraction(0)] * ncol
            for j, v in row.items():
                dense[j] = sgn[k] * v
            self.T.append(dense)
        # artificial basis; artificial for row k has index n + k and never re-enters
        self.basis = [ncol + k for k in range(self.m)]

    def value(self, j):
        if j in self.basis:
            return self.xB[self.basis.index(j)]
        return self.hi[j] if j in self.at_upper else self.lo[j]

    def values(self):
        out = [self.hi[j] if j in self.at_upper else self.lo[j] for j in range(self.n)]
        for i, j in enumerate(self.basis):
            if j < self.n:
                out[j] = self.xB[i]
        return out

    def _reduced_costs(self, c):
        cB = [c[j] if j < self.n else self.art_cost for j in self.basis]
        d = list(c)
        for i, ci in enumerate(cB):
            if ci == 0:
                continue
            Ti = self.T[i]
            for j in range(self.n):
                if Ti[j] != 0:
                    d[j] -= ci * Ti[j]
        return d

    def run(self, c, art_cost):
        """Minimize c over the current tableau; returns 'optimal' or 'unbounded'."""
        self.art_cost = art_cost
        basic = set(self.basis)
        for _ in range(MAX_ITER):
            d = self._reduced_costs(c)
            enter = -1
            for j in range(self.n):
                if j in basic or self.lo[j] == self.hi[j]:
                    continue
                if j in self.at_upper:
                    if d[j] > 0:
                        enter = j
                        break
                elif d[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            sigma = -1 if enter in self.at_upper else 1
            w = [self.T[i][enter] for i in range(self.m)]
            # ratio test: largest step t >= 0 keeping everything inside bounds
            t_best = None
            leave = -1  # -1 means bound flip of the entering variable
            if self.hi[enter] is not None:
                t_best = self.hi[enter] - self.lo[enter]
            for i in range(self.m):
                swi = sigma * w[i]
                if swi > 0:
                    lb = self.lo[self.basis[i]] if self.basis[i] < self.n else Fraction(0)
                    t_i = (self.xB[i] - lb) / swi
                elif swi < 0:
                    ub = self.hi[self.basis[i]] if self.basis[i] < self.n else None
                    if ub is None:
                        continue
                    t_i = (ub - self.xB[i]) / (-swi)
                else:
                    continue
                if t_best is None or t_i < t_best:
                    t_best = t_i
                    leave = i
                elif t_i == t_best and leave >= 0 and self.basis[i] < self.basis[leave]:
                    # Bland tie-break on the leaving variable index
                    leave = i
            if t_best is None:
                return "unbounded"
            for i in range(self.m):
                if w[i] != 0:
                    self.xB[i] -= sigma * t_best * w[i]
            if leave < 0:
                # entering variable flips from one finite bound to the other
                if enter in self.at_upper:
                    self.at_upper.discard(enter)
                else:
                    self.at_upper.add(enter)
                continue
            leaving = self.basis[leave]
            enter_val = (self.hi[enter] if enter in self.at_upper else self.lo[enter]) + sigma * t_best
            if leaving < self.n:
                if sigma * w[leave] > 0:
                    self.at_upper.discard(leaving)
                else:
                    self.at_upper.add(leaving)
            basic.discard(leaving)
            basic.add(enter)
            self.basis[leave] = enter
            self.at_upper.discard(enter)
            piv = self.T[leave][enter]
            Tr = self.T[leave]
            inv = 1 / piv
            self.T[leave] = [v * inv for v in Tr]
            Tr = self.T[leave]
            for i in range(self.m):
                if i == leave:
                    continue
                f = self.T[i][enter]
                if f != 0:
                    Ti = self.T[i]
                    self.T[i] = [a - f * bb for a, bb in zip(Ti, Tr)]
            self.xB[leave] = enter_val
        raise CyclingError("simplex iteration limit exceeded")

    def drive_out_artificials(self):
        """Pivot zero-valued artificials out of the basis; drop redundant rows."""
        drop = []
        for i in range(self.m):
            if self.basis[i] < self.n:
                continue
            piv_col = next(
                (j for j in range(self.n) if self.T[i][j] != 0 and self.lo[j] != self.hi[j]),
                None,
            )
            if piv_col is None:
                drop.append(i)
                continue
            # zero-step pivot: the solution is unchanged, so the incoming
            # variable keeps the bound value it currently sits at
            enter_val = self.hi[piv_col] if piv_col in self.at_upper else self.lo[piv_col]
            self.basis[i] = piv_col
            self.at_upper.discard(piv_col)
            self.xB[i] = enter_val
            piv = self.T[i][piv_col]
            self.T[i] = [v / piv for v in self.T[i]]
            Tr = self.T[i]
            for k in range(self.m):
                if k == i:
                    continue
                f = self.T[k][piv_col]
                if f != 0:
                    self.T[k] = [a - f * bb for a, bb in zip(self.T[k], Tr)]
        for i in reversed(drop):
            del self.T[i], self.xB[i], self.basis[i]
            self.m -= 1


def solve_rational(problem):
    """Exact two-phase simplex.  Returns (status, values, objective, basis, duals).

    values covers the problem's structural columns only; basis lists the
    basic column indices (structural and slack); duals has one multiplier per
    original row, None for rows dropped as redundant.
    """
    rows, b, lo, hi, c, ncol = _to_equality_form(problem)
    tab = _Tableau(rows, b, lo, hi, ncol)

    phase1_cost = [Fraction(0)] * ncol
    tab.run(phase1_cost, art_cost=Fraction(1))
    infeas = sum(
        tab.xB[i] for i in range(tab.m) if tab.basis[i] >= ncol
    )
    if infeas > 0:
        return "infeasible", None, None, None, None
    tab.drive_out_artificials()

    status = tab.run(c, art_cost=Fraction(0))
    if status == "unbounded":
        return "unbounded", None, None, None, None

    vals = tab.values()
    x = vals[: problem.num_cols]
    obj = sum(Fraction(ci) * v for ci, v in zip(problem.objective, x))
    basis = sorted(j for j in tab.basis if j < ncol)
    duals = _recover_duals(problem, tab, c, ncol)
    if problem.maximize:
        duals = None if duals is None else [None if y is None else -y for y in duals]
    return "optimal", x, obj, basis, duals


def _recover_duals(problem, tab, c, ncol):
    """y_k = c_B . B^{-1} e_k read off the slack column of row k, when present."""
    d = tab._reduced_costs(c)
    duals = []
    col = problem.num_cols
    for coef, sense, rhs in problem.rows:
        if sense == ">=":
            duals.append(d[col])  # slack coef is -1: d_s = 0 + y_k
            col += 1
        elif sense == "<=":
            duals.append(-d[col])
            col += 1
        else:
            duals.append(None)
    return duals
