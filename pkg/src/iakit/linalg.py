"""Exact dense linear algebra over any of the package's coefficient fields.

Matrices are plain lists of row lists.  Everything here is fraction-free in
spirit but straightforward Gauss-Jordan in practice; the systems solved by
the scheme constructors are small (at most ~100 rows), so clarity wins over
asymptotics.
"""

from __future__ import annotations


def zeros(field, n, m):
    return [[field.zero for _ in range(m)] for _ in range(n)]


def identity(field, n):
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def diag(field, entries):
    n = len(entries)
    out = zeros(field, n, n)
    for i, e in enumerate(entries):
        out[i][i] = e
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_add(field, a, b):
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_sub(field, a, b):
    return [[field.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(field, a, c):
    return [[field.mul(x, c) for x in row] for row in a]


def mat_mul(field, a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = transpose(b)
    out = []
    for i in range(n):
        row_a = a[i]
        row = []
        for j in range(m):
            col = bt[j]
            acc = field.zero
            for t in range(k):
                acc = field.add(acc, field.mul(row_a[t], col[t]))
            row.append(acc)
        out.append(row)
    return out


def mat_vec(field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for x, y in zip(row, v):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def rref(field, a):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in a]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if not field.is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(field, a):
    if getattr(field, "name", None) == "qi" and a:
        return _qi_echelon(a)[2]
    return len(rref(field, a)[1])


def nullspace(field, a):
    """Basis of the right nullspace of a (list of vectors)."""
    if not a:
        return []
    if getattr(field, "name", None) == "qi":
        return _qi_nullspace(a)
    ncols = len(a[0])
    rows, pivots = rref(field, a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for ri, pc in enumerate(pivots):
            v[pc] = field.neg(rows[ri][fc])
        basis.append(v)
    return basis


def rank_nullspace(field, a):
    """(rank, nullspace basis) in one elimination pass."""
    if not a:
        return 0, []
    basis = nullspace(field, a)
    return len(a[0]) - len(basis), basis


# -- fraction-free fast path over Q(i) ----------------------------------------
#
# Plain rref over Q(i) drowns in gcd normalization once entries grow to
# minor-sized rationals.  Clearing denominators row-wise and running Bareiss
# elimination over the Gaussian integers keeps every division exact and
# gcd-free; rationals only reappear in the final back-substitution.


try:
    from gmpy2 import mpz

    def _divexact(a, b):
        from gmpy2 import divexact

        return divexact(a, b)
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int

    def _divexact(a, b):
        return a // b


def _qi_echelon(a):
    """Bareiss echelon form of a Gaussian-rational matrix.

    Rows are cleared to Gaussian-integer entries and eliminated fraction-free
    (every division is exact, no gcd normalization), which is what makes the
    larger scheme systems tractable.  Returns (integer rows, pivot columns,
    rank); row order matches the pivot list.
    """
    from math import lcm

    rows = []
    for row in a:
        den = 1
        for z in row:
            den = lcm(den, int(z.re.denominator), int(z.im.denominator))
        rows.append([(mpz(int(z.re.numerator) * (den // int(z.re.denominator))),
                      mpz(int(z.im.numerator) * (den // int(z.im.denominator))))
                     for z in row])
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    prev_re = prev_im = None
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c][0] or rows[i][c][1]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pa, pb = rows[r][c]
        row_r = rows[r]
        if prev_re is not None:
            pnorm = prev_re * prev_re + prev_im * prev_im
        for i in range(r + 1, nrows):
            ha, hb = rows[i][c]
            row_i = rows[i]
            new_row = []
            for j in range(ncols):
                xa, xb = row_i[j]
                ya, yb = row_r[j]
                re = pa * xa - pb * xb - (ha * ya - hb * yb)
                im = pa * xb + pb * xa - (ha * yb + hb * ya)
                if prev_re is not None and (re or im):
                    # divide exactly by the previous pivot (Bareiss step)
                    t_re = re * prev_re + im * prev_im
                    t_im = im * prev_re - re * prev_im
                    re = _divexact(t_re, pnorm)
                    im = _divexact(t_im, pnorm)
                new_row.append((re, im))
            rows[i] = new_row
        prev_re, prev_im = pa, pb
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots, r


def _qi_back_substitute(int_rows, pivots, ncols, free_values):
    """Exact solution of the echelon system with the free columns fixed."""
    from .algebra.scalars import GaussianRational

    zero = GaussianRational(0)
    x = [zero] * ncols
    for c, val in free_values.items():
        x[c] = val
    for ri in range(len(pivots) - 1, -1, -1):
        pc = pivots[ri]
        row = int_rows[ri]
        acc = zero
        for j in range(pc + 1, ncols):
            re, im = row[j]
            if (re or im) and x[j] is not zero:
                acc = acc + GaussianRational(re, im) * x[j]
        piv = GaussianRational(*row[pc])
        x[pc] = -acc / piv
    return x


def _qi_nullspace(a):
    from .algebra.scalars import GaussianRational

    ncols = len(a[0])
    int_rows, pivots, rank_ = _qi_echelon(a)
    free = [c for c in range(ncols) if c not in pivots]
    one, zero = GaussianRational(1), GaussianRational(0)
    basis = []
    for fc in free:
        vals = {c: one if c == fc else zero for c in free}
        basis.append(_qi_back_substitute(int_rows, pivots, ncols, vals))
    return basis


class HomogeneousSolver:
    """Exact solutions of A x = 0, sampled by assigning the free columns.

    Over Q(i) the elimination is fraction-free (Bareiss over the Gaussian
    integers), so large systems avoid the gcd churn of rational pivoting;
    rationals only appear in per-sample back-substitution.
    """

    def __init__(self, field, rows, ncols):
        self.field = field
        self.ncols = ncols
        if not rows:
            self.rank = 0
            self.pivots = []
            self._int_rows = None
            self._rref = None
        elif getattr(field, "name", None) == "qi":
            self._int_rows, self.pivots, self.rank = _qi_echelon(rows)
            self._rref = None
        else:
            self._rref, self.pivots = rref(field, rows)
            self.rank = len(self.pivots)
            self._int_rows = None
        self.free = [c for c in range(ncols) if c not in self.pivots]

    @property
    def nullity(self):
        return self.ncols - self.rank

    def solve_with(self, free_values: dict):
        if self._int_rows is not None:
            return _qi_back_substitute(self._int_rows, self.pivots, self.ncols, free_values)
        field = self.field
        x = [field.zero] * self.ncols
        for c, val in free_values.items():
            x[c] = val
        for ri in range(len(self.pivots) - 1, -1, -1):
            pc = self.pivots[ri]
            row = self._rref[ri]
            acc = field.zero
            for j in range(pc + 1, self.ncols):
                if not field.is_zero(row[j]) and not field.is_zero(x[j]):
                    acc = field.add(acc, field.mul(row[j], x[j]))
            x[pc] = field.neg(acc)  # rref pivots are 1
        return x

    def sample(self, draw):
        return self.solve_with({c: draw() for c in self.free})

    def basis(self):
        out = []
        for fc in self.free:
            vals = {c: (self.field.one if c == fc else self.field.zero) for c in self.free}
            out.append(self.solve_with(vals))
        return out


def det(field, a):
    n = len(a)
    rows = [list(r) for r in a]
    acc = field.one
    sign_flip = False
    for c in range(n):
        pr = next((i for i in range(c, n) if not field.is_zero(rows[i][c])), None)
        if pr is None:
            return field.zero
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign_flip = not sign_flip
        acc = field.mul(acc, rows[c][c])
        inv = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(rows[i][c]):
                f = field.mul(rows[i][c], inv)
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return field.neg(acc) if sign_flip else acc


def lin_combo(field, basis, coeffs):
    """Sum of coeff * basis vector pairs."""
    n = len(basis[0])
    out = [field.zero] * n
    for c, vec in zip(coeffs, basis):
        if field.is_zero(c):
            continue
        for i in range(n):
            out[i] = field.add(out[i], field.mul(c, vec[i]))
    return out
