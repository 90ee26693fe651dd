"""Univariate polynomial utilities over F_p: root finding and resultants.

Polynomials are coefficient lists, lowest degree first.  Root finding uses
the standard gcd with x^p - x followed by equal-degree splitting, which is
all the witness search needs (degrees stay tiny).  The bivariate resultant
is computed by interpolating determinants of Sylvester matrices.
"""

from __future__ import annotations


def trim(a, p):
    while a and a[-1] % p == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c % p
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out, p)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return trim(out, p)


def mod(a, b, p):
    """a mod b; b need not be monic."""
    a = [c % p for c in a]
    binv = pow(b[-1], p - 2, p)
    bm = [c * binv % p for c in b]
    while len(a) >= len(bm):
        f = a[-1]
        if f:
            off = len(a) - len(bm)
            for i in range(len(bm) - 1):
                a[off + i] = (a[off + i] - f * bm[i]) % p
        a.pop()
    return trim(a, p)


def gcd(a, b, p):
    a, b = trim(a[:], p), trim(b[:], p)
    while b:
        a, b = b, mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def divide(a, b, p):
    """Exact quotient a / b (remainder assumed zero)."""
    a = [c % p for c in a]
    q = []
    binv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        f = a[-1] * binv % p
        q.append(f)
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] = (a[off + i] - f * b[i]) % p
        a.pop()
    q.reverse()
    return trim(q, p)


def eval_at(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _powmod(base, e, modulus, p):
    result = [1]
    base = mod(base[:], modulus, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), modulus, p)
        base = mod(mul(base, base, p), modulus, p)
        e >>= 1
    return result


def roots(a, p, rng) -> list:
    """All roots of a in F_p (each once), via x^p - x and random splitting."""
    a = trim([c % p for c in a], p)
    if len(a) <= 1:
        return []
    xp = _powmod([0, 1], p, a, p)
    xp_minus_x = add(xp, [0, p - 1], p)
    core = gcd(a, xp_minus_x, p)
    if len(core) <= 1:
        return []
    found = []

    def split(h):
        deg = len(h) - 1
        if deg == 0:
            return
        if deg == 1:
            found.append((-h[0] * pow(h[1], p - 2, p)) % p)
            return
        while True:
            shift = rng.randrange(p)
            w = _powmod([shift, 1], (p - 1) // 2, h, p)
            w = add(w, [p - 1], p)
            d = gcd(h, w, p)
            if 0 < len(d) - 1 < deg:
                split(d)
                split(divide(h, d, p))
                return

    split(core)
    return sorted(set(found))


def sylvester_resultant_in_second(f_eval, deg_t_f, deg_t_g, deg_s_bound, p):
    """Resultant in t of two bivariate polynomials, as a polynomial in s.

    ``f_eval(s)`` must return the pair of coefficient lists (in t) of both
    polynomials at a numeric s.  The result is interpolated from
    deg_s_bound + 1 sample points, so the bound must be honest.
    """
    n = deg_t_f + deg_t_g
    if deg_s_bound + 1 > p:
        raise ValueError("field too small for interpolation")
    xs = list(range(deg_s_bound + 1))
    ys = []
    for s in xs:
        ft, gt = f_eval(s)
        ft = (ft + [0] * (deg_t_f + 1))[: deg_t_f + 1]
        gt = (gt + [0] * (deg_t_g + 1))[: deg_t_g + 1]
        syl = [[0] * n for _ in range(n)]
        for r in range(deg_t_g):
            for i, c in enumerate(reversed(ft)):
                syl[r][r + i] = c
        for r in range(deg_t_f):
            for i, c in enumerate(reversed(gt)):
                syl[deg_t_g + r][r + i] = c
        ys.append(_det_fp(syl, p))
    return _lagrange(xs, ys, p)


def _det_fp(a, p):
    n = len(a)
    rows = [r[:] for r in a]
    res = 1
    neg = False
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] % p), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            neg = not neg
        res = res * rows[c][c] % p
        inv = pow(rows[c][c], p - 2, p)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv % p
                for j in range(c, n):
                    rows[i][j] = (rows[i][j] - f * rows[c][j]) % p
    return (p - res) % p if neg else res


def _lagrange(xs, ys, p):
    """Interpolating polynomial through the sample points, over F_p."""
    out = [0] * len(xs)
    for xi, yi in zip(xs, ys):
        if yi == 0:
            continue
        num = [1]
        den = 1
        for xj in xs:
            if xj == xi:
                continue
            num = mul(num, [(-xj) % p, 1], p)
            den = den * (xi - xj) % p
        scale = yi * pow(den, p - 2, p) % p
        for i, c in enumerate(num):
            out[i] = (out[i] + c * scale) % p
    return trim(out, p)
