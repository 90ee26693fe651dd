"""Multivariate polynomials over an exact field, with lex/grevlex orders.

Monomials are exponent tuples.  A :class:`PolyContext` fixes the variable
catalog, the coefficient field and the monomial order, and memoizes a packed
integer sort key per monomial so that order comparisons are single int
comparisons even with 30+ variables.

Division follows the classic ordered-divisor algorithm but is implemented
with a heap of term streams (one per emitted quotient term), which keeps the
cost proportional to the number of terms actually produced instead of
rescanning the working polynomial.
"""

from __future__ import annotations

import heapq
from itertools import repeat

GREVLEX = "grevlex"
LEX = "lex"

_BITS = 16
_MASK = (1 << _BITS) - 1


class PolyContext:
    """Variable catalog + coefficient field + monomial order."""

    __slots__ = ("variables", "field", "order", "nvars", "_keys", "_var_index")

    def __init__(self, variables, field, order=GREVLEX):
        if order not in (GREVLEX, LEX):
            raise ValueError(f"unknown monomial order {order!r}")
        self.variables = tuple(variables)
        self.field = field
        self.order = order
        self.nvars = len(self.variables)
        self._keys = {}
        self._var_index = {v: i for i, v in enumerate(self.variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyContext)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyContext({len(self.variables)} vars, {self.field!r}, {self.order})"

    def key(self, mono):
        """Packed int that compares exactly like the monomial order."""
        k = self._keys.get(mono)
        if k is None:
            if self.order == GREVLEX:
                k = sum(mono)
                for e in reversed(mono):
                    k = (k << _BITS) | (_MASK - e)
            else:
                k = 0
                for e in mono:
                    k = (k << _BITS) | e
            self._keys[mono] = k
        return k

    def with_order(self, order):
        return self if order == self.order else PolyContext(self.variables, self.field, order)

    def extend(self, extra_variables):
        """New context with variables appended (they rank lowest in either order)."""
        return PolyContext(self.variables + tuple(extra_variables), self.field, self.order)

    # -- constructors -------------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def const(self, c):
        c = c if not isinstance(c, int) else self.field.from_int(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self._var_index[name_or_index]
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: self.field.one})

    def poly(self, terms):
        """Polynomial from a {monomial: coefficient} map, dropping zeros."""
        field = self.field
        clean = {}
        for m, c in terms.items():
            if isinstance(c, int) and field.name != "fp":
                c = field.from_int(c)
            elif field.name == "fp":
                c = c % field.p
            if not field.is_zero(c):
                clean[m] = c
        return Polynomial(self, clean)

    def lift(self, p: "Polynomial") -> "Polynomial":
        """Re-home a polynomial from a prefix context into this wider context."""
        pad = self.nvars - len(p.ctx.variables)
        if pad < 0 or p.ctx.variables != self.variables[: p.ctx.nvars]:
            raise ValueError("context is not an extension of the polynomial's")
        if p.ctx.field != self.field:
            raise ValueError("field mismatch in context lift")
        zeros = (0,) * pad
        return Polynomial(self, {m + zeros: c for m, c in p.terms.items()})


# -- monomial helpers (exponent tuples) -------------------------------------


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Polynomial:
    """Immutable-by-convention sparse polynomial: {exponent tuple: coefficient}."""

    __slots__ = ("ctx", "terms", "_lead")

    def __init__(self, ctx: PolyContext, terms: dict):
        self.ctx = ctx
        self.terms = terms
        self._lead = None

    # -- queries -------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(mono_deg(m) == 0 for m in self.terms)

    def leading_monomial(self):
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ctx.key)
        return self._lead

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self):
        m = self.leading_monomial()
        return m, self.terms[m]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def constant_value(self):
        """Coefficient of the constant monomial (field zero if absent)."""
        return self.terms.get((0,) * self.ctx.nvars, self.ctx.field.zero)

    def sorted_terms(self):
        key = self.ctx.key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("polynomials from different contexts")

    def __add__(self, other):
        self._check(other)
        field = self.ctx.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(res.get(m, field.zero), c)
            if field.is_zero(s):
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.ctx, res)

    def __sub__(self, other):
        self._check(other)
        field = self.ctx.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = field.sub(res.get(m, field.zero), c)
            if field.is_zero(s):
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.ctx, res)

    def __neg__(self):
        field = self.ctx.field
        return Polynomial(self.ctx, {m: field.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        field = self.ctx.field
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        res = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                c = field.mul(c1, c2)
                s = field.add(res.get(m, field.zero), c)
                if field.is_zero(s):
                    res.pop(m, None)
                else:
                    res[m] = s
        return Polynomial(self.ctx, res)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a field scalar (ints are embedded first)."""
        field = self.ctx.field
        if isinstance(c, int):
            c = field.from_int(c)
        if field.is_zero(c):
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: field.mul(v, c) for m, v in self.terms.items()})

    def term_mul(self, mono, coeff):
        """Multiply by the single term coeff * x^mono."""
        field = self.ctx.field
        if field.is_zero(coeff):
            return self.ctx.zero()
        return Polynomial(
            self.ctx, {mono_mul(m, mono): field.mul(c, coeff) for m, c in self.terms.items()}
        )

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        field = self.ctx.field
        if lc == field.one:
            return self
        return self.scale(field.inv(lc))

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for m, c in self.sorted_terms():
            factors = [
                f"{ctx.variables[i]}^{e}" if e > 1 else ctx.variables[i]
                for i, e in enumerate(m)
                if e
            ]
            coeff = ctx.field.format(c)
            if ("+" in coeff[1:]) or ("-" in coeff[1:]):
                coeff = f"({coeff})"
            parts.append("*".join([coeff] + factors) if factors else coeff)
        return " + ".join(parts)

    __repr__ = __str__


def poly_arithmetic(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Ring arithmetic dispatch used by the text/CLI surface."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# -- division ----------------------------------------------------------------


def _prepared_divisors(divisors):
    prep = []
    for g in divisors:
        if g.is_zero():
            raise ZeroDivisionError("zero divisor in multivariate division")
        lm, lc = g.leading_term()
        tail = [(m, c) for m, c in g.sorted_terms() if m != lm]
        prep.append((lm, g.ctx.field.inv(lc), tail))
    return prep


def divide_multivariate(f: Polynomial, divisors, track_quotients: bool = True):
    """Ordered multivariate division: f = sum(q_i * g_i) + r.

    Divisors are tried in list order at every step, matching the textbook
    algorithm, so results depend on the listing (as they should).  No term of
    the remainder is divisible by any divisor's leading term.
    """
    ctx = f.ctx
    field = ctx.field
    for g in divisors:
        if not g.is_zero() and g.ctx != ctx:
            raise ValueError("divisor from a different context")
    prep = _prepared_divisors(divisors)
    key = ctx.key

    heap = []  # entries: [negkey, seq, mono, coeff, stream_pos, stream_id]
    streams = []  # (terms, mult_mono, mult_coeff); term 0 already on the heap
    seq = 0

    def push(terms, pos, mult_mono, mult_coeff, stream_id):
        nonlocal seq
        if pos >= len(terms):
            return
        m, c = terms[pos]
        if mult_mono is not None:
            m = mono_mul(m, mult_mono)
            c = field.mul(c, mult_coeff)
        heapq.heappush(heap, [-key(m), seq, m, c, pos, stream_id])
        seq += 1

    f_terms = f.sorted_terms()
    streams.append((f_terms, None, None))
    push(f_terms, 0, None, None, 0)

    quotients = [dict() for _ in divisors] if track_quotients else None
    remainder = {}

    while heap:
        negk, _, mono, coeff, pos, sid = heapq.heappop(heap)
        terms, mm, mc = streams[sid]
        push(terms, pos + 1, mm, mc, sid)
        while heap and heap[0][0] == negk:
            _, _, _, c2, pos2, sid2 = heapq.heappop(heap)
            coeff = field.add(coeff, c2)
            t2, mm2, mc2 = streams[sid2]
            push(t2, pos2 + 1, mm2, mc2, sid2)
        if field.is_zero(coeff):
            continue
        for di, (lm, lcinv, tail) in enumerate(prep):
            if mono_divides(lm, mono):
                qm = mono_div(mono, lm)
                qc = field.mul(coeff, lcinv)
                if track_quotients:
                    quotients[di][qm] = field.add(quotients[di].get(qm, field.zero), qc)
                # working polynomial -= qc * x^qm * g; the head cancels exactly
                nqc = field.neg(qc)
                streams.append((tail, qm, nqc))
                push(tail, 0, qm, nqc, len(streams) - 1)
                break
        else:
            remainder[mono] = coeff

    rem = Polynomial(ctx, remainder)
    if not track_quotients:
        return rem
    return [Polynomial(ctx, q) for q in quotients], rem


def normal_form(f: Polynomial, divisors) -> Polynomial:
    """Remainder of f on division by the divisor list (no quotient tracking)."""
    return divide_multivariate(f, divisors, track_quotients=False)


def poly_eval(p: Polynomial, point) -> object:
    """Evaluate at a full assignment (list indexed like the context variables)."""
    field = p.ctx.field
    acc = field.zero
    for mono, coeff in p.terms.items():
        val = coeff
        for i, e in enumerate(mono):
            for _ in range(e):
                val = field.mul(val, point[i])
        acc = field.add(acc, val)
    return acc


def linear_rows(polys, free_indices, pinned: dict):
    """Coefficient rows of polynomials that are linear in the free variables.

    Pinned variables are substituted; each remaining monomial must involve at
    most one free variable to the first power.  Returns (rows, constants) with
    row columns ordered like ``free_indices``.
    """
    if not polys:
        return [], []
    field = polys[0].ctx.field
    col = {v: k for k, v in enumerate(free_indices)}
    rows, consts = [], []
    for p in polys:
        row = [field.zero] * len(free_indices)
        const = field.zero
        for mono, coeff in p.terms.items():
            val = coeff
            target = None
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                if i in pinned:
                    for _ in range(e):
                        val = field.mul(val, pinned[i])
                elif e == 1 and target is None and i in col:
                    target = i
                else:
                    raise ValueError("polynomial is not linear in the free variables")
            if target is None:
                const = field.add(const, val)
            else:
                c = col[target]
                row[c] = field.add(row[c], val)
        rows.append(row)
        consts.append(const)
    return rows, consts


def s_polynomial(p: Polynomial, q: Polynomial, order=None) -> Polynomial:
    """S(p, q): the leading-term cancellation combination of p and q."""
    if p.is_zero() or q.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    ctx = p.ctx if order in (None, p.ctx.order) else p.ctx.with_order(order)
    if ctx is not p.ctx:
        p = Polynomial(ctx, p.terms)
        q = Polynomial(ctx, q.terms)
    field = ctx.field
    pm, pc = p.leading_term()
    qm, qc = q.leading_term()
    gamma = mono_lcm(pm, qm)
    left = p.term_mul(mono_div(gamma, pm), field.inv(pc))
    right = q.term_mul(mono_div(gamma, qm), field.inv(qc))
    return left - right
