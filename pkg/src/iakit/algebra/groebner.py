"""Buchberger's algorithm with normal pair selection and classical pruning.

The loop is the plain completion algorithm: reduce every S-polynomial against
the working basis, adjoin nonzero remainders, repeat.  Pair bookkeeping uses
the Gebauer-Moeller rules (coprime leading monomials, chain criterion), which
discard provably redundant pairs without changing the computed ideal.  The
final basis is interreduced to the unique reduced Groebner basis.

Resource budgets turn runaway computations into a distinguished
``BudgetExhausted`` outcome carrying the partial state; a budget stop is
never reported as a verdict.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field as dc_field

from .poly import (
    GREVLEX,
    Polynomial,
    mono_coprime,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    normal_form,
    s_polynomial,
)


@dataclass
class Budget:
    """Caps on a single Buchberger run."""

    max_reductions: int = 1_000_000
    max_seconds: float = 600.0
    max_basis: int = 25_000


@dataclass
class RunStats:
    reductions: int = 0
    zero_reductions: int = 0
    pairs_skipped: int = 0
    basis_peak: int = 0
    elapsed: float = 0.0


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis plus the generators it came from."""

    polys: list
    order: str
    generators: list
    stats: RunStats = dc_field(default_factory=RunStats)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


class BudgetExhausted(Exception):
    """Raised when a resource cap trips; carries the partial basis."""

    def __init__(self, reason: str, partial_basis, stats: RunStats):
        super().__init__(reason)
        self.reason = reason
        self.partial_basis = partial_basis
        self.stats = stats


def _interreduce(polys):
    """Reduce every element against the others until stable; drop zeros."""
    polys = [p.monic() for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1 :]
            if not others:
                continue
            r = normal_form(polys[i], others)
            if r.terms != polys[i].terms:
                changed = True
                if r.is_zero():
                    polys.pop(i)
                else:
                    polys[i] = r.monic()
                break
    key = polys[0].ctx.key if polys else None
    polys.sort(key=lambda p: key(p.leading_monomial()))
    return polys


def buchberger(generators, order: str = GREVLEX, budget: Budget | None = None,
               stop_on_unit: bool = True) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal the generators span.

    Zero generators are dropped; an all-zero input is an error.  When
    ``stop_on_unit`` is set the loop aborts as soon as a nonzero constant
    enters the working basis (the ideal is then the whole ring and the
    returned basis is [1], which is already reduced).
    """
    budget = budget or Budget()
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    ctx = gens[0].ctx.with_order(order)
    for g in gens:
        if g.ctx.with_order(order) != ctx:
            raise ValueError("generators from different contexts")
    gens = [Polynomial(ctx, g.terms) for g in gens]

    stats = RunStats()
    start = time.monotonic()

    basis = []
    lms = []
    pairs = []  # heap of (deg(lcm), key(lcm), i, j)
    pair_lcm = {}

    def over_budget():
        stats.elapsed = time.monotonic() - start
        if stats.reductions > budget.max_reductions:
            return "reduction cap exceeded"
        if stats.elapsed > budget.max_seconds:
            return "wall-clock cap exceeded"
        if len(basis) > budget.max_basis:
            return "basis-size cap exceeded"
        return None

    def add_poly(h):
        """Gebauer-Moeller pair update for a new basis element."""
        t = len(basis)
        lt = h.leading_monomial()
        fresh = {}
        for i in range(t):
            fresh[i] = mono_lcm(lms[i], lt)
        # chain criterion among the fresh pairs
        keep = []
        for i in range(t):
            lcm_i = fresh[i]
            dominated = False
            for j in range(t):
                if j == i:
                    continue
                if mono_divides(fresh[j], lcm_i) and fresh[j] != lcm_i:
                    dominated = True
                    break
            if dominated:
                stats.pairs_skipped += 1
                continue
            keep.append(i)
        # among pairs with identical lcm keep a single representative
        seen = {}
        for i in keep:
            seen.setdefault(fresh[i], i)
        # coprime criterion
        for lcm_m, i in seen.items():
            if mono_coprime(lms[i], lt):
                stats.pairs_skipped += 1
                continue
            heapq.heappush(pairs, (mono_deg(lcm_m), ctx.key(lcm_m), i, t))
            pair_lcm[(i, t)] = lcm_m
        # prune old pairs superseded by the newcomer
        for (i, j), lcm_ij in list(pair_lcm.items()):
            if j == t:
                continue
            if (
                mono_divides(lt, lcm_ij)
                and fresh.get(i) != lcm_ij
                and fresh.get(j) != lcm_ij
            ):
                del pair_lcm[(i, j)]
                stats.pairs_skipped += 1
        basis.append(h)
        lms.append(lt)
        stats.basis_peak = max(stats.basis_peak, len(basis))

    unit_found = False
    for g in gens:
        if unit_found:
            break
        h = normal_form(g, basis) if basis else g
        stats.reductions += 1
        if h.is_zero():
            stats.zero_reductions += 1
            continue
        h = h.monic()
        if stop_on_unit and h.is_constant():
            unit_found = True
        add_poly(h)

    while pairs and not unit_found:
        reason = over_budget()
        if reason:
            raise BudgetExhausted(reason, list(basis), stats)
        _, _, i, j = heapq.heappop(pairs)
        if (i, j) not in pair_lcm:
            continue
        del pair_lcm[(i, j)]
        s = s_polynomial(basis[i], basis[j])
        stats.reductions += 1
        if s.is_zero():
            stats.zero_reductions += 1
            continue
        h = normal_form(s, basis)
        if h.is_zero():
            stats.zero_reductions += 1
            continue
        h = h.monic()
        if stop_on_unit and h.is_constant():
            unit_found = True
        add_poly(h)

    if unit_found:
        reduced = [ctx.const(ctx.field.one)]
    else:
        reduced = _interreduce(basis)
    stats.elapsed = time.monotonic() - start
    return GroebnerBasis(polys=reduced, order=order, generators=list(generators), stats=stats)


def contains_unit(basis: GroebnerBasis) -> bool:
    """True iff some basis element is a nonzero constant (ideal = whole ring)."""
    for p in basis.polys:
        if not p.is_zero() and p.is_constant():
            return True
    return False


def ideal_membership(f: Polynomial, basis: GroebnerBasis) -> bool:
    """f lies in the ideal iff its remainder modulo the basis vanishes."""
    if f.is_zero():
        return True
    ctx = basis.polys[0].ctx
    if f.ctx.with_order(ctx.order) != ctx:
        raise ValueError("polynomial from a different context than the basis")
    f = Polynomial(ctx, f.terms)
    return normal_form(f, basis.polys).is_zero()
