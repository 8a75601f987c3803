"""Buchberger's algorithm and the ideal toolbox built on it.

Pairs are processed by the normal strategy (smallest lcm first, ties broken
by insertion index) after Gebauer-Moeller pruning, which covers both the
coprime and the chain criterion.  Bases returned by ``buchberger`` are
reduced, monic and sorted by increasing leading monomial.
"""

from __future__ import annotations

import heapq
import threading
from contextlib import contextmanager
from typing import Iterable, Sequence

from .algebra import MonomialOrder, Polynomial, PolyRing

# Bases computed while a recorder is active are appended here; used by the
# self-check suite.  Appends from worker threads are safe under the GIL.
_recorders: list = []


@contextmanager
def record_bases():
    """Collect every (basis, order) pair computed inside the block."""
    log: list = []
    _recorders.append(log)
    try:
        yield log
    finally:
        _recorders.remove(log)


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _reduce_terms(terms: dict, basis: Sequence[tuple], key, p: int) -> dict:
    """Full reduction of ``terms`` by monic ``(lm, terms)`` pairs."""
    f = dict(terms)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for e, gc in g.items():
                    ee = tuple(x + y for x, y in zip(e, q))
                    v = (f.get(ee, 0) - c * gc) % p
                    if v:
                        f[ee] = v
                    else:
                        f.pop(ee, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic_terms(terms: dict, key, p: int) -> tuple:
    lm = max(terms, key=key)
    inv = pow(terms[lm], -1, p)
    return lm, {e: c * inv % p for e, c in terms.items()}


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    if not G or not f.terms:
        return f
    p = f.ring.p
    basis = []
    for g in G:
        f.ring.check(g.ring)
        if g.terms:
            basis.append(_monic_terms(g.terms, order.key, p))
    return Polynomial(f.ring, _reduce_terms(f.terms, basis, order.key, p))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    (mf, cf), (mg, cg) = f.leading(order), g.leading(order)
    m = _lcm(mf, mg)
    p = f.ring.p
    a = f.mul_term(tuple(x - y for x, y in zip(m, mf)), pow(cf, -1, p))
    b = g.mul_term(tuple(x - y for x, y in zip(m, mg)), pow(cg, -1, p))
    return a - b


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder,
               basis: Sequence[Polynomial] | None = None) -> list:
    """Reduced Groebner basis of ``gens`` (plus ``basis``, if given).

    ``basis`` must already be a Groebner basis for ``order``; pairs inside
    it are not revisited.
    """
    gens = [g for g in gens if g.terms]
    known = [g for g in (basis or []) if g.terms]
    if not gens and not known:
        return []
    ring = (gens or known)[0].ring
    for g in gens + known:
        ring.check(g.ring)
    p = ring.p
    key = order.key

    polys: list = []      # (lm, terms), insertion-indexed
    active: list = []     # indices forming the current basis
    pairs: list = []      # heap of (key(lcm), i, j, lcm)
    live: set = set()     # (i, j) pairs still scheduled

    def update(h: int) -> None:
        nonlocal active
        lm_h = polys[h][0]
        cands = [(g, _lcm(lm_h, polys[g][0])) for g in active]
        kept = []
        for idx, (g, lc) in enumerate(cands):
            if _coprime(lm_h, polys[g][0]):
                kept.append((g, lc))
                continue
            dominated = False
            for j, (g2, lc2) in enumerate(cands):
                if j != idx and _divides(lc2, lc) and (lc2 != lc or j < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, lc))
        new_pairs = [(g, lc) for g, lc in kept if not _coprime(lm_h, polys[g][0])]
        # chain criterion on old pairs
        for pr in list(live):
            i, j = pr
            lc = _lcm(polys[i][0], polys[j][0])
            if (_divides(lm_h, lc) and _lcm(polys[i][0], lm_h) != lc
                    and _lcm(polys[j][0], lm_h) != lc):
                live.discard(pr)
        for g, lc in new_pairs:
            pr = (g, h)
            live.add(pr)
            heapq.heappush(pairs, (key(lc), g, h, lc))
        active = [g for g in active if not _divides(lm_h, polys[g][0])] + [h]

    def current():
        return [polys[i] for i in active]

    for g in known:
        polys.append(_monic_terms(g.terms, key, p))
        active.append(len(polys) - 1)
    # insert generators by increasing leading monomial for determinism
    seeds = sorted((_monic_terms(g.terms, key, p) for g in gens), key=lambda t: key(t[0]))
    for lm, terms in seeds:
        red = _reduce_terms(terms, current(), key, p)
        if red:
            polys.append(_monic_terms(red, key, p))
            update(len(polys) - 1)

    while pairs:
        _, i, j, lc = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        (mi, fi), (mj, fj) = polys[i], polys[j]
        qi = tuple(x - y for x, y in zip(lc, mi))
        qj = tuple(x - y for x, y in zip(lc, mj))
        s: dict = {}
        for e, c in fi.items():
            s[tuple(x + y for x, y in zip(e, qi))] = c
        for e, c in fj.items():
            ee = tuple(x + y for x, y in zip(e, qj))
            v = (s.get(ee, 0) - c) % p
            if v:
                s[ee] = v
            else:
                s.pop(ee, None)
        if not s:
            continue
        red = _reduce_terms(s, current(), key, p)
        if red:
            polys.append(_monic_terms(red, key, p))
            update(len(polys) - 1)

    # interreduce tails
    final = sorted(current(), key=lambda t: key(t[0]))
    reduced = []
    for idx, (lm, terms) in enumerate(final):
        others = final[:idx] + final[idx + 1:]
        tail = dict(terms)
        del tail[lm]
        tail = _reduce_terms(tail, others, key, p)
        tail[lm] = 1
        reduced.append(Polynomial(ring, tail))
    for log in _recorders:
        log.append((tuple(reduced), order))
    return reduced


class Ideal:
    """Generators plus a lazily computed, write-once reduced basis."""

    def __init__(self, gens: Iterable[Polynomial], order: MonomialOrder | None = None,
                 ring: PolyRing | None = None):
        gens = [g for g in gens if g.terms]
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without nonzero generators")
            ring = gens[0].ring
        for g in gens:
            ring.check(g.ring)
        self.ring = ring
        self.gens = tuple(gens)
        self.order = order or ring.degrevlex()
        if self.order.nvars != ring.nvars:
            raise ValueError("order does not match the ring")
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def from_basis(cls, basis: Sequence[Polynomial], order: MonomialOrder, ring: PolyRing) -> "Ideal":
        ideal = cls(basis, order, ring)
        ideal._gb = tuple(basis)
        return ideal

    def __repr__(self):
        return f"Ideal([{', '.join(map(str, self.gens))}])"

    @property
    def gb(self) -> tuple:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(buchberger(self.gens, self.order))
        return self._gb

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb, self.order)

    def __contains__(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.gb)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        """Mutual containment, tested by reducing each side's generators."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def with_gens(self, extra: Iterable[Polynomial]) -> "Ideal":
        """This ideal enlarged by ``extra``; reuses the cached basis if present."""
        extra = [g for g in extra if g.terms]
        out = Ideal(self.gens + tuple(extra), self.order, self.ring)
        if self._gb is not None:
            out._gb = tuple(buchberger(extra, self.order, basis=self._gb))
        return out

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.gens, order, self.ring)


def member(f: Polynomial, I: Ideal) -> bool:
    return f in I


def _require_same_ring(I: Ideal, J: Ideal) -> None:
    I.ring.check(J.ring)


class NotEliminationOrder(ValueError):
    pass


def elimination_order(ring: PolyRing, drop: Iterable[str], rest: str = "degrevlex") -> MonomialOrder:
    """Block order with ``drop`` (lex, in registry order) above the remaining variables."""
    drop_idx = sorted(ring.registry.index(n) for n in drop)
    keep = [i for i in range(ring.nvars) if i not in drop_idx]
    blocks = []
    if drop_idx:
        blocks.append((drop_idx, "lex"))
    if keep:
        blocks.append((keep, rest))
    return MonomialOrder.block(ring.nvars, blocks)


def elimination_ideal(I: Ideal, drop: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring of variables not in ``drop``.

    The result stays in ``I.ring`` with the same order; its generators are
    the basis elements free of dropped variables, hence a basis themselves.
    """
    drop_idx = {I.ring.registry.index(n) for n in drop}
    if not I.order.eliminates(drop_idx):
        raise NotEliminationOrder(f"order does not eliminate {sorted(drop)}")
    kept = [g for g in I.gb if not any(e[i] for e in g.terms for i in drop_idx)]
    return Ideal.from_basis(kept, I.order, I.ring)


def eliminate(gens: Sequence[Polynomial], drop: Iterable[str], ring: PolyRing | None = None) -> list:
    """Generators of ``(gens)`` meet the subring without ``drop`` (convenience)."""
    ring = ring or gens[0].ring
    order = elimination_order(ring, drop)
    return list(elimination_ideal(Ideal(gens, order, ring), drop).gens)


def _with_aux(I: Ideal, stem: str = "w"):
    name = I.ring.fresh_name(stem)
    big = I.ring.extended([name])
    order = MonomialOrder.block(big.nvars, [((0,), "lex")] + [
        (tuple(i + 1 for i in idx), kind) for idx, kind in I.order.blocks
    ])
    return big, name, order


def _project(gens: Iterable[Polynomial], ring: PolyRing, order: MonomialOrder) -> Ideal:
    return Ideal.from_basis([g.convert(ring) for g in gens], order, ring)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` meet ``J`` via ``wI + (1 - w)J`` and elimination of ``w``."""
    _require_same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal([], I.order, I.ring)
    big, w, order = _with_aux(I)
    wv = big.var(w)
    gens = [wv * g.convert(big) for g in I.gens]
    gens += [(big.one() - wv) * g.convert(big) for g in J.gens]
    elim = elimination_ideal(Ideal(gens, order, big), [w])
    return _project(elim.gens, I.ring, I.order)


def divide_exact(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """``f / g``; raises ``ArithmeticError`` when ``g`` does not divide ``f``."""
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    lm, lc = g.leading(order)
    p = f.ring.p
    inv = pow(lc, -1, p)
    rem = f
    quot: dict = {}
    while rem.terms:
        m, c = rem.leading(order)
        if not _divides(lm, m):
            raise ArithmeticError(f"{g} does not divide {f}")
        q = tuple(x - y for x, y in zip(m, lm))
        qc = c * inv % p
        quot[q] = qc
        rem = rem - g.mul_term(q, qc)
    return Polynomial(f.ring, quot)


def quotient(I: Ideal, g: Polynomial) -> Ideal:
    """``(I : g)`` as ``(I meet (g)) / g``."""
    if not g.terms:
        return Ideal([I.ring.one()], I.order, I.ring)
    if g.is_constant():
        return Ideal.from_basis(I.gb, I.order, I.ring)
    meet = intersect(I, Ideal([g], I.order, I.ring))
    return Ideal([divide_exact(h, g, I.order) for h in meet.gens], I.order, I.ring)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J)`` as the meet of ``(I : g)`` over the generators of ``J``."""
    _require_same_ring(I, J)
    result = None
    for g in J.gens:
        part = quotient(I, g)
        result = part if result is None else intersect(result, part)
    if result is None:
        return Ideal([I.ring.one()], I.order, I.ring)
    return result


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f^infinity)`` via ``I + (f*w - 1)`` and elimination of ``w``."""
    if not f.terms:
        return Ideal([I.ring.one()], I.order, I.ring)
    big, w, order = _with_aux(I)
    gens = [g.convert(big) for g in I.gens] + [f.convert(big) * big.var(w) - big.one()]
    elim = elimination_ideal(Ideal(gens, order, big), [w])
    return _project(elim.gens, I.ring, I.order)


def saturate_by_colons(I: Ideal, f: Polynomial, limit: int = 64) -> Ideal:
    """Iterated-colon saturation, kept as an independent cross-check."""
    cur = Ideal.from_basis(I.gb, I.order, I.ring)
    for _ in range(limit):
        nxt = quotient(cur, f)
        if nxt.contains_ideal(cur) and cur.contains_ideal(nxt):
            return cur
        cur = nxt
    raise RuntimeError("colon chain did not stabilise within the limit")


def _dedupe(polys: Iterable[Polynomial]) -> list:
    seen = set()
    out = []
    for g in polys:
        if g.terms and g not in seen:
            seen.add(g)
            out.append(g)
    return out


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _require_same_ring(I, J)
    return Ideal(_dedupe(I.gens + J.gens), I.order, I.ring)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _require_same_ring(I, J)
    return Ideal(_dedupe(f * g for f in I.gens for g in J.gens), I.order, I.ring)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative power")
    result = Ideal([I.ring.one()], I.order, I.ring)
    for _ in range(n):
        result = ideal_product(result, I)
    return result


def unit_ideal(ring: PolyRing, order: MonomialOrder | None = None) -> Ideal:
    return Ideal([ring.one()], order, ring)


def zero_ideal(ring: PolyRing, order: MonomialOrder | None = None) -> Ideal:
    return Ideal([], order, ring)
