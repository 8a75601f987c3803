"""Equations of Rees algebras and the invariants read off from them.

A ring ``R = k[Z]/L`` is never computed in directly: every ideal of ``R`` is
handled through its preimage in ``k[Z]``, i.e. with ``L`` adjoined.

The Rees ideal ``Q`` of ``I = (x_1, ..., x_k)`` is the kernel of
``k[Z, T] -> R[u]``, ``T_i -> x_i u``.  It is obtained by eliminating ``u``
from ``L + (T_i - x_i u)`` and is graded by T-degree.  ``Q<m>`` denotes the
subideal generated by components of T-degree at most ``m``; the degree-``n``
part of ``Q / Q<n-1>`` holds the fresh equations counted by
``fresh_generators``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import monomial as mono
from .algebra import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    format_polynomial,
    t_components,
    t_degree,
)
from .groebner import (
    Ideal,
    elimination_ideal,
    intersect,
    quotient,
)


class NotAReduction(ValueError):
    pass


class NotAReductionWithinCap(NotAReduction):
    def __init__(self, cap: int):
        super().__init__(f"no r <= {cap} with I^(r+1) inside J*I^r")
        self.cap = cap


class TnFailed(AssertionError):
    def __init__(self, i: int, n: int):
        super().__init__(f"colon condition fails for generator {i} in degree {n}")
        self.i = i
        self.n = n


class HypothesisFailed(AssertionError):
    def __init__(self, n: int):
        super().__init__(f"the subideal is not of linear type in degree {n}")
        self.n = n


class OracleFailure(RuntimeError):
    """An elimination output failed the substitution check; indicates a bug."""


class ZeroGenerator(ValueError):
    pass


# -- rings and ideals --------------------------------------------------------

@dataclass(frozen=True)
class PresentedRing:
    """``k[Z] / L`` with ``L`` given by generators in the base variables."""

    ring: PolyRing
    relations: tuple = ()

    def __post_init__(self):
        for r in self.relations:
            self.ring.check(r.ring)
        object.__setattr__(self, "relations", tuple(r for r in self.relations if r.terms))

    @classmethod
    def polynomial(cls, names: Sequence[str], modulus: int | None = None) -> "PresentedRing":
        ring = PolyRing(names) if modulus is None else PolyRing(names, modulus=modulus)
        return cls(ring)

    @property
    def L(self) -> Ideal:
        cached = self.__dict__.get("_L")
        if cached is None:
            cached = Ideal(self.relations, ring=self.ring)
            object.__setattr__(self, "_L", cached)
        return cached

    def is_polynomial_ring(self) -> bool:
        return not self.relations

    def parse(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    def ambient(self, gens: Sequence[Polynomial]) -> Ideal:
        """Preimage in ``k[Z]`` of the ideal generated by ``gens`` in ``R``."""
        return Ideal(tuple(gens) + self.relations, ring=self.ring)

    def is_zero(self, f: Polynomial) -> bool:
        return f in self.L

    def ideal(self, gens: Sequence) -> "IdealSpec":
        return IdealSpec(self, tuple(self.parse(g) if isinstance(g, str) else g for g in gens))


@dataclass(frozen=True)
class IdealSpec:
    """An ordered generating sequence of an ideal of a presented ring."""

    ring: PresentedRing
    gens: tuple

    def __post_init__(self):
        for g in self.gens:
            self.ring.ring.check(g.ring)

    def __len__(self):
        return len(self.gens)

    def ambient(self) -> Ideal:
        return self.ring.ambient(self.gens)

    def sub(self, indices: Sequence[int]) -> "IdealSpec":
        return IdealSpec(self.ring, tuple(self.gens[i] for i in indices))

    def without(self, index: int) -> "IdealSpec":
        index %= len(self.gens)
        return IdealSpec(self.ring, self.gens[:index] + self.gens[index + 1:])

    def is_monomial(self) -> bool:
        return self.ring.is_polynomial_ring() and all(g.is_monomial() for g in self.gens)

    def __str__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")"


def quotient_by_element(ring: PresentedRing, y: Polynomial) -> PresentedRing:
    """``R / (y)``; the zero element gives back ``R``."""
    ring.ring.check(y.ring)
    if not y.terms:
        return ring
    return PresentedRing(ring.ring, ring.relations + (y,))


def image_ideal(I: IdealSpec, target: PresentedRing) -> IdealSpec:
    """``I`` pushed to a quotient ring, dropping generators that become zero."""
    return IdealSpec(target, tuple(g for g in I.gens if not target.is_zero(g)))


# -- ideal arithmetic backends -----------------------------------------------
#
# Colon chains, colon conditions and the obstruction ideals are written once
# against this interface.  The monomial backend applies only to monomial
# generators in a polynomial ring; the Groebner backend always applies.

class _MonomialOps:
    exact_counts = True

    def __init__(self, ring: PresentedRing):
        self.ring = ring
        self.arity = ring.ring.nvars

    @staticmethod
    def _exp(f: Polynomial) -> tuple:
        if not f.is_monomial():
            raise ValueError(f"{f} is not a monomial")
        return next(iter(f.terms))

    def ideal(self, polys) -> mono.MonIdeal:
        return mono.mi_minimalize((self._exp(f) for f in polys if f.terms), self.arity)

    def unit(self):
        return mono.mi_unit(self.arity)

    def product(self, A, B):
        return mono.mi_product(A, B)

    def power(self, A, n: int):
        return mono.mi_power(A, n)

    def add(self, A, B):
        return mono.mi_sum(A, B)

    def colon(self, A, f: Polynomial):
        if not f.terms:
            return self.unit()
        return mono.mi_colon(A, self._exp(f))

    def intersect(self, A, B):
        return mono.mi_intersect(A, B)

    def equal(self, A, B) -> bool:
        return mono.mi_equal(A, B)

    def contains(self, A, B) -> bool:
        return mono.mi_contains(A, B)

    def member(self, f: Polynomial, A) -> bool:
        return not f.terms or mono.mi_member(self._exp(f), A)

    def is_unit(self, A) -> bool:
        return A.is_unit()

    def gens(self, A) -> list:
        # ascending degrevlex, matching the Groebner backend's basis order
        key = self.ring.ring.degrevlex().key
        return [self.ring.ring.monomial(e) for e in sorted(A.gens, key=key)]

    def quotient_count(self, num, den) -> int:
        return mono.mi_quotient_count(num, den)


class _GIdeal:
    """Generators without ``L``; the handle adds ``L`` lazily."""

    def __init__(self, ring: PresentedRing, gens):
        self.ring = ring
        self.gens = tuple(g for g in gens if g.terms)
        self._handle = None

    @property
    def handle(self) -> Ideal:
        if self._handle is None:
            self._handle = self.ring.ambient(self.gens)
        return self._handle


class _GroebnerOps:
    exact_counts = False

    def __init__(self, ring: PresentedRing):
        self.ring = ring

    def ideal(self, polys) -> _GIdeal:
        return _GIdeal(self.ring, polys)

    def unit(self):
        return _GIdeal(self.ring, [self.ring.ring.one()])

    def product(self, A, B):
        seen, out = set(), []
        for f in A.gens:
            for g in B.gens:
                h = f * g
                if h.terms and h not in seen:
                    seen.add(h)
                    out.append(h)
        return _GIdeal(self.ring, out)

    def power(self, A, n: int):
        result = self.unit()
        for _ in range(n):
            result = self.product(result, A)
        return result

    def add(self, A, B):
        return _GIdeal(self.ring, A.gens + B.gens)

    def _wrap(self, ideal: Ideal) -> _GIdeal:
        out = _GIdeal(self.ring, ideal.gens)
        out._handle = ideal
        return out

    def colon(self, A, f: Polynomial):
        return self._wrap(quotient(A.handle, f))

    def intersect(self, A, B):
        return self._wrap(intersect(A.handle, B.handle))

    def equal(self, A, B) -> bool:
        return A.handle.equals(B.handle)

    def contains(self, A, B) -> bool:
        return A.handle.contains_ideal(B.handle)

    def member(self, f: Polynomial, A) -> bool:
        return f in A.handle

    def is_unit(self, A) -> bool:
        return A.handle.is_unit()

    def gens(self, A) -> list:
        return minimal_subset(list(A.handle.gb), self.ring.relations, self.ring.ring)

    def quotient_count(self, num, den) -> int:
        return len(minimal_subset(list(num.handle.gb), den.handle.gens, self.ring.ring))


def ops_for(ring: PresentedRing, polys: Sequence[Polynomial], engine: str = "auto"):
    if engine == "groebner":
        return _GroebnerOps(ring)
    monomial_ok = ring.is_polynomial_ring() and all(f.is_monomial() for f in polys if f.terms)
    if engine == "monomial":
        if not monomial_ok:
            raise ValueError("monomial engine needs monomial data in a polynomial ring")
        return _MonomialOps(ring)
    return _MonomialOps(ring) if monomial_ok else _GroebnerOps(ring)


def minimal_subset(cands: Sequence[Polynomial], base: Sequence[Polynomial], ring: PolyRing,
                   order: MonomialOrder | None = None, sort_key=None) -> list:
    """Greedy irredundant subset of ``cands`` modulo the ideal of ``base``.

    Candidates are admitted in increasing ``sort_key`` (total degree, then
    leading monomial) when not already in the current ideal; a second pass
    drops admitted elements made redundant by later ones.
    """
    order = order or ring.degrevlex()
    if sort_key is None:
        def sort_key(f):
            return (f.total_degree(), order.key(f.leading(order)[0]))
    current = Ideal(base, order, ring)
    admitted = []
    for f in sorted((c for c in cands if c.terms), key=sort_key):
        if f not in current:
            admitted.append(f)
            current = current.with_gens([f])
    if len(admitted) > 1:
        i = 0
        while i < len(admitted):
            rest = Ideal(tuple(base) + tuple(admitted[:i] + admitted[i + 1:]), order, ring)
            if admitted[i] in rest:
                del admitted[i]
            else:
                i += 1
    return admitted


# -- gradings ----------------------------------------------------------------

def positive_grading(polys: Sequence[Polynomial], nvars: int):
    """Positive integer weights making every ``polys`` homogeneous, if found.

    Tries the standard grading, then the vectors of a rational nullspace
    basis of the homogeneity equations and their sum.  ``None`` means no
    positive grading was found (it may still exist when the nullspace has
    dimension above one; callers only use this to attach warnings).
    """
    rows = []
    for f in polys:
        exps = list(f.terms)
        for e in exps[1:]:
            rows.append([Fraction(a - b) for a, b in zip(e, exps[0])])
    ones = [1] * nvars
    if all(sum(r[i] * ones[i] for i in range(nvars)) == 0 for r in rows):
        return tuple(ones)
    basis = _nullspace(rows, nvars)
    cands = list(basis)
    if basis:
        cands.append([sum(col) for col in zip(*basis)])
    for v in cands:
        for sign in (1, -1):
            w = [sign * x for x in v]
            if all(x > 0 for x in w):
                den = 1
                for x in w:
                    den = den * x.denominator // _gcd(den, x.denominator)
                ints = [int(x * den) for x in w]
                g = 0
                for x in ints:
                    g = _gcd(g, x)
                return tuple(x // g for x in ints)
    return None


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _nullspace(rows, n):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [x - fac * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(v)
    return basis


# -- the Rees ideal ----------------------------------------------------------

@dataclass
class ReesPresentation:
    ring: PresentedRing
    ideal: IdealSpec
    t_names: tuple
    big: PolyRing                 # k[Z, T]
    q_gens: tuple                 # T-homogeneous generators of positive T-degree
    gb: Ideal                     # Q + L with its reduced degrevlex basis
    weights: tuple | None         # positive grading of k[Z] making L, I homogeneous
    oracle: "EquationOracle" = field(repr=False, default=None)

    @property
    def order(self) -> MonomialOrder:
        return self.gb.order

    def relations(self) -> tuple:
        return tuple(r.convert(self.big) for r in self.ring.relations)

    def base_gens(self) -> tuple:
        return tuple(g.convert(self.big) for g in self.ideal.gens)

    def by_degree(self) -> dict:
        out: dict = {}
        for g in self.q_gens:
            out.setdefault(t_degree(g), []).append(g)
        return out

    def max_degree(self) -> int:
        return max((t_degree(g) for g in self.q_gens), default=0)

    def upto(self, m: int) -> Ideal:
        """``Q<m> + L`` in ``k[Z, T]``."""
        gens = self.relations() + tuple(g for g in self.q_gens if t_degree(g) <= m)
        return Ideal(gens, self.order, self.big)

    def t_var(self, i: int) -> Polynomial:
        return self.big.var(self.t_names[i])

    def phi(self, f: Polynomial) -> Polynomial:
        return self.oracle.image(f)

    def in_Q(self, f: Polynomial) -> bool:
        return self.oracle.is_equation(f)

    def parse(self, text: str) -> Polynomial:
        return self.big.parse(text)

    def graded(self) -> bool:
        return self.weights is not None

    def weighted_degree(self, f: Polynomial) -> int:
        """Degree of a bihomogeneous element with ``T_i`` weighted as ``x_i``."""
        w = self._t_weights()
        e = next(iter(f.terms))
        return sum(a * b for a, b in zip(e, w))

    def _t_weights(self) -> tuple:
        nz = self.ring.ring.nvars
        if self.weights is None:
            return (1,) * self.big.nvars
        tw = []
        for g in self.ideal.gens:
            e = next(iter(g.terms))
            tw.append(sum(a * b for a, b in zip(e, self.weights)))
        return tuple(self.weights) + tuple(tw[: self.big.nvars - nz])


class EquationOracle:
    """Membership in ``Q + L`` by substitution: ``T_i -> x_i u`` then reduction mod ``L``.

    Needs only a basis of ``L``, never one of ``Q``.
    """

    def __init__(self, I: IdealSpec, big: PolyRing, t_names: Sequence[str], u_name: str):
        zr = I.ring.ring
        self.big = big
        self.ring = PolyRing(zr.names + (u_name,), ("base",) * zr.nvars + ("aux",), zr.p)
        self.L = Ideal([r.convert(self.ring) for r in I.ring.relations], ring=self.ring)
        u = self.ring.var(u_name)
        self.images = {t: g.convert(self.ring) * u for t, g in zip(t_names, I.gens)}

    def image(self, f: Polynomial) -> Polynomial:
        self.big.check(f.ring)
        return self.L.reduce(f.substitute(self.images, self.ring))

    def is_equation(self, f: Polynomial) -> bool:
        return not self.image(f).terms


def presentation_ring(I: IdealSpec, t_names: Sequence[str] | None = None) -> tuple:
    """``(k[Z, T], T names, u name)`` for the generators of ``I``."""
    zr = I.ring.ring
    k = len(I.gens)
    t_names = tuple(t_names) if t_names else default_t_names(k, zr.names)
    if len(t_names) != k or set(t_names) & set(zr.names) or len(set(t_names)) != k:
        raise ValueError("need one fresh presentation variable per generator")
    u_name = zr.fresh_name("u")
    while u_name in t_names:
        u_name += "_"
    big = PolyRing(zr.names + t_names, ("base",) * zr.nvars + ("rees",) * k, zr.p)
    return big, t_names, u_name


def default_t_names(k: int, taken: Sequence[str]) -> tuple:
    stem = "T"
    while any(f"{stem}{i + 1}" in taken for i in range(k)):
        stem += "T"
    return tuple(f"{stem}{i + 1}" for i in range(k))


def rees_ideal(I: IdealSpec, t_names: Sequence[str] | None = None) -> ReesPresentation:
    """Equations of ``R[It]`` over ``k[Z, T]`` by elimination of ``u``."""
    ring = I.ring
    zr = ring.ring
    for i, g in enumerate(I.gens):
        if ring.is_zero(g):
            raise ZeroGenerator(f"generator {i + 1} is zero in the ring")
    k = len(I.gens)
    big, t_names, u_name = presentation_ring(I, t_names)
    nz = zr.nvars
    elim_ring = PolyRing(
        (u_name,) + zr.names + t_names,
        ("aux",) + ("base",) * nz + ("rees",) * k,
        zr.p,
    )
    order = MonomialOrder.block(elim_ring.nvars, [((0,), "lex"), (range(1, elim_ring.nvars), "degrevlex")])
    u = elim_ring.var(u_name)
    gens = [r.convert(elim_ring) for r in ring.relations]
    gens += [elim_ring.var(t) - g.convert(elim_ring) * u for t, g in zip(t_names, I.gens)]
    elim = elimination_ideal(Ideal(gens, order, elim_ring), [u_name])

    basis = [g.convert(big) for g in elim.gens]
    gb = Ideal.from_basis(basis, big.degrevlex(), big)
    weights = positive_grading(list(ring.relations) + list(I.gens), nz)
    oracle = EquationOracle(I, big, t_names, u_name)
    P = ReesPresentation(ring, I, t_names, big, (), gb, weights, oracle)

    comps = []
    seen = set()
    for g in basis:
        for c in t_components(g):
            if P.phi(c).terms:
                raise OracleFailure(f"component {c} of an elimination output is not an equation")
            if t_degree(c) == 0:
                continue
            c = c.monic(big.degrevlex())
            if c not in seen:
                seen.add(c)
                comps.append(c)
    P.q_gens = tuple(comps)
    return P


# -- fresh generators and relation type -------------------------------------

@dataclass
class FreshReport:
    counts: dict                  # degree -> number of fresh generators
    representatives: dict         # degree -> list of Polynomial
    relation_type: int
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "counts": {str(n): c for n, c in sorted(self.counts.items())},
            "relation_type": self.relation_type,
            "representatives": {
                str(n): [format_polynomial(f) for f in reps]
                for n, reps in sorted(self.representatives.items())
            },
        }


GREEDY_WARNING = "no positive grading found: greedy counts are irredundant, not certified minimal"


def _fresh(ring: PolyRing, base: Sequence[Polynomial], comps: Sequence[Polynomial],
           cap: int | None, sort_key) -> FreshReport:
    order = ring.degrevlex()
    by_deg: dict = {}
    for g in comps:
        by_deg.setdefault(t_degree(g), []).append(g)
    top = max(by_deg, default=0)
    cap = top if cap is None else cap
    current = list(base)
    counts, reps = {}, {}
    for n in range(1, cap + 1):
        cands = by_deg.get(n, [])
        fresh = minimal_subset(cands, current, ring, order, sort_key) if cands else []
        counts[n] = len(fresh)
        reps[n] = fresh
        current += cands
    rt = max((n for n, c in counts.items() if c and n > 1), default=1)
    return FreshReport(counts, reps, rt)


def fresh_generators(P: ReesPresentation, cap: int | None = None) -> FreshReport:
    """Minimal numbers of generators of ``(Q / Q<n-1>)_n`` for ``1 <= n <= cap``.

    Without ``cap`` every degree up to the top generator degree is covered,
    which determines the relation type exactly.
    """
    order = P.order

    def key(f):
        return (P.weighted_degree(f), order.key(f.leading(order)[0]))

    report = _fresh(P.big, P.relations(), P.q_gens, cap, key)
    if not P.graded():
        report.warnings.append(GREEDY_WARNING)
    return report


def fresh_of_ideal(ideal: Ideal, cap: int | None = None) -> FreshReport:
    """Fresh counts for a T-graded ideal given by T-homogeneous generators.

    Generators of T-degree zero form the base ideal.
    """
    base, comps = [], []
    for g in ideal.gens:
        for c in t_components(g):
            (comps if t_degree(c) > 0 else base).append(c)
    return _fresh(ideal.ring, base, comps, cap, None)


def relation_type(P: ReesPresentation) -> int:
    return fresh_generators(P).relation_type


# -- kernels of the canonical maps ------------------------------------------

def _t_monomials(P: ReesPresentation, d: int):
    k = len(P.t_names)
    nz = P.big.nvars - k
    for combo in itertools.combinations_with_replacement(range(k), d):
        e = [0] * P.big.nvars
        for i in combo:
            e[nz + i] += 1
        yield tuple(e)


def _degree_witness(P: ReesPresentation, base: Ideal, n: int):
    """First product ``mu * g`` in ``Q_n`` outside ``base``, or ``None``.

    ``Q_n`` is spanned over ``k[Z]`` by the products of T-monomials of degree
    ``n - m`` with generators of degree ``m``, so testing those suffices.
    """
    by_deg = P.by_degree()
    for m in range(2, n + 1):
        for g in by_deg.get(m, []):
            for e in _t_monomials(P, n - m):
                h = g.mul_term(e, 1)
                if h not in base:
                    return h
    return None


def ker_alpha_witness(P: ReesPresentation, n: int):
    if n < 2:
        raise ValueError("degree must be at least 2")
    return _degree_witness(P, P.upto(1), n)


def ker_alpha_zero(P: ReesPresentation, n: int) -> bool:
    """``Q_n`` lies in ``Q<1> + L``: the symmetric algebra agrees in degree ``n``."""
    return ker_alpha_witness(P, n) is None


def ker_beta_witness(P: ReesPresentation, n: int):
    if n < 2:
        raise ValueError("degree must be at least 2")
    base = P.upto(1).with_gens(P.base_gens())
    return _degree_witness(P, base, n)


def ker_beta_zero(P: ReesPresentation, n: int) -> bool:
    """``Q_n`` lies in ``Q<1> + I*V + L`` (degree ``n`` of the map onto gr)."""
    return ker_beta_witness(P, n) is None


# -- fiber cone and associated graded ring -----------------------------------

def fiber_ideal(P: ReesPresentation) -> Ideal:
    """``(Q + (Z) + L)`` meet ``k[T]``, as an ideal of ``k[T]``."""
    nz = P.ring.ring.nvars
    k = len(P.t_names)
    order = MonomialOrder.block(P.big.nvars, [(range(nz), "degrevlex"), (range(nz, nz + k), "degrevlex")])
    zvars = [P.big.var(n) for n in P.ring.ring.names]
    handle = Ideal(P.relations() + P.q_gens + tuple(zvars), order, P.big)
    elim = elimination_ideal(handle, P.ring.ring.names)
    fiber_ring = PolyRing(P.t_names, ("rees",) * k, P.big.p)
    gens = [g.convert(fiber_ring) for g in elim.gens]
    return Ideal.from_basis(gens, fiber_ring.degrevlex(), fiber_ring)


def graded_ideal(P: ReesPresentation) -> Ideal:
    """``Q + I*V + L``, presenting gr(I) over ``R / I``."""
    return Ideal(P.relations() + P.base_gens() + P.q_gens, P.order, P.big)


# -- reductions and colon chains --------------------------------------------

def _check_subset(J: IdealSpec, I: IdealSpec) -> None:
    amb = I.ambient()
    for g in J.gens:
        if g not in amb:
            raise NotAReduction(f"{g} is not in the ideal")


def reduction_number(J: IdealSpec, I: IdealSpec, cap: int = 10, engine: str = "auto") -> int:
    """Least ``r <= cap`` with ``I^(r+1)`` inside ``J I^r``."""
    _check_subset(J, I)
    ops = ops_for(I.ring, I.gens + J.gens, engine)
    A, B = ops.ideal(I.gens), ops.ideal(J.gens)
    power = ops.unit()       # I^r
    for r in range(cap + 1):
        nxt = ops.product(power, A)
        if ops.contains(ops.product(B, power), nxt):
            return r
        power = nxt
    raise NotAReductionWithinCap(cap)


@dataclass
class ChainReport:
    entries: list                  # (n, list of Polynomial, is_unit)
    step_counts: dict              # n >= 2 -> generators of the n-th quotient
    reduction_number: int | None
    exact: bool                    # counts certified (monomial engine)

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"n": n, "generators": [format_polynomial(g) for g in gens], "unit": unit}
                for n, gens, unit in self.entries
            ],
            "step_counts": {str(n): c for n, c in sorted(self.step_counts.items())},
            "reduction_number": self.reduction_number,
            "exact": self.exact,
        }


def colon_chain(J: IdealSpec, I: IdealSpec, y_index: int = -1, cap: int = 8,
                engine: str = "auto") -> ChainReport:
    """``(J I^(n-1) : y^n)`` for ``n = 1..cap`` with quotient sizes between steps."""
    y = I.gens[y_index]
    ops = ops_for(I.ring, I.gens + J.gens, engine)
    A, B = ops.ideal(I.gens), ops.ideal(J.gens)
    entries, steps = [], {}
    power = ops.unit()
    prev = None
    red = None
    for n in range(1, cap + 1):
        val = ops.colon(ops.product(B, power), y ** n)
        unit = ops.is_unit(val)
        entries.append((n, ops.gens(val), unit))
        if prev is not None:
            steps[n] = ops.quotient_count(val, prev)
        if unit and red is None:
            red = n - 1
        prev = val
        power = ops.product(power, A)
    return ChainReport(entries, steps, red, ops.exact_counts)


def colon_quotient_counts(J: IdealSpec, I: IdealSpec, y_index: int, cap: int,
                          engine: str = "auto") -> dict:
    """Minimal generator counts of ``(J I^(n-1) : y^n) / (J I^(n-2) : y^(n-1))``."""
    return colon_chain(J, I, y_index, cap, engine).step_counts


def check_Tn(xs: Sequence[Polynomial], I: IdealSpec, n: int, engine: str = "auto") -> list:
    """Per ``i``: ``((x_1..x_{i-1}) I^(n-1) : x_i)`` meet ``I^(n-1)`` equals ``(x_1..x_{i-1}) I^(n-2)``."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    ops = ops_for(I.ring, list(I.gens) + list(xs), engine)
    A = ops.ideal(I.gens)
    p1, p2 = ops.power(A, n - 1), ops.power(A, n - 2)
    out = []
    for i, x in enumerate(xs):
        prefix = ops.ideal(xs[:i])
        lhs = ops.intersect(ops.colon(ops.product(prefix, p1), x), p1)
        rhs = ops.product(prefix, p2)
        out.append(ops.equal(ops.add(lhs, rhs), rhs))
    return out


def vv_module_zero(Jsub: IdealSpec, I: IdealSpec, n: int, engine: str = "auto") -> bool:
    """``Jsub`` meet ``I^n`` equals ``Jsub I^(n-1)``."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    ops = ops_for(I.ring, I.gens + Jsub.gens, engine)
    A, B = ops.ideal(I.gens), ops.ideal(Jsub.gens)
    lhs = ops.intersect(B, ops.power(A, n))
    rhs = ops.product(B, ops.power(A, n - 1))
    return ops.contains(rhs, lhs)


# -- obstructions -------------------------------------------------------------

def _reject_zero(I: IdealSpec) -> None:
    for i, g in enumerate(I.gens):
        if I.ring.is_zero(g):
            raise ZeroGenerator(f"generator {i + 1} is zero in the ring")


def obstruction_O1(I: IdealSpec, i: int, p: int, engine: str = "auto") -> bool:
    """``(I_i I^(p-1) : x_i^p) = (I_i I^(p-2) : x_i^(p-1))`` with ``I_i`` omitting ``x_i``."""
    if p < 2:
        raise ValueError("degree must be at least 2")
    if not -len(I.gens) <= i < len(I.gens):
        raise IndexError(f"generator index {i} out of range")
    _reject_zero(I)
    ops = ops_for(I.ring, I.gens, engine)
    A = ops.ideal(I.gens)
    x = I.gens[i]
    Ii = ops.ideal(I.without(i).gens)
    top = ops.colon(ops.product(Ii, ops.power(A, p - 1)), x ** p)
    low = ops.colon(ops.product(Ii, ops.power(A, p - 2)), x ** (p - 1))
    return ops.equal(top, low)


def obstruction_O2(I: IdealSpec, p: int, engine: str = "auto") -> bool:
    """Containment of the second obstruction for ``s >= 3`` generators, last one ``x_s``."""
    s = len(I.gens)
    if s < 3:
        raise ValueError("needs at least three generators")
    if p < 2:
        raise ValueError("degree must be at least 2")
    _reject_zero(I)
    ops = ops_for(I.ring, I.gens, engine)
    xs, last = I.gens[:-1], I.gens[-1]
    A = ops.ideal(I.gens)
    Is = ops.ideal(xs)
    Is_pow = ops.power(Is, p - 2)
    pairs = ops.ideal([xs[a] * xs[b] for a, b in itertools.combinations(range(s - 1), 2)])
    numerator = ops.intersect(ops.colon(ops.product(pairs, Is_pow), last), ops.power(A, p - 1))
    A_low = ops.power(A, p - 2)
    denominator = ops.ideal([])
    for a in range(s - 1):
        Ias = ops.ideal([xs[b] for b in range(s - 1) if b != a])
        inner = ops.intersect(ops.colon(ops.product(Ias, Is_pow), last), A_low)
        denominator = ops.add(denominator, ops.product(ops.ideal([xs[a]]), inner))
    return ops.contains(denominator, numerator)


# -- verification reports ---------------------------------------------------

@dataclass
class TheoremAReport:
    cap: int
    fresh_counts: dict
    colon_counts: dict
    reduction_number: int
    relation_type: int
    representative: Polynomial | None
    shape_ok: bool
    counts_exact: bool
    warnings: list = field(default_factory=list)

    @property
    def counts_agree(self) -> bool:
        return all(self.fresh_counts.get(n, 0) == c for n, c in self.colon_counts.items())

    @property
    def ok(self) -> bool:
        return self.counts_agree and self.relation_type == self.reduction_number + 1 and self.shape_ok

    def to_dict(self) -> dict:
        return {
            "cap": self.cap,
            "fresh_counts": {str(n): c for n, c in sorted(self.fresh_counts.items())},
            "colon_counts": {str(n): c for n, c in sorted(self.colon_counts.items())},
            "counts_agree": self.counts_agree,
            "counts_exact": self.counts_exact,
            "reduction_number": self.reduction_number,
            "relation_type": self.relation_type,
            "representative": None if self.representative is None else format_polynomial(self.representative),
            "shape_ok": self.shape_ok,
            "ok": self.ok,
        }


def _monic_in_y(f: Polynomial, P: ReesPresentation, y_index: int, degree: int):
    """``f`` scaled so that ``f`` with the other T-variables set to 0 is ``Y^degree``."""
    ynum = y_index % len(P.t_names)
    zero = {name: P.big.zero() for i, name in enumerate(P.t_names) if i != ynum}
    restricted = f.substitute(zero)
    target = P.t_var(ynum) ** degree
    if len(restricted.terms) != 1:
        return None
    (e, c), = restricted.terms.items()
    if e != next(iter(target.terms)):
        return None
    return f.scale(pow(c, -1, P.big.p))


def theorem_a_report(I: IdealSpec, y_index: int = -1, cap: int = 8,
                     engine: str = "auto") -> TheoremAReport:
    """Cross-check fresh counts against colon-chain quotients for ``I = (J, y)``."""
    y_index %= len(I.gens)
    J = I.without(y_index)
    for n in range(2, cap + 1):
        for i, good in enumerate(check_Tn(J.gens, I, n, engine)):
            if not good:
                raise TnFailed(i + 1, n)
    r = reduction_number(J, I, cap, engine)
    P = rees_ideal(I)
    fresh = fresh_generators(P, cap)
    chain = colon_chain(J, I, y_index, cap, engine)
    warnings = list(fresh.warnings)
    if not chain.exact:
        warnings.append("colon quotient counts use greedy irredundant generators")
    rep, shape_ok = None, False
    reps = fresh.representatives.get(r + 1, [])
    for f in reps:
        g = _monic_in_y(f, P, y_index, r + 1)
        if g is not None:
            rep, shape_ok = g, True
            break
    if rep is None and reps:
        rep = reps[0]
    return TheoremAReport(
        cap=cap,
        fresh_counts={n: fresh.counts.get(n, 0) for n in range(2, cap + 1)},
        colon_counts=dict(chain.step_counts),
        reduction_number=r,
        relation_type=fresh.relation_type,
        representative=rep,
        shape_ok=shape_ok,
        counts_exact=chain.exact,
        warnings=warnings,
    )


@dataclass
class TheoremBReport:
    p: int
    sub_linear_upto: int
    kernel_zero: dict        # n -> bool for the full ideal
    warnings: list = field(default_factory=list)

    @property
    def implication_holds(self) -> bool:
        if not self.kernel_zero.get(self.p, False):
            return True
        return all(self.kernel_zero.values())

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "sub_linear_upto": self.sub_linear_upto,
            "kernel_zero": {str(n): v for n, v in sorted(self.kernel_zero.items())},
            "implication_holds": self.implication_holds,
        }


def theorem_b_report(I: IdealSpec, y_index: int = -1, p: int = 2) -> TheoremBReport:
    """For ``J`` of linear type up to ``p``, vanishing at ``p`` propagates downwards."""
    if p < 2:
        raise ValueError("degree must be at least 2")
    y_index %= len(I.gens)
    J = I.without(y_index)
    PJ = rees_ideal(J)
    for n in range(2, p + 1):
        if not ker_alpha_zero(PJ, n):
            raise HypothesisFailed(n)
    PI = rees_ideal(I)
    values = {n: ker_alpha_zero(PI, n) for n in range(2, p + 1)}
    return TheoremBReport(p, p, values)
