"""Determinantal closure of the first syzygies of an ideal.

Starting from minimal degree-one equations ``S`` of ``I``, write
``[S] = [Z] * B`` for a matrix ``B`` over ``k[Z, T]``.  Each round takes the
maximal minors of ``B``, splits the new ones into irreducible factors,
admits the factors that are equations (substitution oracle, never a basis
of ``Q``), and appends the admitted factors lying in ``(Z)`` as new columns.
The loop stops when no new factor lies in ``(Z)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import sympy

from .algebra import Polynomial, PolyRing, format_polynomial
from .groebner import Ideal
from .rees import (
    EquationOracle,
    IdealSpec,
    fresh_generators,
    presentation_ring,
    rees_ideal,
)


class NotInBaseIdeal(ValueError):
    """A form has a term divisible by no base variable."""


class MaxRoundsExceeded(RuntimeError):
    def __init__(self, result: "ClosureResult"):
        super().__init__(f"closure still growing after {len(result.trace)} rounds")
        self.result = result
        self.ideal = result.ideal
        self.trace = result.trace


@dataclass
class ClosureResult:
    ideal: Ideal
    forms: list                 # generators of P in admission order
    matrix: list                # final B, as rows
    trace: list = field(default_factory=list)

    def trace_json(self) -> list:
        return self.trace


def first_syzygies(I: IdealSpec) -> list:
    """Minimal degree-one equations of ``I`` (fresh representatives in T-degree 1)."""
    P = rees_ideal(I)
    return list(fresh_generators(P, 1).representatives.get(1, []))


def build_B(forms, zvars, ring: PolyRing) -> list:
    """Rows indexed by ``zvars``, one column per form, with ``[forms] = [zvars] * B``.

    Each term goes to the row of the first listed variable dividing it.
    """
    idx = [ring.registry.index(z) for z in zvars]
    rows = [[dict() for _ in forms] for _ in zvars]
    for col, f in enumerate(forms):
        ring.check(f.ring)
        for e, c in f.terms.items():
            for row, i in enumerate(idx):
                if e[i]:
                    ee = e[:i] + (e[i] - 1,) + e[i + 1:]
                    rows[row][col][ee] = c
                    break
            else:
                raise NotInBaseIdeal(f"{format_polynomial(f)} is not in the ideal of the base variables")
    return [[Polynomial(ring, cell) for cell in row] for row in rows]


def reconstruct(B, zvars, ring: PolyRing) -> list:
    """``[zvars] * B`` column by column."""
    out = []
    for col in range(len(B[0]) if B else 0):
        total = ring.zero()
        for row, z in enumerate(zvars):
            total = total + ring.var(z) * B[row][col]
        out.append(total)
    return out


def determinant(M) -> Polynomial:
    """Laplace expansion along rows, memoised on column subsets."""
    n = len(M)
    memo: dict = {}

    def minor(start: int, cols: tuple) -> Polynomial:
        if start == n:
            return M[0][0].ring.one()
        key = cols
        if key in memo:
            return memo[key]
        total = M[0][0].ring.zero()
        for pos, c in enumerate(cols):
            entry = M[start][c]
            if not entry.terms:
                continue
            sub = minor(start + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def maximal_minors(B) -> list:
    """``(columns, minor)`` for every choice of ``len(B)`` columns, in lexicographic order."""
    r = len(B)
    m = len(B[0]) if B else 0
    out = []
    for cols in combinations(range(m), r):
        sub = [[B[i][c] for c in cols] for i in range(r)]
        out.append((cols, determinant(sub)))
    return out


def monomial_content(f: Polynomial) -> tuple:
    """Componentwise minimum of the exponents of ``f``."""
    exps = list(f.terms)
    return tuple(min(col) for col in zip(*exps))


def irreducible_factors(f: Polynomial) -> list:
    """Distinct monic irreducible factors of ``f``.

    The monomial content contributes its variables; the primitive part is
    factored over the integers after lifting coefficients to the symmetric
    range, then mapped back.
    """
    ring = f.ring
    content = monomial_content(f)
    out = [ring.var(ring.names[i]) for i, a in enumerate(content) if a]
    primitive = Polynomial(ring, {tuple(a - b for a, b in zip(e, content)): c for e, c in f.terms.items()})
    if primitive.is_constant():
        return out
    syms = sympy.symbols(ring.names)
    half = ring.p // 2
    lifted = {e: (c - ring.p if c > half else c) for e, c in primitive.terms.items()}
    _, factors = sympy.Poly.from_dict(lifted, *syms, domain="ZZ").factor_list()
    order = ring.degrevlex()
    for fac, _mult in factors:
        g = Polynomial(ring, {tuple(e): int(c) % ring.p for e, c in fac.as_dict().items() if int(c) % ring.p})
        if g.terms and not g.is_constant():
            out.append(g.monic(order))
    return out


def _in_base_ideal(f: Polynomial, zidx) -> bool:
    return all(any(e[i] for i in zidx) for e in f.terms)


def det_closure(I: IdealSpec, max_rounds: int = 10) -> ClosureResult:
    """Run the closure loop; raise ``MaxRoundsExceeded`` carrying the partial result."""
    if not I.ring.is_polynomial_ring():
        raise ValueError("the closure procedure needs a polynomial base ring")
    syz = first_syzygies(I)
    big = syz[0].ring if syz else presentation_ring(I)[0]
    nz = I.ring.ring.nvars
    t_names = big.names[nz:]
    oracle = EquationOracle(I, big, t_names, I.ring.ring.fresh_name("u"))
    zvars = list(I.ring.ring.names)
    zidx = range(nz)
    order = big.degrevlex()

    forms = list(syz)
    P = Ideal(forms, order, big)
    B = build_B(forms, zvars, big) if forms else [[] for _ in zvars]
    trace: list = []
    rounds = 0
    while True:
        if rounds == max_rounds:
            raise MaxRoundsExceeded(ClosureResult(P, forms, B, trace))
        rounds += 1
        log = {"round": rounds, "columns": len(B[0]), "minors": [], "factors": [], "new_columns": []}
        candidates = []
        for cols, m in maximal_minors(B) if len(B[0]) >= len(B) else []:
            if not m.terms:
                status = "zero"
            elif m in P:
                status = "in_ideal"
            else:
                status = "candidate"
                candidates.append(m)
            log["minors"].append({"columns": list(cols), "minor": format_polynomial(m), "status": status})
        admitted = []
        seen = set()
        for m in candidates:
            for fac in irreducible_factors(m):
                if fac in seen:
                    continue
                seen.add(fac)
                if not oracle.is_equation(fac):
                    status = "not_an_equation"
                elif fac in P:
                    status = "in_ideal"
                else:
                    status = "admitted"
                    admitted.append(fac)
                    forms.append(fac)
                    P = P.with_gens([fac])
                log["factors"].append({"factor": format_polynomial(fac), "status": status})
        columns = [f for f in admitted if _in_base_ideal(f, zidx)]
        log["new_columns"] = [format_polynomial(f) for f in columns]
        if not columns:
            log["halted"] = "no admitted factor lies in the base ideal" if admitted else "no new factors"
            trace.append(log)
            break
        trace.append(log)
        extra = build_B(columns, zvars, big)
        B = [row + new for row, new in zip(B, extra)]
    return ClosureResult(P, forms, B, trace)
