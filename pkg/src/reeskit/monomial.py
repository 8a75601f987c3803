"""Monomial ideals as antichains of exponent vectors.

The closed forms used here are the lattice rules for monomial ideals in a
polynomial ring: colons and intersections reduce to lcm arithmetic on
generators.  Everything is exact and independent of the Groebner engine,
which makes this module usable as an oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _gcd(a, b) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def _sub(a, b) -> tuple:
    return tuple(max(x - y, 0) for x, y in zip(a, b))


def _add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonIdeal:
    """Minimal generators (an antichain) in ``arity`` variables.

    The empty antichain is the zero ideal; the zero vector alone is ``(1)``.
    """

    gens: frozenset
    arity: int

    def __iter__(self):
        return iter(sorted(self.gens))

    def __len__(self):
        return len(self.gens)

    def is_unit(self) -> bool:
        return (0,) * self.arity in self.gens

    def sorted_gens(self) -> list:
        """Generators by increasing total degree, then reverse-lex on exponents."""
        return sorted(self.gens, key=lambda e: (sum(e), tuple(-x for x in e)))


def mi_minimalize(gens: Iterable[Sequence[int]], arity: int | None = None) -> MonIdeal:
    vecs = {tuple(g) for g in gens}
    if arity is None:
        if not vecs:
            raise ValueError("arity required for the zero ideal")
        arity = len(next(iter(vecs)))
    if any(len(v) != arity or min(v, default=0) < 0 for v in vecs):
        raise ValueError("exponent vectors must be nonnegative with common length")
    ordered = sorted(vecs, key=sum)
    kept: list = []
    for v in ordered:
        if not any(_divides(k, v) for k in kept):
            kept.append(v)
    return MonIdeal(frozenset(kept), arity)


def mi_unit(arity: int) -> MonIdeal:
    return MonIdeal(frozenset({(0,) * arity}), arity)


def mi_zero(arity: int) -> MonIdeal:
    return MonIdeal(frozenset(), arity)


def mi_member(m: Sequence[int], A: MonIdeal) -> bool:
    return any(_divides(g, m) for g in A.gens)


def mi_contains(A: MonIdeal, B: MonIdeal) -> bool:
    """``B`` is a subset of ``A``."""
    return all(mi_member(g, A) for g in B.gens)


def mi_equal(A: MonIdeal, B: MonIdeal) -> bool:
    return A.arity == B.arity and A.gens == B.gens


def mi_colon(A: MonIdeal, m: Sequence[int]) -> MonIdeal:
    """``A : m`` generated by ``lcm(a, m) / m``."""
    return mi_minimalize((_sub(g, m) for g in A.gens), A.arity)


def mi_intersect_mono(A: MonIdeal, m: Sequence[int]) -> MonIdeal:
    return mi_minimalize((_lcm(g, m) for g in A.gens), A.arity)


def mi_intersect(A: MonIdeal, B: MonIdeal) -> MonIdeal:
    return mi_minimalize((_lcm(a, b) for a in A.gens for b in B.gens), A.arity)


def mi_colon_ideal(A: MonIdeal, B: MonIdeal) -> MonIdeal:
    """``A : B`` as the meet over generators ``n`` of ``B`` of ``A : n``."""
    result = mi_unit(A.arity)
    for n in B.gens:
        result = mi_intersect(result, mi_colon(A, n))
    return result


def mi_sum(A: MonIdeal, B: MonIdeal) -> MonIdeal:
    return mi_minimalize(A.gens | B.gens, A.arity)


def mi_product(A: MonIdeal, B: MonIdeal) -> MonIdeal:
    return mi_minimalize((_add(a, b) for a in A.gens for b in B.gens), A.arity)


def mi_power(A: MonIdeal, n: int) -> MonIdeal:
    if n < 0:
        raise ValueError("negative power")
    result = mi_unit(A.arity)
    for _ in range(n):
        result = mi_product(result, A)
    return result


def mi_principal(m: Sequence[int]) -> MonIdeal:
    return MonIdeal(frozenset({tuple(m)}), len(m))


def mi_generated(ms: Sequence[Sequence[int]], arity: int) -> MonIdeal:
    return mi_minimalize(ms, arity)


def mi_quotient_count(num: MonIdeal, den: MonIdeal) -> int:
    """Minimal generators of ``num / den`` for ``den`` inside ``num``.

    A minimal generator of ``num`` outside ``den`` stays outside ``m*num + den``,
    so counting those is exact.
    """
    return sum(1 for g in num.gens if not mi_member(g, den))


def _is_minimal_sequence(ms: Sequence[tuple]) -> bool:
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            if i != j and _divides(a, b):
                return False
    return True


def tang_d_sequence(ms: Sequence[Sequence[int]]) -> bool:
    """Monomial d-sequence test by Tang's gcd conditions."""
    ms = [tuple(m) for m in ms]
    if not _is_minimal_sequence(ms):
        return False
    for i, j in combinations(range(len(ms)), 2):
        g = _gcd(ms[i], ms[j])
        if any(not _divides(g, ms[k]) for k in range(j + 1, len(ms))):
            return False
        if g != _gcd(ms[i], _add(ms[j], ms[j])):
            return False
    return True


def d_sequence_bruteforce(ms: Sequence[Sequence[int]]) -> bool:
    """Evaluate ``(J_i : x_{i+1} x_k) = (J_i : x_k)`` for all ``i < k`` directly."""
    ms = [tuple(m) for m in ms]
    if not ms:
        return True
    if not _is_minimal_sequence(ms):
        return False
    arity = len(ms[0])
    for i in range(len(ms)):
        prefix = mi_minimalize(ms[:i], arity)
        for k in range(i, len(ms)):
            lhs = mi_colon(prefix, _add(ms[i], ms[k]))
            rhs = mi_colon(prefix, ms[k])
            if not mi_equal(lhs, rhs):
                return False
    return True
