"""Shared checks for the test suite."""

import random

from reeskit.algebra import Polynomial
from reeskit.groebner import normal_form, s_polynomial


def random_combination(gens, rng: random.Random, ring, terms: int = 3, degree: int = 2) -> Polynomial:
    """A random element sum c_i * m_i * g_i of the ideal spanned by ``gens``."""
    total = ring.zero()
    for g in gens:
        for _ in range(rng.randint(0, terms)):
            e = tuple(rng.randint(0, degree) if rng.random() < 0.4 else 0 for _ in range(ring.nvars))
            total = total + g.mul_term(e, rng.randrange(1, ring.p))
    return total


def basis_defects(basis, order, rng: random.Random, samples: int = 10) -> list:
    """Return human-readable failures of the Groebner self-checks (empty when sound)."""
    problems = []
    basis = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
            if r.terms:
                problems.append(f"S({i},{j}) leaves {r}")
    if not basis:
        return problems
    ring = basis[0].ring
    for _ in range(samples):
        f = random_combination(basis, rng, ring) + ring.monomial(
            tuple(rng.randint(0, 2) for _ in range(ring.nvars)), rng.randrange(1, ring.p))
        once = normal_form(f, basis, order)
        if normal_form(once, basis, order) != once:
            problems.append(f"normal form of {f} not idempotent")
    return problems


# -- example builders ----------------------------------------------------------
# Each returns IdealSpec objects over freshly presented rings, independent of
# the shipped session files.

from reeskit.rees import PresentedRing  # noqa: E402


def presented(names, relations=()) -> PresentedRing:
    base = PresentedRing.polynomial(names)
    return PresentedRing(base.ring, tuple(base.ring.parse(r) for r in relations))


def classic(p: int):
    """``I = (a^p, b^p, a b^(p-1))`` and ``J = (a^p, b^p)`` in k[a,b]."""
    R = presented(["a", "b"])
    I = R.ideal([f"a^{p}", f"b^{p}", f"a*b^{p - 1}"])
    return I, I.sub([0, 1])


def pseudo_classic(p: int):
    """``y = a^2 b^(p-2)`` with the same ``J``."""
    R = presented(["a", "b"])
    I = R.ideal([f"a^{p}", f"b^{p}", f"a^2*b^{p - 2}"])
    return I, I.sub([0, 1])


def dim4(p: int):
    """``I = (a^p, b^p, c^p, a b c^(p-2))`` in k[a,b,c]."""
    R = presented(["a", "b", "c"])
    I = R.ideal([f"a^{p}", f"b^{p}", f"c^{p}", f"a*b*c^{p - 2}"])
    return I, I.sub([0, 1, 2])


def c4():
    """The 4-cycle edge ideal with the generator change ``vz -> vz - ut``."""
    R = presented(["u", "v", "z", "t"])
    I = R.ideal(["u*v", "v*z - u*t", "z*t", "u*t"])
    return I, I.sub([0, 1, 2])


def kuhl_relations(p: int, stem: str = "U") -> list:
    rels = [f"{stem}0*Y"]
    rels += [f"{stem}{i}*X - {stem}{i + 1}*Y" for i in range(p)]
    rels += [f"{stem}{p}*X", f"{stem}0*X^{p}"]
    return rels


def kuhl_family(p: int):
    names = [f"U{i}" for i in range(p + 1)] + ["X", "Y"]
    return presented(names, kuhl_relations(p)).ideal(["X", "Y"])


def kuhl_glued():
    names = [f"U{i}" for i in range(3)] + [f"V{i}" for i in range(4)] + ["X", "Y"]
    return presented(names, kuhl_relations(2) + kuhl_relations(3, "V")).ideal(["X", "Y"])


def kuhl_original():
    rels = ["U0*X", "U1*Y", "U0*Y^2", "U1*X^2", "U1*X - U2*Y", "U0*Y + U2*X"]
    return presented(["U0", "U1", "U2", "X", "Y"], rels).ideal(["X", "Y"])


def not_enough():
    return presented(["X", "Y"], ["X*Y", "Y^2"]).ideal(["X", "Y"])


def buchsbaum():
    R = presented(["X1", "X2", "U1", "U2"], ["X1*U1", "X1*U2", "X2*U1", "X2*U2"])
    return R.ideal(["X1 + U1", "X2 + U2", "X1 + X2"])


def principal_example():
    return presented(["X", "Y"], ["X^2*Y", "X*Y^2"]).ideal(["Y"])


def semigroup():
    R = presented(["Z3", "Z4", "Z5"], ["Z4^2 - Z3*Z5", "Z3^3 - Z4*Z5", "Z5^2 - Z3^2*Z4"])
    return R.ideal(["Z3", "Z4"])
