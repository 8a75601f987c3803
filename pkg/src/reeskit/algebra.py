"""Sparse multivariate polynomials over a prime field.

Variables live in a ``VarRegistry`` and carry a block tag: ``base`` for the
coordinates of the ground ring, ``rees`` for presentation variables and
``aux`` for auxiliary variables such as the Rees parameter.  A ``PolyRing``
pairs a registry with a prime modulus; every polynomial belongs to one ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003

BLOCKS = ("base", "rees", "aux")

Exponent = tuple  # tuple[int, ...], one slot per registry variable


class RegistryMismatch(ValueError):
    """Operands refer to different variable registries."""


class ModulusMismatch(ValueError):
    """Operands live over different prime fields."""


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


@dataclass(frozen=True)
class VarRegistry:
    names: tuple
    blocks: tuple

    def __post_init__(self):
        if len(self.names) != len(self.blocks):
            raise ValueError("one block tag per variable required")
        seen = set()
        for name in self.names:
            if name in seen:
                raise ValueError(f"duplicate variable {name!r}")
            seen.add(name)
        for tag in self.blocks:
            if tag not in BLOCKS:
                raise ValueError(f"unknown block tag {tag!r}")

    @classmethod
    def of(cls, names: Sequence[str], block: str = "base") -> "VarRegistry":
        return cls(tuple(names), tuple(block for _ in names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def indices(self, block: str) -> tuple:
        return tuple(i for i, tag in enumerate(self.blocks) if tag == block)


class MonomialOrder:
    """A block order; each block is ``lex`` or ``degrevlex`` on its indices.

    Earlier blocks dominate later ones.  A single block covering every
    variable gives the plain lex or degrevlex order.
    """

    KINDS = ("lex", "degrevlex")

    def __init__(self, nvars: int, blocks: Sequence[tuple]):
        covered = []
        norm = []
        for idx, kind in blocks:
            if kind not in self.KINDS:
                raise ValueError(f"unknown order kind {kind!r}")
            idx = tuple(idx)
            covered.extend(idx)
            norm.append((idx, kind))
        if sorted(covered) != list(range(nvars)):
            raise ValueError("order blocks must partition the variables")
        self.nvars = nvars
        self.blocks = tuple(norm)
        self._keys: dict = {}

    @classmethod
    def lex(cls, nvars: int) -> "MonomialOrder":
        return cls(nvars, [(range(nvars), "lex")])

    @classmethod
    def degrevlex(cls, nvars: int) -> "MonomialOrder":
        return cls(nvars, [(range(nvars), "degrevlex")])

    @classmethod
    def block(cls, nvars: int, blocks: Sequence[tuple]) -> "MonomialOrder":
        return cls(nvars, blocks)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"MonomialOrder({list(self.blocks)!r})"

    def key(self, exp: Exponent) -> tuple:
        """Sort key: ``key(m1) < key(m2)`` iff ``m1 < m2``."""
        k = self._keys.get(exp)
        if k is None:
            parts = []
            for idx, kind in self.blocks:
                sub = [exp[i] for i in idx]
                if kind == "lex":
                    parts.append(tuple(sub))
                else:
                    parts.append((sum(sub), tuple(-e for e in reversed(sub))))
            k = tuple(parts)
            self._keys[exp] = k
        return k

    def leading_block_vars(self, count: int) -> set:
        out = set()
        for idx, _ in self.blocks[:count]:
            out.update(idx)
        return out

    def eliminates(self, drop: Iterable[int]) -> bool:
        """True when some prefix of blocks covers exactly ``drop``."""
        drop = set(drop)
        if not drop:
            return True
        acc = set()
        for idx, _ in self.blocks:
            acc.update(idx)
            if acc == drop:
                return True
            if not acc <= drop:
                return False
        return False

    def shifted(self, k: int) -> "MonomialOrder":
        """The same order on a registry with ``k`` new variables in front."""
        return MonomialOrder(
            self.nvars + k, [(tuple(i + k for i in idx), kind) for idx, kind in self.blocks]
        )


def compare_monomials(m1: "Monomial", m2: "Monomial", order: MonomialOrder) -> int:
    """-1, 0 or 1 as ``m1`` is smaller than, equal to or larger than ``m2``."""
    if m1.registry != m2.registry:
        raise RegistryMismatch("monomials from different registries")
    k1, k2 = order.key(m1.exponents), order.key(m2.exponents)
    return (k1 > k2) - (k1 < k2)


@dataclass(frozen=True)
class Monomial:
    registry: VarRegistry
    exponents: tuple

    def __post_init__(self):
        if len(self.exponents) != len(self.registry):
            raise ValueError("exponent vector length must match the registry")
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")


class PolyRing:
    """A registry together with the coefficient prime."""

    def __init__(self, names: Sequence[str], blocks: Sequence[str] | None = None,
                 modulus: int = DEFAULT_PRIME):
        if blocks is None:
            blocks = ["base"] * len(names)
        self.registry = VarRegistry(tuple(names), tuple(blocks))
        if modulus < 2 or any(modulus % d == 0 for d in range(2, int(modulus ** 0.5) + 1)):
            raise ValueError(f"modulus {modulus} is not prime")
        self.p = modulus

    @property
    def names(self) -> tuple:
        return self.registry.names

    @property
    def nvars(self) -> int:
        return len(self.registry)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.registry == other.registry and self.p == other.p

    def __hash__(self):
        return hash((self.registry, self.p))

    def __repr__(self):
        return f"PolyRing({list(self.names)!r}, p={self.p})"

    def check(self, other: "PolyRing") -> None:
        if self.registry != other.registry:
            raise RegistryMismatch(f"{list(self.names)} vs {list(other.names)}")
        if self.p != other.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> "Polynomial":
        exp = tuple(exp)
        Monomial(self.registry, exp)
        coeff %= self.p
        return Polynomial(self, {exp: coeff} if coeff else {})

    def var(self, name: str) -> "Polynomial":
        exp = [0] * self.nvars
        exp[self.registry.index(name)] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self) -> list:
        return [self.var(n) for n in self.names]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def degrevlex(self) -> MonomialOrder:
        return MonomialOrder.degrevlex(self.nvars)

    def lex(self) -> MonomialOrder:
        return MonomialOrder.lex(self.nvars)

    def with_modulus(self, p: int) -> "PolyRing":
        return PolyRing(self.names, self.registry.blocks, p)

    def extended(self, front: Sequence[str], block: str = "aux") -> "PolyRing":
        return PolyRing(tuple(front) + self.names, (block,) * len(front) + self.registry.blocks, self.p)

    def fresh_name(self, stem: str) -> str:
        taken = set(self.names)
        if stem not in taken:
            return stem
        i = 0
        while f"{stem}{i}" in taken:
            i += 1
        return f"{stem}{i}"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, int]):
        # Coefficients are reduced mod p and zero terms dropped, so equal
        # polynomials always have equal term dicts.
        p = ring.p
        self.ring = ring
        self.terms = {e: c % p for e, c in terms.items() if c % p}
        self._hash = None

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return {self.ring.names[i] for i in used}

    def leading(self, order: MonomialOrder) -> tuple:
        """(exponent, coefficient) of the leading term; raises on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self.scale(pow(c, -1, self.ring.p))

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self.ring.check(other.ring)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_term(self, exp: tuple, c: int) -> "Polynomial":
        p = self.ring.p
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): v * c % p for e, v in self.terms.items()},
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- maps --------------------------------------------------------------
    def substitute(self, mapping: Mapping[str, "Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Evaluate ``f`` at ``name -> polynomial``; unmapped variables map to themselves.

        With ``target`` given, every variable of ``f`` must be mapped or be
        present in ``target`` under the same name.
        """
        target = target or self.ring
        for g in mapping.values():
            if g.ring != target:
                raise RegistryMismatch("substitution images must live in the target ring")
        images = []
        for name in self.ring.names:
            if name in mapping:
                images.append(mapping[name])
            elif name in target.names:
                images.append(target.var(name))
            else:
                images.append(None)
        out = target.zero()
        power_cache: dict = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if not a:
                    continue
                if images[i] is None:
                    raise RegistryMismatch(f"no image for variable {self.ring.names[i]!r}")
                key = (i, a)
                if key not in power_cache:
                    power_cache[key] = images[i] ** a
                term = term * power_cache[key]
            out = out + term
        return out

    def convert(self, target: PolyRing) -> "Polynomial":
        """Re-express ``f`` in ``target`` by matching variable names."""
        if target == self.ring:
            return self
        if target.p != self.ring.p:
            raise ModulusMismatch(f"F_{self.ring.p} vs F_{target.p}")
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(target.names.index(name) if name in target.names else None)
        out = {}
        n = target.nvars
        for e, c in self.terms.items():
            new = [0] * n
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise RegistryMismatch(f"variable {self.ring.names[i]!r} absent from target")
                    new[pos[i]] = a
            out[tuple(new)] = c
        return Polynomial(target, out)

    def t_degree(self, exp: tuple) -> int:
        blocks = self.ring.registry.blocks
        return sum(a for a, tag in zip(exp, blocks) if tag != "base")

    # -- printing ----------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        order = order or self.ring.degrevlex()
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def t_components(f: Polynomial) -> list:
    """Homogeneous parts of ``f`` for deg(rees) = deg(aux) = 1, deg(base) = 0.

    Ordered by increasing weighted degree; their sum is ``f``.
    """
    parts: dict = {}
    for e, c in f.terms.items():
        parts.setdefault(f.t_degree(e), {})[e] = c
    return [Polynomial(f.ring, parts[d]) for d in sorted(parts)]


def is_t_homogeneous(f: Polynomial) -> bool:
    return len({f.t_degree(e) for e in f.terms}) <= 1


def t_degree(f: Polynomial) -> int:
    """Weighted degree of a nonzero T-homogeneous polynomial."""
    degs = {f.t_degree(e) for e in f.terms}
    if len(degs) != 1:
        raise ValueError("polynomial is zero or not T-homogeneous")
    return degs.pop()


# -- text format ------------------------------------------------------------

def _signed(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_monomial(exp: tuple, names: Sequence[str]) -> str:
    parts = []
    for name, a in zip(names, exp):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical text: terms by descending degrevlex, symmetric coefficients."""
    if not f.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(f.sorted_terms(order)):
        c = _signed(c, f.ring.p)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = format_monomial(e, f.ring.names)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``+ - * ^`` expressions with integer coefficients.

    Juxtaposition is rejected; ``^`` takes a nonnegative integer literal.
    Columns in errors are 1-based offsets into ``text``.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def fail(msg, tok):
        raise PolynomialSyntaxError(msg, tok[2] + 1)

    def expr():
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            take()
            val = term()
            if tok[1] == "-":
                val = -val
        else:
            val = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while True:
            tok = peek()
            if tok[0] == "op" and tok[1] == "*":
                take()
                val = val * factor()
            elif tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "("):
                fail("implicit multiplication is not allowed; use '*'", tok)
            else:
                return val

    def factor():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            tok = take()
            if tok[0] != "int":
                fail("exponent must be a nonnegative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom():
        tok = take()
        if tok[0] == "int":
            return ring.constant(int(tok[1]))
        if tok[0] == "name":
            if tok[1] not in ring.names:
                fail(f"unknown variable {tok[1]!r}", tok)
            return ring.var(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            val = expr()
            close = take()
            if close[0] != "op" or close[1] != ")":
                fail("expected ')'", close)
            return val
        if tok[0] == "end":
            fail("unexpected end of expression", tok)
        fail(f"unexpected {tok[1]!r}", tok)

    result = expr()
    if peek()[0] != "end":
        fail(f"unexpected {peek()[1]!r}", peek())
    return result
