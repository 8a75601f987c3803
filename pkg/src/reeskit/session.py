"""Session files: a line-oriented format declaring a ring, relations and ideals.

    # comments start with '#'
    field 32003
    ring a b
    rel a^2*b - b^3
    ideal I = a^3, b^3, a*b^2
    role I y = 3
    expect reltype --ideal I : relation_type = 3

``field`` is optional (default 32003) and must precede ``ring``.  ``role``
gives the 1-based position of the distinguished generator ``y``.  ``expect``
lines annotate a command and the value expected at a dotted path of its
result; they drive the corpus suite.
"""

from __future__ import annotations

import json
import re
import shlex
from dataclasses import dataclass, field

from .algebra import DEFAULT_PRIME, PolyRing, PolynomialSyntaxError, format_polynomial, parse_polynomial
from .rees import IdealSpec, PresentedRing


class SessionError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Expectation:
    command: str
    args: tuple
    path: str
    value: object
    line: int = 0

    def render(self) -> str:
        argv = " ".join(shlex.quote(a) for a in (self.command,) + self.args)
        return f"expect {argv} : {self.path} = {json.dumps(self.value, sort_keys=True)}"


@dataclass
class Session:
    modulus: int
    variables: tuple
    relations: list
    ideals: dict                     # name -> list of Polynomial, in declaration order
    roles: dict = field(default_factory=dict)        # ideal name -> 1-based index of y
    expectations: list = field(default_factory=list)

    @property
    def ring(self) -> PresentedRing:
        cached = self.__dict__.get("_ring")
        if cached is None:
            base = self.relations[0].ring if self.relations else PolyRing(self.variables, modulus=self.modulus)
            cached = PresentedRing(base, tuple(self.relations))
            self.__dict__["_ring"] = cached
        return cached

    def ideal(self, name: str) -> IdealSpec:
        if name not in self.ideals:
            raise KeyError(f"unknown ideal {name!r}")
        return IdealSpec(self.ring, tuple(self.ideals[name]))

    def y_index(self, name: str, override: int | None = None) -> int:
        """0-based position of ``y`` in ideal ``name`` (default: last)."""
        if override is not None:
            pos = override
        else:
            pos = self.roles.get(name, len(self.ideals[name]))
        if not 1 <= pos <= len(self.ideals[name]):
            raise ValueError(f"y index {pos} out of range for ideal {name!r}")
        return pos - 1

    def canonical(self) -> str:
        lines = [f"field {self.modulus}", "ring " + " ".join(self.variables)]
        lines += [f"rel {format_polynomial(r)}" for r in self.relations]
        for name, gens in self.ideals.items():
            lines.append(f"ideal {name} = " + ", ".join(format_polynomial(g) for g in gens))
        for name, pos in self.roles.items():
            lines.append(f"role {name} y = {pos}")
        lines += [e.render() for e in self.expectations]
        return "\n".join(lines) + "\n"

    def structure(self) -> tuple:
        """Comparable summary used for round-trip checks."""
        return (
            self.modulus,
            self.variables,
            tuple(format_polynomial(r) for r in self.relations),
            tuple((n, tuple(format_polynomial(g) for g in gs)) for n, gs in self.ideals.items()),
            tuple(self.roles.items()),
            tuple((e.command, e.args, e.path, json.dumps(e.value, sort_keys=True)) for e in self.expectations),
        )


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


def _poly(text: str, ring: PolyRing, line: int, col0: int):
    stripped = text.strip()
    if not stripped:
        raise SessionError("empty polynomial", line, col0 + 1)
    lead = len(text) - len(text.lstrip())
    try:
        return parse_polynomial(stripped, ring)
    except PolynomialSyntaxError as exc:
        raise SessionError(exc.message, line, col0 + lead + exc.column) from None


def parse_session(text: str, modulus: int | None = None) -> Session:
    """Parse a session; ``modulus`` overrides any ``field`` line."""
    prime = DEFAULT_PRIME
    ring = None
    variables: tuple = ()
    relations, ideals, roles, expectations = [], {}, {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        body = body.strip()
        head, _, rest = body.partition(" ")
        rest_col = indent + len(head) + 2
        if head == "field":
            if ring is not None:
                raise SessionError("field must precede ring", lineno, indent + 1)
            if not rest.strip().isdigit():
                raise SessionError("field expects a prime", lineno, rest_col)
            prime = int(rest)
        elif head == "ring":
            if ring is not None:
                raise SessionError("ring declared twice", lineno, indent + 1)
            tokens = [(m.group(), indent + len(head) + 1 + m.start() + 1) for m in re.finditer(r"\S+", rest)]
            if not tokens:
                raise SessionError("ring needs at least one variable", lineno, rest_col)
            names = [t for t, _ in tokens]
            seen = set()
            for name, col in tokens:
                if not _NAME.match(name):
                    raise SessionError(f"bad variable name {name!r}", lineno, col)
                if name in seen:
                    raise SessionError(f"duplicate variable {name!r}", lineno, col)
                seen.add(name)
            variables = tuple(names)
            try:
                ring = PolyRing(variables, modulus=modulus or prime)
            except ValueError as exc:
                raise SessionError(str(exc), lineno, 1) from None
        elif ring is None:
            raise SessionError(f"{head!r} before ring declaration", lineno, indent + 1)
        elif head == "rel":
            relations.append(_poly(rest, ring, lineno, rest_col - 1))
        elif head == "ideal":
            name, eq, gens_text = rest.partition("=")
            name = name.strip()
            if not eq or not _NAME.match(name):
                raise SessionError("expected 'ideal NAME = g1, g2, ...'", lineno, rest_col)
            if name in ideals:
                raise SessionError(f"duplicate ideal {name!r}", lineno, rest_col)
            offset = indent + body.index("=") + 1
            gens = []
            for piece in gens_text.split(","):
                gens.append(_poly(piece, ring, lineno, offset))
                offset += len(piece) + 1
            ideals[name] = gens
        elif head == "role":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s+y\s*=\s*(\d+)", rest.strip())
            if not m:
                raise SessionError("expected 'role NAME y = k'", lineno, rest_col)
            name, pos = m.group(1), int(m.group(2))
            if name not in ideals:
                raise SessionError(f"unknown ideal {name!r}", lineno, rest_col)
            if not 1 <= pos <= len(ideals[name]):
                raise SessionError(f"position {pos} out of range", lineno, rest_col)
            roles[name] = pos
        elif head == "expect":
            cmd_text, sep, check = rest.rpartition(" : ")
            path, eq, value_text = check.partition("=")
            if not sep or not eq:
                raise SessionError("expected 'expect COMMAND ARGS : PATH = JSON'", lineno, rest_col)
            try:
                argv = shlex.split(cmd_text)
                value = json.loads(value_text)
            except ValueError as exc:
                raise SessionError(f"bad expectation: {exc}", lineno, rest_col) from None
            if not argv:
                raise SessionError("expectation without a command", lineno, rest_col)
            expectations.append(Expectation(argv[0], tuple(argv[1:]), path.strip(), value, lineno))
        else:
            raise SessionError(f"unknown directive {head!r}", lineno, indent + 1)
    if ring is None:
        raise SessionError("missing ring declaration", max(1, len(text.splitlines())), 1)
    return Session(ring.p, variables, relations, ideals, roles, expectations)
