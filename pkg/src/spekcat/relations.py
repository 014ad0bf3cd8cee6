"""Exact relations between powers of a fixed finite carrier ({1..4} or {0,1}).

Everything here is a pure value: spaces, tuples and relations are immutable
and hashable, and every operation returns a fresh value.  Set semantics
throughout; there are no tolerances anywhere.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

Digits = Tuple[int, ...]


class CapacityError(Exception):
    """An intermediate object would exceed the configured arity ceiling."""


class CompositionError(TypeError):
    """Codomain/domain mismatch in a sequential composite."""


def max_arity() -> int:
    """Largest allowed arity for any intermediate object.

    SPEK_MAX_CELLS gives the ceiling as a cell count (base**arity); the
    default guarantees objects up to arity 10 per side.
    """
    cells = os.environ.get("SPEK_MAX_CELLS")
    if cells is None:
        return 10
    cells = int(cells)
    arity = 0
    while 4 ** (arity + 1) <= cells:
        arity += 1
    return arity


@dataclass(frozen=True)
class Space:
    """A power of a fixed base set: base 4 ({1,2,3,4}), base 2 ({0,1}) or the unit.

    The unit object is canonically (base=1, arity=0); any arity-0 space is
    normalised to it on construction.
    """

    base: int = 1
    arity: int = 0

    def __post_init__(self):
        if self.base not in (1, 2, 4):
            raise ValueError("base must be 1, 2 or 4, got %r" % (self.base,))
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        if self.arity == 0 and self.base != 1:
            object.__setattr__(self, "base", 1)
        if self.base == 1:
            object.__setattr__(self, "arity", 0)

    @property
    def size(self) -> int:
        return self.base ** self.arity

    def digits(self) -> range:
        # 1-based digits for the 4-element carrier, 0-based for the 2-element one
        if self.base == 4:
            return range(1, 5)
        if self.base == 2:
            return range(0, 2)
        return range(0)

    def tuples(self) -> Iterator[Digits]:
        """All elements in canonical (lexicographic) order."""
        return itertools.product(self.digits(), repeat=self.arity)

    def __mul__(self, other: "Space") -> "Space":
        if self.arity == 0:
            return other
        if other.arity == 0:
            return self
        if self.base != other.base:
            raise CompositionError(
                "cannot combine base-%d and base-%d spaces" % (self.base, other.base))
        return Space(self.base, self.arity + other.arity)

    def __str__(self):
        return "%d^%d" % (self.base if self.arity else 1, self.arity)


I = Space()
IV = Space(4, 1)
II = Space(2, 1)


def iv(n: int) -> Space:
    return Space(4, n) if n else I


def ii(n: int) -> Space:
    return Space(2, n) if n else I


def _fmt(t: Digits) -> str:
    return "".join(str(d) for d in t) if t else "*"


def _parse_tuple(text: str) -> Digits:
    if text == "*":
        return ()
    return tuple(int(c) for c in text)


@dataclass(frozen=True)
class Relation:
    """A relation dom -> cod as a frozen set of (dom tuple, cod tuple) pairs."""

    dom: Space
    cod: Space
    pairs: frozenset

    @staticmethod
    def make(dom: Space, cod: Space, pairs: Iterable) -> "Relation":
        pairs = frozenset((tuple(a), tuple(b)) for a, b in pairs)
        for a, b in pairs:
            if len(a) != dom.arity or len(b) != cod.arity:
                raise ValueError("pair (%r, %r) does not fit %s -> %s"
                                 % (a, b, dom, cod))
        return Relation(dom, cod, pairs)

    @staticmethod
    def state(space: Space, tuples: Iterable) -> "Relation":
        return Relation.make(I, space, (((), tuple(t)) for t in tuples))

    @property
    def is_state(self) -> bool:
        return self.dom.arity == 0

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def tuples(self) -> frozenset:
        """The subset view of a state (or effect, via its codomain side)."""
        if not self.is_state:
            raise ValueError("tuples() is only defined for states")
        return frozenset(b for _, b in self.pairs)

    def then(self, other: "Relation") -> "Relation":
        if self.cod != other.dom:
            raise CompositionError("cannot compose %s -> %s with %s -> %s"
                                   % (self.dom, self.cod, other.dom, other.cod))
        by_mid = {}
        for b, c in other.pairs:
            by_mid.setdefault(b, []).append(c)
        out = set()
        for a, b in self.pairs:
            for c in by_mid.get(b, ()):
                out.add((a, c))
        return Relation(self.dom, other.cod, frozenset(out))

    def __rshift__(self, other):
        return self.then(other)

    def tensor(self, other: "Relation") -> "Relation":
        dom = self.dom * other.dom
        cod = self.cod * other.cod
        if max(dom.arity, cod.arity) > max_arity():
            raise CapacityError("tensor result exceeds arity ceiling")
        out = frozenset((a1 + a2, b1 + b2)
                        for a1, b1 in self.pairs for a2, b2 in other.pairs)
        return Relation(dom, cod, out)

    def __matmul__(self, other):
        return self.tensor(other)

    def converse(self) -> "Relation":
        return Relation(self.cod, self.dom,
                        frozenset((b, a) for a, b in self.pairs))

    def marginal(self, keep) -> "Relation":
        """Restriction of a state to the given (1-based) legs, by digit deletion."""
        if not self.is_state:
            raise ValueError("marginal is only defined for states")
        keep = sorted(set(keep))
        for k in keep:
            if not 1 <= k <= self.cod.arity:
                raise IndexError("leg %d out of range for %s" % (k, self.cod))
        idx = [k - 1 for k in keep]
        space = Space(self.cod.base, len(idx)) if idx else I
        return Relation.state(space,
                              (tuple(b[i] for i in idx) for _, b in self.pairs))

    def reorder_cod(self, order) -> "Relation":
        """Permute codomain legs: new leg i reads old leg order[i] (1-based)."""
        idx = [k - 1 for k in order]
        if sorted(idx) != list(range(self.cod.arity)):
            raise ValueError("order must be a permutation of the codomain legs")
        return Relation(self.dom, self.cod,
                        frozenset((a, tuple(b[i] for i in idx))
                                  for a, b in self.pairs))

    def to_text(self) -> str:
        lines = ["REL %s -> %s" % (self.dom, self.cod)]
        if not self.pairs:
            lines.append("∅")
            return "\n".join(lines) + "\n"
        for a, b in sorted(self.pairs):
            if self.is_state:
                lines.append(_fmt(b))
            else:
                lines.append("%s ~ %s" % (_fmt(a), _fmt(b)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Relation":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "REL" or head[2] != "->":
            raise ValueError("bad relation header: %r" % lines[0])

        def space(tok):
            base, arity = tok.split("^")
            arity = int(arity)
            return Space(4 if base == "4" else (2 if base == "2" else 1), arity) \
                if arity else I

        dom, cod = space(head[1]), space(head[3])
        pairs = set()
        for ln in lines[1:]:
            if ln == "∅":
                continue
            if "~" in ln:
                left, right = (part.strip() for part in ln.split("~"))
                pairs.add((_parse_tuple(left), _parse_tuple(right)))
            else:
                pairs.add(((), _parse_tuple(ln)))
        return Relation(dom, cod, frozenset(pairs))

    def __str__(self):
        return self.to_text()


def identity(space: Space) -> Relation:
    return Relation(space, space, frozenset((t, t) for t in space.tuples()))


def swap(a: Space, b: Space) -> Relation:
    dom = a * b
    return Relation(dom, b * a,
                    frozenset((x + y, y + x)
                              for x in a.tuples() for y in b.tuples()))


def empty(dom: Space, cod: Space) -> Relation:
    return Relation(dom, cod, frozenset())


def scalar(present: bool = True) -> Relation:
    return Relation(I, I, frozenset([((), ())]) if present else frozenset())


# Free-function aliases over the Relation methods.

def compose(first: Relation, second: Relation) -> Relation:
    """first followed by second (diagrammatic order)."""
    return first.then(second)


def tensor(left: Relation, right: Relation) -> Relation:
    return left.tensor(right)


def converse(rel: Relation) -> Relation:
    return rel.converse()


def marginal(state: Relation, keep) -> Relation:
    return state.marginal(keep)
