"""The generating morphisms of the Spek, MSpek and HalfSpek theories."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from . import relations as rel
from .permutations import Permutation, perm_from_cycles
from .relations import II, IV, I, Relation

SPEK = "spek"
MSPEK = "mspek"
HALFSPEK = "halfspek"
THEORIES = (SPEK, MSPEK, HALFSPEK)


class TheoryError(ValueError):
    """A generator was requested under a theory that does not contain it."""


@dataclass(frozen=True)
class GeneratorId:
    """A named generator: tag, theory, and the permutation payload for perm tags."""

    tag: str
    theory: str = SPEK
    perm: Optional[Permutation] = None

    def __post_init__(self):
        if self.theory not in THEORIES:
            raise TheoryError("unknown theory %r" % self.theory)
        if self.tag in ("bottom", "bottom_dagger") and self.theory != MSPEK:
            raise TheoryError("%s is only a generator of MSpek" % self.tag)
        if self.tag == "perm":
            if self.perm is None:
                raise ValueError("perm generator needs a permutation")
            want = 2 if self.theory == HALFSPEK else 4
            if self.perm.base != want:
                raise TheoryError("permutation base %d does not fit theory %s"
                                  % (self.perm.base, self.theory))
        elif self.perm is not None:
            raise ValueError("only perm generators carry a permutation")

    @property
    def base_space(self):
        return II if self.theory == HALFSPEK else IV

    @property
    def name(self) -> str:
        names = {"delta": "delta", "delta_dagger": "delta+",
                 "epsilon": "eps", "epsilon_dagger": "eps+",
                 "bottom": "bot", "bottom_dagger": "bot+",
                 "identity": "id", "swap": "swap"}
        if self.tag == "perm":
            return "perm(%s)" % self.perm.name
        return names[self.tag]

    def dagger(self) -> "GeneratorId":
        flips = {"delta": "delta_dagger", "delta_dagger": "delta",
                 "epsilon": "epsilon_dagger", "epsilon_dagger": "epsilon",
                 "bottom": "bottom_dagger", "bottom_dagger": "bottom"}
        if self.tag == "perm":
            return GeneratorId("perm", self.theory, self.perm.inverse())
        if self.tag in ("identity", "swap"):
            return self
        return GeneratorId(flips[self.tag], self.theory)


_DELTA_4 = {1: [(1, 1), (2, 2)], 2: [(1, 2), (2, 1)],
            3: [(3, 3), (4, 4)], 4: [(3, 4), (4, 3)]}
_DELTA_2 = {0: [(0, 0), (1, 1)], 1: [(0, 1), (1, 0)]}


def arity(gen: GeneratorId) -> Tuple[int, int]:
    """(number of input legs, number of output legs)."""
    return {"perm": (1, 1), "identity": (1, 1), "swap": (2, 2),
            "delta": (1, 2), "delta_dagger": (2, 1),
            "epsilon": (1, 0), "epsilon_dagger": (0, 1),
            "bottom": (0, 1), "bottom_dagger": (1, 0)}[gen.tag]


def resolve(gen: GeneratorId) -> Relation:
    """The relation a generator denotes."""
    space = gen.base_space
    table = _DELTA_2 if gen.theory == HALFSPEK else _DELTA_4
    eps_kept = (0,) if gen.theory == HALFSPEK else (1, 3)
    if gen.tag == "perm":
        return gen.perm.relation()
    if gen.tag == "identity":
        return rel.identity(space)
    if gen.tag == "swap":
        return rel.swap(space, space)
    if gen.tag == "delta":
        return Relation(space, space * space,
                        frozenset(((x,), pair)
                                  for x, pairs in table.items() for pair in pairs))
    if gen.tag == "epsilon":
        return Relation(space, I, frozenset(((x,), ()) for x in eps_kept))
    if gen.tag == "bottom":
        return Relation(I, space, frozenset(((), (x,)) for x in space.digits()))
    return resolve(gen.dagger()).converse()


def half_component(gen: GeneratorId, side: str) -> GeneratorId:
    """The HalfSpek generator a phased Spek generator restricts to on one half.

    side "12" relabels 1->0, 2->1; side "34" relabels 3->0, 4->1.
    """
    if side not in ("12", "34"):
        raise ValueError("side must be '12' or '34'")
    if gen.theory == HALFSPEK:
        raise ValueError("already a HalfSpek generator")
    if gen.tag in ("bottom", "bottom_dagger"):
        raise TheoryError("bottom has no half component")
    if gen.tag == "perm":
        if not gen.perm.is_phased:
            raise ValueError("unphased permutation %s is not parallel" % gen.perm)
        return GeneratorId("perm", HALFSPEK, gen.perm.half_restriction(side))
    return GeneratorId(gen.tag, HALFSPEK)


def generator_set(theory: str):
    """The generating morphisms of a theory, in deterministic order."""
    from .permutations import s4, z2
    perms = z2() if theory == HALFSPEK else s4()
    gens = [GeneratorId("perm", theory, p) for p in perms]
    gens += [GeneratorId(t, theory) for t in ("delta", "epsilon")]
    if theory == MSPEK:
        gens.append(GeneratorId("bottom", theory))
    return gens


def parse_generator_name(text: str, theory: str = SPEK) -> GeneratorId:
    """Parse a DSL generator name: delta, delta+, eps, eps+, bot, bot+, id, swap, perm(...)."""
    text = text.strip()
    if text.startswith("perm(") and text.endswith(")"):
        base = 2 if theory == HALFSPEK else 4
        return GeneratorId("perm", theory, perm_from_cycles(text[5:-1], base))
    table = {"delta": "delta", "delta+": "delta_dagger",
             "eps": "epsilon", "eps+": "epsilon_dagger",
             "bot": "bottom", "bot+": "bottom_dagger",
             "id": "identity", "swap": "swap"}
    if text not in table:
        raise ValueError("unknown generator name %r" % text)
    return GeneratorId(table[text], theory)
