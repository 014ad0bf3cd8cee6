"""Closed-form block descriptions of the states Spek diagrams denote.

Every Spek state is a disjoint union of blocks.  On each wire a block is one
of four 2-element sets, labelled by a parity bit and a type bit:

    parity: Odd = 0, Even = 1
    type:   12 = 0 (values in {1,2}),  34 = 1 (values in {3,4})

Type-12 parity counts occurrences of the value 2, type-34 parity counts
occurrences of 4 (odd count = Odd).  The block calculus computes the full
list of per-zone (parity, type) signatures of a diagram's state without
evaluating the diagram, from zone profiles and the Sigma-link adjacency.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import gf2
from . import relations as rel
from .diagrams import (Diagram, DiagramError, ZoneDecomposition, as_state,
                       zone_decompose)
from .generators import HALFSPEK, SPEK, GeneratorId, half_component
from .permutations import Z2_SWAP
from .relations import Relation, Space

PARITY_NAMES = {0: "Odd", 1: "Even"}
TYPE_NAMES = {0: "12", 1: "34"}
SINGLE_LEG_BLOCKS = {
    (1, 0): (1,),        # Even,12 -> zero 2s
    (0, 0): (2,),        # Odd,12  -> one 2
    (1, 1): (3,),
    (0, 1): (4,),
}
TYPE_VALUES = {0: (1, 2), 1: (3, 4)}
PARITY_VALUE = {0: 2, 1: 4}      # the counted value per type


def zone_profile(diagram: Diagram, boxes) -> Tuple[int, int]:
    """Profile (psi(0), psi(1)) of a zone, by counting swap shadows.

    Restricting a phased zone to the {1,2} plane (for type 0) or the {3,4}
    plane (for type 1) turns each box into its two-level counterpart; the
    phased permutations restrict to identity or to the two-level swap.  The
    zone's parity offset for each type is set by the number of swaps, with
    the swap-free zone sitting at parity Even.
    """
    box_map = diagram.box_map
    psi = []
    for side in ("12", "34"):
        swaps = 0
        for name in boxes:
            gen = box_map[name]
            if gen.tag == "perm" and gen.perm.half_restriction(side) == Z2_SWAP:
                swaps += 1
        psi.append((1 + swaps) % 2)
    return tuple(psi)


def halfspek_parity(diagram: Diagram) -> int:
    """Parity bit of a connected phased HalfSpek diagram's state.

    The state is the set of bit strings whose sum matches the number of swap
    boxes; with the Odd=0/Even=1 encoding the bit is 1 + #swaps mod 2.
    """
    if diagram.theory != HALFSPEK:
        raise DiagramError("parity shortcut applies to HalfSpek diagrams")
    swaps = sum(1 for _, gen in diagram.boxes
                if gen.tag == "perm" and gen.perm == Z2_SWAP)
    return (1 + swaps) % 2


@dataclass(frozen=True)
class ConstraintSystem:
    """Linear conditions over the zone type bits T1, ..., Tm (1-based)."""
    n_vars: int
    rows: Tuple[int, ...]        # coefficient bitmasks, bit i = T_{i+1}
    rhs: Tuple[int, ...]

    @property
    def rank(self):
        return gf2.rank(list(self.rows), self.n_vars)

    @property
    def consistent(self):
        return gf2.is_consistent(list(self.rows), list(self.rhs), self.n_vars)

    def solutions(self):
        return gf2.solutions(list(self.rows), list(self.rhs), self.n_vars)

    def to_text(self) -> str:
        lines = []
        for row, b in zip(self.rows, self.rhs):
            terms = ["T%d" % (i + 1) for i in range(self.n_vars)
                     if row & (1 << i)]
            lhs = " + ".join(terms) if terms else "0"
            lines.append("%s = %d" % (lhs, b))
        return "\n".join(lines)


@dataclass(frozen=True)
class StateForm:
    """Block signature list of a Spek state, one entry per external zone.

    ``signatures`` pairs each distinct per-zone (parity, type) tuple with its
    multiplicity.  ``zone_legs`` gives the leg count of each external zone and
    ``leg_order`` maps canonical leg positions back to the source diagram's
    leg indices.
    """
    zone_legs: Tuple[int, ...]
    signatures: Tuple[Tuple[Tuple[Tuple[int, int], ...], int], ...]
    leg_order: Tuple[int, ...]

    @property
    def n_legs(self):
        return sum(self.zone_legs)

    @property
    def is_empty(self):
        return not self.signatures

    def to_text(self) -> str:
        if not self.signatures:
            return "EMPTY\n"
        lines = []
        for sig, count in self.signatures:
            cells = ["%s,%s" % (PARITY_NAMES[p], TYPE_NAMES[t])
                     for p, t in sig]
            lines.append("(%s) x%d" % ("; ".join(cells), count))
        return "\n".join(lines) + "\n"

    def expand(self) -> Relation:
        """The exact state (as a relation from the unit) the form describes.

        Legs come out in the source diagram's order.
        """
        n = self.n_legs
        cod = Space(4, n) if n else rel.I
        rows = set()
        for sig, _ in self.signatures:
            per_zone = [_zone_block(pt, k)
                        for pt, k in zip(sig, self.zone_legs)]
            for combo in itertools.product(*per_zone):
                flat = tuple(v for part in combo for v in part)
                rows.add(flat)
        inverse = [0] * n
        for pos, orig in enumerate(self.leg_order):
            inverse[orig] = pos
        pairs = frozenset(((), tuple(row[inverse[k]] for k in range(n)))
                          for row in rows)
        return Relation(rel.I, cod, pairs)


def _zone_block(sig, n_legs):
    """All value tuples on a zone's legs matching one (parity, type) pair."""
    parity, typ = sig
    values = TYPE_VALUES[typ]
    counted = PARITY_VALUE[typ]
    out = []
    for combo in itertools.product(values, repeat=n_legs):
        if (combo.count(counted) + 1) % 2 == parity:
            out.append(combo)
    return out


def constraint_system(zd: ZoneDecomposition) -> ConstraintSystem:
    """One equation per internal zone: its block parity must come out Even.

    A leg-free zone survives contraction against the Even selection of the
    counit, so the parity expression psi_i(T_i) + sum over linked zones j of
    (T_i + T_j) is pinned to 1 for every internal zone i.
    """
    profiles = [zone_profile(zd.diagram, z.boxes) for z in zd.zones]
    rows, rhs = [], []
    for i in zd.internal_zones:
        a, a1 = profiles[i]
        b = a ^ a1                       # psi_i(T) = a + b T
        adj = zd.adjacency(i)
        coeff_i = (b + len(adj)) % 2
        row = (coeff_i << i)
        for j in adj:
            row ^= 1 << j
        rows.append(row)
        rhs.append(1 ^ a)
    return ConstraintSystem(len(zd.zones), tuple(rows), tuple(rhs))


def signature_of(zd: ZoneDecomposition, profiles, assignment) -> Tuple:
    """External-zone (parity, type) pairs under one type-bit assignment."""
    sig = []
    for i in zd.external_zones:
        a, a1 = profiles[i]
        t_i = (assignment >> i) & 1
        p = a ^ ((a ^ a1) & t_i)
        for j in zd.adjacency(i):
            p ^= t_i ^ ((assignment >> j) & 1)
        sig.append((p, t_i))
    return tuple(sig)


def external_form(zd: ZoneDecomposition) -> StateForm:
    """Block form of a decomposition with no internal zones: all type
    signatures appear once and parities follow from profiles and links."""
    if zd.internal_zones:
        raise ValueError("decomposition has internal zones")
    return _form_of(zd)


def internal_form(zd: ZoneDecomposition) -> StateForm:
    """Block form in the general case: internal zones become constraints."""
    return _form_of(zd)


def phased_form(d: Diagram) -> StateForm:
    """Block form of a single-zone (fully phased) state diagram."""
    zd = zone_decompose(as_state(d))
    if len(zd.zones) != 1 or zd.links:
        raise ValueError("diagram is not a single phased zone")
    return _form_of(zd)


def _form_of(zd: ZoneDecomposition) -> StateForm:
    profiles = [zone_profile(zd.diagram, z.boxes) for z in zd.zones]
    system = constraint_system(zd)
    tally: Dict[Tuple, int] = {}
    for assignment in system.solutions():
        sig = signature_of(zd, profiles, assignment)
        tally[sig] = tally.get(sig, 0) + 1
    ordered = sorted(tally.items(),
                     key=lambda kv: (tuple(t for _, t in kv[0]),
                                     tuple(p for p, _ in kv[0])))
    return StateForm(
        zone_legs=tuple(len(zd.zones[i].legs) for i in zd.external_zones),
        signatures=tuple(ordered),
        leg_order=zd.leg_reorder,
    )


def state_form(d: Diagram) -> Tuple[StateForm, ZoneDecomposition]:
    """Closed-form block description of the state a Spek diagram denotes.

    Input legs are first bent to outputs, so the form always describes the
    diagram's state under map-state duality.
    """
    d = as_state(d)
    zd = zone_decompose(d)
    return _form_of(zd), zd


@dataclass(frozen=True)
class DuplicationReport:
    """How far the signature tally over-counts distinct blocks.

    Each distinct signature appears the same number of times; the common
    multiplicity equals 2 to the number of linearly dependent internal-zone
    constraints.  The witness sets are the inclusion-minimal nonempty sets
    of internal zones whose external neighbourhoods cancel pairwise (each
    externally linked zone being covered an even number of times).
    """
    n_zones: int
    internal_zones: Tuple[int, ...]
    system: ConstraintSystem
    duplication_factor: int
    distinct_signatures: int
    acs: Tuple[Tuple[int, ...], ...]


def duplication_analysis(d: Diagram) -> DuplicationReport:
    zd = zone_decompose(as_state(d))
    system = constraint_system(zd)
    internal = zd.internal_zones
    external = set(zd.external_zones)

    form, _ = state_form(d)
    counts = {count for _, count in form.signatures}
    assert len(counts) <= 1, "signature multiplicities must be uniform"
    factor = counts.pop() if counts else 0
    dependent = len(system.rows) - system.rank
    if form.signatures:
        assert factor == 1 << dependent

    acs = []
    if len(internal) <= 16:
        for size in range(1, len(internal) + 1):
            for combo in itertools.combinations(internal, size):
                cover = 0
                for i in combo:
                    for j in zd.adjacency(i):
                        if j in external:
                            cover ^= 1 << j
                if cover == 0 and not any(set(a) <= set(combo) for a in acs):
                    acs.append(combo)
    return DuplicationReport(
        n_zones=len(zd.zones),
        internal_zones=internal,
        system=system,
        duplication_factor=factor,
        distinct_signatures=len(form.signatures),
        acs=tuple(acs),
    )
