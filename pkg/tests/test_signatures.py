import itertools

import pytest
from hypothesis import given, settings, strategies as st

from spekcat import diagrams as dg
from spekcat import signatures as sg
from spekcat import worked
from spekcat.generate import random_diagram
from spekcat.permutations import Z2_SWAP

TRIANGLE_SIGNATURES = [
    (((0, 0), (0, 0), (1, 0)), 1),
    (((1, 0), (1, 0), (0, 1)), 1),
    (((1, 0), (1, 1), (0, 0)), 1),
    (((0, 0), (0, 1), (1, 1)), 1),
    (((0, 1), (1, 0), (0, 0)), 1),
    (((1, 1), (0, 0), (1, 1)), 1),
    (((1, 1), (0, 1), (1, 0)), 1),
    (((0, 1), (1, 1), (0, 1)), 1),
]

INTERNALIZED_SIGNATURES = [
    (((0, 0), (1, 0)), 1),
    (((0, 0), (1, 1)), 1),
    (((1, 1), (1, 0)), 1),
    (((1, 1), (1, 1)), 1),
]


def test_triangle_profiles_and_blocks():
    form, zd = sg.state_form(worked.triangle_diagram())
    profiles = [sg.zone_profile(zd.diagram, z.boxes) for z in zd.zones]
    assert profiles == [(0, 0), (0, 1), (1, 0)]
    assert sorted(form.signatures) == sorted(TRIANGLE_SIGNATURES)
    assert form.zone_legs == (2, 1, 2)


def test_triangle_expansion_block_combinatorics():
    form, _ = sg.state_form(worked.triangle_diagram())
    r = form.expand()
    assert len(r.pairs) == 32
    assert len(form.signatures) == 8
    for sig, count in form.signatures:
        block = [per for per in
                 itertools.product(*(sg._zone_block(pt, k)
                                     for pt, k in zip(sig, form.zone_legs)))]
        assert len(block) == 4


def test_internalized_signatures_and_constraint():
    form, zd = sg.state_form(worked.triangle_internalized_diagram())
    assert sorted(form.signatures) == sorted(INTERNALIZED_SIGNATURES)
    assert len(form.expand().pairs) == 16
    system = sg.constraint_system(zd)
    assert system.to_text() == "T1 + T2 + T3 = 0"


def test_triangle_form_text_layout():
    form, _ = sg.state_form(worked.triangle_internalized_diagram())
    assert form.to_text().splitlines() == [
        "(Odd,12; Even,12) x1",
        "(Odd,12; Even,34) x1",
        "(Even,34; Even,12) x1",
        "(Even,34; Even,34) x1",
    ]


def test_forms_match_brute_force_on_worked_examples():
    for build in (worked.triangle_diagram,
                  worked.triangle_internalized_diagram,
                  worked.chain_diagram, worked.ghz_diagram,
                  worked.eta_diagram):
        d = build()
        form, _ = sg.state_form(d)
        assert form.expand() == dg.evaluate(dg.as_state(d))


def test_inconsistent_constraints_give_empty():
    d = worked.empty_scalar_diagram()
    form, zd = sg.state_form(d)
    assert not sg.constraint_system(zd).consistent
    assert form.is_empty and form.to_text() == "EMPTY\n"
    assert not form.expand().pairs
    assert not dg.evaluate(d).pairs

    d2 = worked.empty_state_diagram()
    form2, _ = sg.state_form(d2)
    assert form2.is_empty and not dg.evaluate(d2).pairs


def test_phased_form_of_diagonal():
    form = sg.phased_form(worked.eta_diagram())
    assert form.signatures == ((((1, 0),), 1), (((1, 1),), 1))
    assert form.expand() == dg.evaluate(worked.eta_diagram())


def test_phased_form_of_unit_state():
    form = sg.phased_form(dg.parse("box e: eps+\nout e.1\n"))
    assert form.expand().pairs == frozenset({((), (1,)), ((), (3,))})


def test_phased_form_rejects_linked_diagrams():
    with pytest.raises(ValueError):
        sg.phased_form(worked.triangle_diagram())


def test_external_form_rejects_internal_zones():
    zd = dg.zone_decompose(worked.triangle_internalized_diagram())
    with pytest.raises(ValueError):
        sg.external_form(zd)


def test_external_form_type_signatures_exhaustive():
    zd = dg.zone_decompose(worked.triangle_diagram())
    form = sg.external_form(zd)
    types = sorted(tuple(t for _, t in sig) for sig, _ in form.signatures)
    assert types == sorted(itertools.product((0, 1), repeat=3))


def test_parity_flip_when_linking_mixed_types():
    # tensor two unit states, then the same pair joined by a Sigma link:
    # blocks where the types differ flip parity, equal types do not
    free_src = "box a: eps+\nbox b: eps+\nout a.1 b.1\n"
    linked_src = ("box a: eps+\nbox d1: delta\nbox s: perm((24))\n"
                  "box b: eps+\nbox d2: delta\n"
                  "wire a.1 d1.in\nwire b.1 d2.in\n"
                  "wire d1.2 s.in\nwire s.1 d2.1\n"
                  "out d1.1 d2.2\n")
    free, _ = sg.state_form(dg.parse(free_src))
    linked, _ = sg.state_form(dg.parse(linked_src))
    free_by_type = {tuple(t for _, t in sig): tuple(p for p, _ in sig)
                    for sig, _ in free.signatures}
    for sig, _ in linked.signatures:
        types = tuple(t for _, t in sig)
        parities = tuple(p for p, _ in sig)
        base = free_by_type[types]
        flip = types[0] ^ types[1]
        assert parities == tuple(p ^ flip for p in base)


def test_chain_duplication_and_acs():
    rep = sg.duplication_analysis(worked.chain_diagram())
    assert rep.n_zones == 7
    assert rep.internal_zones == (3, 4, 5, 6)
    assert rep.system.rank == 3 and len(rep.system.rows) == 4
    assert rep.duplication_factor == 2
    assert rep.distinct_signatures == 8
    assert rep.acs == ((4, 5, 6),)
    assert all(3 not in witness for witness in rep.acs)


def test_duplication_trivial_when_constraints_independent():
    rep = sg.duplication_analysis(worked.triangle_internalized_diagram())
    assert rep.duplication_factor == 1
    assert rep.distinct_signatures == 4


def test_halfspek_parity_matches_evaluation():
    src_even = "theory halfspek\nbox e: eps+\nout e.1\n"
    src_odd = ("theory halfspek\nbox e: eps+\nbox p: perm((01))\n"
               "wire e.1 p.in\nout p.1\n")
    assert sg.halfspek_parity(dg.parse(src_even)) == 1
    assert sg.halfspek_parity(dg.parse(src_odd)) == 0
    assert dg.evaluate(dg.parse(src_odd)).pairs == frozenset({((), (1,))})


def test_halfspek_parity_rejects_spek():
    with pytest.raises(dg.DiagramError):
        sg.halfspek_parity(worked.eta_diagram())


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=100000))
def test_oracle_equivalence_random(seed):
    d = random_diagram(seed)
    form, _ = sg.state_form(d)
    assert form.expand() == dg.evaluate(dg.as_state(d))


def test_oracle_equivalence_exhaustive_small():
    # every wiring of up to three boxes over a representative alphabet
    alphabet = ["delta", "eps+", "perm((24))", "perm((12))"]
    checked = 0
    for size in (1, 2, 3):
        for combo in itertools.combinations_with_replacement(alphabet, size):
            boxes = ["box b%d: %s" % (k, g) for k, g in enumerate(combo)]
            ports = []
            for k, g in enumerate(combo):
                if g != "eps+":
                    ports.append("b%d.in" % k)
                ports.append("b%d.1" % k)
                if g == "delta":
                    ports.append("b%d.2" % k)
            for wires in _matchings(ports):
                open_ports = [p for p in ports
                              if not any(p in w for w in wires)]
                lines = list(boxes)
                lines += ["wire %s %s" % w for w in wires]
                ins = [p for p in open_ports if p.endswith(".in")]
                outs = [p for p in open_ports if not p.endswith(".in")]
                if ins:
                    lines.append("in " + " ".join(ins))
                if outs:
                    lines.append("out " + " ".join(outs))
                d = dg.parse("\n".join(lines) + "\n")
                form, _ = sg.state_form(d)
                assert form.expand() == dg.evaluate(dg.as_state(d))
                checked += 1
    assert checked > 1000


def _matchings(ports):
    if not ports:
        yield ()
        return
    first, rest = ports[0], ports[1:]
    # leave first open
    for m in _matchings(rest):
        yield m
    # or wire it to any later port
    for i, other in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for m in _matchings(remaining):
            yield ((first, other),) + m
