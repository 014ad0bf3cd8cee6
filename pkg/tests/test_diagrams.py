import random

import pytest

from spekcat import diagrams as dg
from spekcat import relations as rel
from spekcat import worked
from spekcat.generate import random_diagram
from spekcat.generators import GeneratorId, resolve
from spekcat.relations import IV, CapacityError, Relation, Space

ETA_SRC = "box e: eps+\nbox d: delta\nwire e.1 d.in\nout d.1 d.2\n"


def test_parse_smallest_diagram():
    d = dg.parse("box e: eps+\nout e.1\n")
    assert len(d.boxes) == 1 and d.legs == ((("e", "1"), "out"),)


def test_parse_eta():
    d = dg.parse(ETA_SRC)
    assert d.n_inputs() == 0 and d.n_outputs() == 2


def test_parse_errors_carry_line_numbers():
    with pytest.raises(dg.DiagramError) as exc:
        dg.parse("box e: eps+\nwire e.1\n")
    assert "line 2" in str(exc.value)
    with pytest.raises(dg.DiagramError):
        dg.parse("box e: nonsense\nout e.1\n")
    with pytest.raises(dg.DiagramError):
        dg.parse("box e: eps+\n")          # dangling port
    with pytest.raises(dg.DiagramError):
        dg.parse("box e: eps+\nout e.1 e.1\n")


def test_evaluate_eta_is_diagonal():
    r = dg.evaluate(dg.parse(ETA_SRC))
    assert r.pairs == frozenset(((), (x, x)) for x in (1, 2, 3, 4))


def test_evaluate_unit_state():
    r = dg.evaluate(dg.parse("theory halfspek\nbox e: eps+\nout e.1\n"))
    assert r.pairs == frozenset({((), (0,))})


def test_evaluate_empty_diagram_is_scalar():
    assert dg.evaluate(dg.parse("")) == rel.scalar(True)


def test_evaluate_sigma_loop_matches_hand_contraction():
    # close both legs of the diagonal through (1)(3)(24): only 1 and 3 survive
    src = ("box e: eps+\nbox d: delta\nbox s: perm((24))\n"
           "wire e.1 d.in\nwire d.1 s.in\nwire s.1 d.2\n")
    r = dg.evaluate(dg.parse(src))
    assert r == rel.scalar(True)


def test_contraction_order_independent():
    for seed in (0, 1, 2):
        d = random_diagram(seed)
        base = dg.evaluate(d)
        for sched in range(3):
            assert dg.evaluate(d, random.Random(sched)) == base


def test_bend_identity_gives_diagonal_state():
    d = dg.parse("box i: id\nin i.in\nout i.1\n")
    st = dg.as_state(d)
    r = dg.evaluate(st)
    assert r.pairs == frozenset(((), (x, x)) for x in (1, 2, 3, 4))


def test_bend_twice_round_trips():
    d = dg.parse("box d: delta\nin d.in\nout d.1 d.2\n")
    once = dg.bend_leg(d, 0)
    twice = dg.bend_leg(once, len(once.legs) - 1)
    assert dg.evaluate(twice) == dg.evaluate(d)


def test_bend_epsilon_gives_unit_state():
    d = dg.parse("box e: eps\nin e.in\n")
    st = dg.as_state(d)
    r = dg.evaluate(st)
    assert r.pairs == frozenset({((), (1,)), ((), (3,))})


def test_zone_counts_for_worked_examples():
    zd = dg.zone_decompose(worked.triangle_diagram())
    assert len(zd.zones) == 3
    assert zd.external_zones == (0, 1, 2) and not zd.internal_zones
    assert sum(len(z.legs) for z in zd.zones) == 5
    assert len(zd.links) == 3

    zd2 = dg.zone_decompose(worked.triangle_internalized_diagram())
    assert len(zd2.zones) == 3
    assert len(zd2.external_zones) == 2 and len(zd2.internal_zones) == 1
    assert sum(len(z.legs) for z in zd2.zones) == 4


def test_purely_phased_diagram_is_one_zone():
    zd = dg.zone_decompose(dg.parse(ETA_SRC))
    assert len(zd.zones) == 1 and not zd.links


def test_sigma_normalize_splits_unphased_perms():
    d = dg.parse("box e: eps+\nbox p: perm((1234))\n"
                 "wire e.1 p.in\nout p.1\n")
    nd = dg.sigma_normalize(d)
    for _, gen in nd.boxes:
        assert gen.tag != "perm" or gen.perm.is_phased \
            or gen.perm.name == "(1)(24)(3)"
    assert dg.evaluate(nd) == dg.evaluate(d)


def test_swap_boxes_dissolved():
    d = dg.parse("box a: eps+\nbox b: eps+\nbox s: swap\n"
                 "wire a.1 s.in\nwire b.1 s.in2\nout s.1 s.2\n")
    nd = dg.sigma_normalize(d)
    assert all(gen.tag != "swap" for _, gen in nd.boxes)
    assert dg.evaluate(nd) == dg.evaluate(d)


def test_internalize_normal_form_preserves_value():
    for build in (worked.triangle_internalized_diagram,
                  worked.empty_scalar_diagram):
        d = build()
        nf = dg.internalize_normal_form(d)
        assert dg.evaluate(nf) == dg.evaluate(d)


def test_internalize_no_internal_zones_is_stable():
    d = worked.triangle_diagram()
    assert dg.evaluate(dg.internalize_normal_form(d)) == dg.evaluate(d)


def test_delta_self_loop_normal_form():
    src = ("box d: delta\nbox u: eps+\nwire u.1 d.in\nwire d.1 d.2\n")
    d = dg.parse(src)
    assert dg.evaluate(dg.internalize_normal_form(d)) == dg.evaluate(d)


def test_capacity_ceiling(monkeypatch):
    monkeypatch.setenv("SPEK_MAX_CELLS", "2")
    lines = ["box u%d: eps+" % k for k in range(6)]
    lines.append("out " + " ".join("u%d.1" % k for k in range(6)))
    with pytest.raises(CapacityError):
        dg.evaluate(dg.parse("\n".join(lines) + "\n"))


def test_source_round_trip():
    for seed in range(10):
        d = random_diagram(seed)
        d2 = dg.parse(d.to_source())
        assert dg.evaluate(d2) == dg.evaluate(d)


def test_deterministic_serialization():
    d = dg.parse(ETA_SRC)
    assert dg.evaluate(d).to_text() == dg.evaluate(d).to_text()
