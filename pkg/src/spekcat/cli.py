"""Command line driver: eval, form, compare, enumerate, verify."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import diagrams as dg
from . import signatures as sg
from . import verification as vf
from .generators import HALFSPEK, MSPEK, SPEK, GeneratorId, resolve
from .generate import random_diagram
from .relations import CapacityError, Relation

EXIT_PARSE = 1
EXIT_CAPACITY = 2
EXIT_THEORY = 3
EXIT_MISMATCH = 4


def _read_diagram(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    try:
        return dg.parse(text)
    except dg.DiagramError as exc:
        print("%s: %s" % (path, exc), file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_eval(args):
    d = _read_diagram(args.path)
    try:
        r = dg.evaluate(d)
    except CapacityError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAPACITY
    if args.format == "jsonl":
        for a, b in sorted(r.pairs):
            print(json.dumps({"in": list(a), "out": list(b)}))
    else:
        print(r.to_text(), end="")
    return 0


def cmd_form(args):
    d = _read_diagram(args.path)
    if d.theory != SPEK:
        print("error: closed forms are defined for spek diagrams only",
              file=sys.stderr)
        return EXIT_THEORY
    try:
        form, zd = sg.state_form(d)
    except CapacityError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAPACITY
    system = sg.constraint_system(zd)
    if args.format == "jsonl":
        for sig, count in form.signatures:
            print(json.dumps({"signature": [[p, t] for p, t in sig],
                              "count": count}))
        for line in filter(None, system.to_text().splitlines()):
            print(json.dumps({"constraint": line}))
    else:
        print(form.to_text(), end="")
        for line in filter(None, system.to_text().splitlines()):
            print("constraint %s" % line)
    return 0


def _compare_one(d, label):
    truth = dg.evaluate(dg.as_state(d))
    form, _ = sg.state_form(d)
    got = form.expand()
    if got == truth:
        return True
    print("MISMATCH %s" % label)
    print("evaluated:")
    print(truth.to_text(), end="")
    print("closed form:")
    print(form.to_text(), end="")
    return False


def cmd_compare(args):
    ok = True
    try:
        if args.random:
            for k in range(args.random):
                d = random_diagram(args.seed + k, theory=args.theory)
                ok = _compare_one(d, "seed=%d" % (args.seed + k)) and ok
        for path in args.paths:
            ok = _compare_one(_read_diagram(path), path) and ok
    except CapacityError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAPACITY
    if ok:
        print("OK")
    return 0 if ok else EXIT_MISMATCH


def cmd_enumerate(args):
    if args.arity > 3:
        print("warning: arity %d enumeration may take a long time"
              % args.arity, file=sys.stderr)
    try:
        states = vf.enumerate_states(args.theory, args.arity)
    except (CapacityError, MemoryError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAPACITY
    for n in sorted(states):
        if args.format == "jsonl":
            print(json.dumps({"legs": n, "states": len(states[n])}))
        else:
            print("legs=%d states=%d" % (n, len(states[n])))
        if n == 1:
            for s in states[n]:
                row = sorted(t[0] for _, t in s.pairs)
                if args.format == "jsonl":
                    print(json.dumps({"state": row}))
                else:
                    print("  {%s}" % ",".join(str(v) for v in row))
    if args.out:
        report = vf.enumerate_closure(args.theory, min(args.arity, 2),
                                      args.steps)
        os.makedirs(args.out, exist_ok=True)
        for (m, n), hom in sorted(report.hom.items()):
            path = os.path.join(args.out, "hom_%d_%d.rel" % (m, n))
            with open(path, "w") as fh:
                for r in sorted(hom, key=lambda r: r.to_text()):
                    fh.write("# %s\n" % vf._word_text(hom[r]))
                    fh.write(r.to_text())
        print("closure report written to %s (complete=%s)"
              % (args.out, report.complete))
    return 0


def _verify_lines(suites, arity):
    lines = []

    def check(name, ok, detail=""):
        lines.append(("PASS" if ok else "FAIL", name, detail))

    if "laws" in suites:
        for theory in (SPEK, HALFSPEK):
            d = resolve(GeneratorId("delta", theory))
            e = resolve(GeneratorId("epsilon", theory))
            for law, ok in vf.check_basis_structure(d, e).items():
                check("laws.%s.%s" % (theory, law), ok)
        bad = vf.check_basis_structure(
            resolve(GeneratorId("delta", SPEK)),
            resolve(GeneratorId("bottom_dagger", MSPEK)))
        check("laws.bottom-not-counit", not bad["counit-left"])
        check("laws.ghz-delta", vf.ghz_delta_identity())
    if "kbp" in suites or "cardinality" in suites:
        spek_states = vf.enumerate_states(SPEK, arity)
        mspek_states = vf.enumerate_states(MSPEK, arity)
    if "kbp" in suites:
        for label, states in (("spek", spek_states), ("mspek", mspek_states)):
            bad = sum(1 for n in states for s in states[n]
                      if not vf.check_kbp(s).ok)
            total = sum(len(v) for v in states.values())
            check("kbp.%s" % label, bad == 0,
                  "%d/%d states balanced" % (total - bad, total))
    if "cardinality" in suites:
        cs = vf.check_mspek_cardinalities(spek_states, SPEK)
        check("cardinality.spek-exact", cs.ok and cs.spek_exact,
              str(cs.counts))
        cm = vf.check_mspek_cardinalities(mspek_states, MSPEK)
        check("cardinality.mspek-range", cm.ok, str(cm.counts))
    if "duality" in suites:
        rep = vf.check_map_state_duality(SPEK)
        check("duality.bijective", rep.bijective,
              "%d states, %d maps" % (rep.n_states, rep.n_maps))
        check("duality.identity-diagonal", rep.identity_matches_diagonal)
    return lines


def cmd_verify(args):
    suites = {"kbp", "laws", "duality", "cardinality"} \
        if args.suite == "all" else {args.suite}
    lines = _verify_lines(suites, args.arity)
    ok = True
    for status, name, detail in lines:
        ok = ok and status == "PASS"
        if args.format == "jsonl":
            print(json.dumps({"check": name, "status": status,
                              "detail": detail}))
        else:
            print(("%s %s %s" % (status, name, detail)).rstrip())
    return 0 if ok else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="spekcat",
        description="evaluate and analyse toy-theory string diagrams")
    parser.add_argument("--format", choices=["text", "jsonl"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a diagram file to a relation")
    p.add_argument("path")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("form", help="closed-form block signatures of a diagram")
    p.add_argument("path")
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("compare",
                       help="check closed form against brute force")
    p.add_argument("paths", nargs="*")
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theory", choices=[SPEK], default=SPEK)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("enumerate", help="enumerate states of a theory")
    p.add_argument("--theory", choices=[SPEK, MSPEK, HALFSPEK], default=SPEK)
    p.add_argument("--arity", type=int, default=1)
    p.add_argument("--steps", type=int, default=6)
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run consistency suites")
    p.add_argument("--suite",
                   choices=["kbp", "laws", "duality", "cardinality", "all"],
                   default="all")
    p.add_argument("--arity", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
