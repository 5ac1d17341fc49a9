"""Batch command-line entry point.

Subcommands: ring, verify, obstruction, eichler, euler, twist.
Exit code 0 means every requested check passed, 1 means a mathematical
check failed (the report carries a witness), 2 means bad input.
Output is byte-deterministic: keys are sorted and rationals are printed
as exact p/q strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from stringyk import rings as rings_mod
from stringyk.backends import point_gset
from stringyk.euler import dhvw_coefficient, stringy_euler, sym_orbifold_euler
from stringyk.frobenius import check_axioms, familiar_trace_axiom
from stringyk.groups import FiniteGroup, group_by_name
from stringyk.modelio import load_cocycle, load_linear_action, load_model
from stringyk.stringy_classes import (LinearGAction, MonodromyDatum, age,
                                      chen_hu_obstruction,
                                      eichler_matches_induced, eichler_h1,
                                      obstruction_class, rep_magic_rhs,
                                      s_class)

SCHEMA = 1


def _q(x) -> str:
    return str(Fraction(x))


def _emit(data: dict, fmt: str, table_lines) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        for line in table_lines(data):
            print(line)


def _load_group_arg(spec: str) -> FiniteGroup:
    path = Path(spec)
    if path.suffix == ".toml" or path.exists():
        from stringyk.modelio import _load_toml, load_group
        return load_group(_load_toml(spec))
    return group_by_name(spec)


def _parse_elements(G: FiniteGroup, text: str) -> list[int]:
    out = []
    names = {nm: i for i, nm in enumerate(G.element_names)}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token in names:
            out.append(names[token])
        else:
            try:
                idx = int(token)
            except ValueError:
                raise ValueError(f"unknown element {token!r}; names: "
                                 f"{', '.join(G.element_names)}")
            if not 0 <= idx < G.order:
                raise ValueError(f"element index {idx} out of range")
            out.append(idx)
    return out


def _ring_descriptor(ring) -> dict:
    A = ring.algebra
    G = ring.group
    names = G.element_names
    constants = []
    for m1 in G.elements():
        for m2 in G.elements():
            m12 = G.table[m1][m2]
            for i, li in enumerate(A.sectors[m1]):
                for j, lj in enumerate(A.sectors[m2]):
                    vec = A.product[(m1, m2)][i][j]
                    result = {A.sectors[m12][k]: _q(c)
                              for k, c in enumerate(vec) if c}
                    if result:
                        constants.append({
                            "sectors": [names[m1], names[m2]],
                            "left": li, "right": lj,
                            "target": names[m12], "result": result})
    desc = {
        "sectors": {names[m]: list(A.sectors[m]) for m in G.elements()},
        "gradings": {names[m]: [_q(d) for d in ring.grading[m]]
                     for m in G.elements()},
        "structure_constants": constants,
    }
    if A.pairing is not None:
        desc["pairing"] = {
            names[m]: [[_q(x) for x in row] for row in A.pairing[m]]
            for m in G.elements()}
    if A.trace is not None:
        desc["trace"] = {
            f"({names[a]},{names[b]})": [_q(x) for x in A.trace[(a, b)]]
            for a in G.elements() for b in G.elements()
            if any(A.trace[(a, b)])}
    return desc


def cmd_ring(args) -> int:
    model = load_model(args.model)
    chow = rings_mod.build_stringy_chow(model)
    kk = rings_mod.build_stringy_k(model)
    chow_desc = _ring_descriptor(chow)
    k_desc = _ring_descriptor(kk)
    chow_desc["axiom_report"] = check_axioms(chow.algebra).entries
    k_desc["axiom_report"] = check_axioms(kk.algebra).entries
    cch = rings_mod.verify_stringy_chern(kk, chow)
    data = {
        "schema": SCHEMA,
        "model": model.name,
        "rings": {"chow": chow_desc, "k": k_desc},
        "cch_report": {k: v for k, v in cch.items() if k != "witnesses"},
    }

    def table_lines(d):
        for kind in ("chow", "k"):
            yield f"== {kind} ring of {d['model']} =="
            for c in d["rings"][kind]["structure_constants"]:
                terms = " + ".join(
                    (f"{v}*{k}" if v != "1" else k)
                    for k, v in sorted(c["result"].items()))
                yield (f"  [{c['sectors'][0]}]{c['left']} * "
                       f"[{c['sectors'][1]}]{c['right']} = "
                       f"[{c['target']}] {terms}")
            yield "  gradings:"
            for sec, degs in sorted(d["rings"][kind]["gradings"].items()):
                yield f"    {sec}: {', '.join(degs)}"
    _emit(data, args.format, table_lines)
    return 0


def cmd_verify(args) -> int:
    model = load_model(args.model)
    suites = args.suite
    checks: dict[str, bool] = {}
    data: dict = {"schema": SCHEMA, "model": model.name}
    chow = rings_mod.build_stringy_chow(model)
    kk = rings_mod.build_stringy_k(model)
    if suites in ("all", "axioms"):
        repA, repK = check_axioms(chow.algebra), check_axioms(kk.algebra)
        checks["chow_axioms"] = repA.passed
        checks["k_axioms"] = repK.passed
        data["axiom_report"] = {"chow": repA.entries, "k": repK.entries}
        checks["untwisted_sector_ordinary"] = (
            rings_mod.untwisted_sector_matches_model(chow)
            and rings_mod.untwisted_sector_matches_model(kk))
        if model.proper:
            checks["traces_are_canonical"] = (
                chow.algebra.trace == chow.algebra.canonical_trace()
                and kk.algebra.trace == kk.algebra.canonical_trace())
            okA, witA = familiar_trace_axiom(chow.algebra)
            okK, witK = familiar_trace_axiom(kk.algebra)
            checks["familiar_trace_axiom"] = okA and okK
        grad = rings_mod.grading_report(chow)
        checks["grading"] = grad["passed"]
        data["grading_report"] = {k: v for k, v in grad.items()
                                  if k != "witnesses"} | (
            {"witnesses": grad["witnesses"]} if not grad["passed"] else {})
    if suites in ("all", "cch"):
        cch = rings_mod.verify_stringy_chern(kk, chow)
        checks["cch_homomorphism"] = cch["homomorphism"]
        checks["cch_unit"] = cch["unit"]
        checks["cch_equivariance"] = cch["equivariance"]
        if cch["trace_preserved"] is not None:
            checks["cch_trace_preserved"] = cch["trace_preserved"]
        data["cch_report"] = {k: v for k, v in cch.items() if k != "witnesses"}
        if not cch["allometric"]:
            data["cch_report"]["witnesses"] = cch["witnesses"]
    if suites in ("all", "obstruction"):
        if model._linear_action is not None:
            result = _obstruction_data(model._linear_action)
            checks["obstruction_honesty"] = result["all_honest"]
            data["obstruction"] = result
        else:
            # table/gset models: every product pair must certify its
            # obstruction class as an honest combination
            from stringyk.geometry import UncertifiedClassError
            ok = True
            for m1 in model.group.elements():
                for m2 in model.group.elements():
                    try:
                        model.obstruction_c_top(m1, m2)
                    except UncertifiedClassError:
                        ok = False
            checks["obstruction_certified"] = ok
    data["checks"] = checks
    data["passed"] = all(checks.values())

    def table_lines(d):
        yield f"== verification of {d['model']} =="
        for name, ok in sorted(d["checks"].items()):
            yield f"  {name:32s} {'pass' if ok else 'FAIL'}"
        yield f"  overall: {'pass' if d['passed'] else 'FAIL'}"
    _emit(data, args.format, table_lines)
    return 0 if data["passed"] else 1


def _obstruction_data(action: LinearGAction) -> dict:
    from stringyk.characters import (cyclic_decompose, group_view,
                                     ClassFunction)
    from stringyk.groups import Subgroup
    G = action.group
    names = G.element_names
    ages = {names[m]: _q(age(action, m)) for m in G.elements()}
    s_classes = {}
    for m in G.elements():
        s = s_class(action, m)
        s_classes[names[m]] = {
            str(k): {"weight": _q(w), "dim": d}
            for k, (w, d) in sorted(s.weights.items()) if w and d}
    triples = []
    all_honest = True
    for m1 in G.elements():
        for m2 in G.elements():
            m3 = G.inv[G.table[m1][m2]]
            R = obstruction_class(action, (m1, m2, m3))
            entry: dict = {"triple": [names[m1], names[m2], names[m3]],
                           "rank": _q(R.rank())}
            honest = R.rank().denominator == 1 and R.rank() >= 0
            mults_ok = True
            Hp = Subgroup(G, R.members)
            Hpg, pmem = group_view(Hp)
            pos = {g: i for i, g in enumerate(pmem)}
            for mi in {m1, m2, m3}:
                if mi == 0:
                    continue
                Hi = G.subgroup_generated([mi])
                Hig, mem = group_view(Hi)
                chi = ClassFunction.from_function(
                    Hig, lambda h: R.char(pos[mem[h]]))
                ms = cyclic_decompose(chi, mem.index(mi))
                if any(x.denominator != 1 or x < 0 for x in ms):
                    mults_ok = False
                entry.setdefault("cyclic_multiplicities", {})[names[mi]] = \
                    [_q(x) for x in ms]
            entry["honest"] = honest and mults_ok
            if Hpg.is_abelian():
                selected, char = chen_hu_obstruction(action, (m1, m2, m3))
                entry["chen_hu_labels"] = [
                    {"k": list(lab), "dim": dim} for lab, dim in selected]
                entry["chen_hu_matches"] = char == R.char
                if not entry["chen_hu_matches"]:
                    entry["honest"] = False
            all_honest = all_honest and entry["honest"]
            triples.append(entry)
    return {"ages": ages, "s_classes": s_classes, "triples": triples,
            "all_honest": all_honest}


def cmd_obstruction(args) -> int:
    action = load_linear_action(args.model)
    data = {"schema": SCHEMA, "action": action.name or str(args.model)}
    data.update(_obstruction_data(action))
    data["passed"] = data["all_honest"]

    def table_lines(d):
        yield f"== obstruction classes for {d['action']} =="
        yield "  ages: " + ", ".join(f"{k}={v}" for k, v in sorted(d["ages"].items()))
        for t in d["triples"]:
            status = "ok" if t["honest"] else "FAIL"
            yield (f"  R({','.join(t['triple'])}): rank {t['rank']} [{status}]")
        yield f"  overall: {'pass' if d['passed'] else 'FAIL'}"
    _emit(data, args.format, table_lines)
    return 0 if data["passed"] else 1


def cmd_eichler(args) -> int:
    if args.model:
        from stringyk.modelio import load_monodromy_datum
        datum = load_monodromy_datum(args.model)
        G = datum.group
        monodromy = list(datum.monodromies)
        args = argparse.Namespace(**{**vars(args), "genus": datum.genus})
    else:
        if not args.group:
            raise ValueError("eichler needs --group (with --monodromy) or --model")
        G = _load_group_arg(args.group)
        monodromy = _parse_elements(G, args.monodromy) if args.monodromy else []
        subgroup = None
        if args.subgroup:
            subgroup = G.subgroup_generated(_parse_elements(G, args.subgroup))
        datum = MonodromyDatum(G, args.genus, monodromy, subgroup=subgroup)
    lhs = eichler_h1(datum)
    rhs = rep_magic_rhs(datum)
    report = eichler_matches_induced(datum)
    reps = G.class_representatives()
    data = {
        "schema": SCHEMA,
        "group": G.name,
        "genus": args.genus,
        "monodromy": [G.element_names[m] for m in monodromy],
        "equal": report.holds,
        "character": {G.element_names[r]: str(lhs.values[i])
                      for i, r in enumerate(reps)},
    }
    if not report.holds:
        data["differences"] = report.differences
        data["induced_side"] = {G.element_names[r]: str(rhs.values[i])
                                for i, r in enumerate(reps)}

    def table_lines(d):
        yield (f"== cover character over {d['group']}, genus {d['genus']}, "
               f"monodromy ({', '.join(d['monodromy'])}) ==")
        for k, v in sorted(d["character"].items()):
            yield f"  tr at {k}: {v}"
        yield f"  fixed-point side == induced side: {d['equal']}"
    _emit(data, args.format, table_lines)
    return 0 if report.holds else 1


def cmd_euler(args) -> int:
    if args.model:
        model = load_model(args.model)
        rep = stringy_euler(model)
        data = {"schema": SCHEMA, "model": model.name,
                "stringy": _q(rep.total)}
        if model.group.order <= 24:
            data["pairs"] = len(rep.pair_values)
        ok = True
    elif args.group:
        G = _load_group_arg(args.group)
        rep = stringy_euler(point_gset(G))
        classes = len(G.conjugacy_classes())
        ok = rep.total == classes
        data = {"schema": SCHEMA, "group": G.name, "stringy": _q(rep.total),
                "conjugacy_classes": classes, "equal": ok}
    else:
        if args.chi is None or args.n is None:
            raise ValueError("euler needs --model, --group, or --chi with --n")
        s = sym_orbifold_euler(args.chi, args.n)
        d = dhvw_coefficient(args.chi, args.n)
        ok = s == d
        data = {"schema": SCHEMA, "n": args.n, "chi": args.chi,
                "stringy": _q(s), "dhvw": _q(d), "equal": ok}

    def table_lines(d):
        for k, v in sorted(d.items()):
            if k != "schema":
                yield f"  {k}: {v}"
    _emit(data, args.format, table_lines)
    return 0 if ok else 1


def cmd_twist(args) -> int:
    model = load_model(args.model)
    chow = rings_mod.build_stringy_chow(model)
    kk = rings_mod.build_stringy_k(model)
    if args.cocycle == "sign":
        from stringyk.torsion import symmetric_sign_cocycle
        from stringyk.groups import TwoCocycle
        if model.group.order == 2:
            _, alpha_sym = symmetric_sign_cocycle(2)
            alpha = TwoCocycle(model.group, alpha_sym.values)
        else:
            raise ValueError("built-in sign cocycle is for order-2 groups; "
                             "pass a cocycle file")
    else:
        alpha = load_cocycle(args.cocycle, model.group)
    tchow = rings_mod.apply_twist(chow, alpha)
    tk = rings_mod.apply_twist(kk, alpha)
    repA, repK = check_axioms(tchow.algebra), check_axioms(tk.algebra)
    cch = rings_mod.verify_stringy_chern(tk, tchow)
    flipped = []
    G = model.group
    for m1 in G.elements():
        for m2 in G.elements():
            if chow.algebra.product[(m1, m2)] != tchow.algebra.product[(m1, m2)]:
                flipped.append([G.element_names[m1], G.element_names[m2]])
    data = {
        "schema": SCHEMA,
        "model": model.name,
        "axioms_pass": repA.passed and repK.passed,
        "cch_homomorphism": cch["homomorphism"],
        "cch_trace_preserved": cch["trace_preserved"],
        "changed_sector_pairs": flipped,
    }
    ok = data["axioms_pass"] and cch["homomorphism"] and \
        cch["trace_preserved"] in (True, None)
    data["passed"] = ok

    def table_lines(d):
        yield f"== twist of {d['model']} =="
        for k in ("axioms_pass", "cch_homomorphism", "changed_sector_pairs"):
            yield f"  {k}: {d[k]}"
        yield f"  overall: {'pass' if d['passed'] else 'FAIL'}"
    _emit(data, args.format, table_lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stringyk",
        description="Exact stringy K-theory / stringy cohomology engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("ring", help="build the stringy rings of a model")
    p.add_argument("--model", required=True)
    common(p)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("verify", help="run the axiom and theorem suite")
    p.add_argument("--model", required=True)
    p.add_argument("--suite", choices=("all", "axioms", "cch", "obstruction"),
                   default="all")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("obstruction",
                       help="ages, S and R classes of a linear action")
    p.add_argument("--model", required=True)
    common(p)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("eichler", help="cover character identity")
    p.add_argument("--group", help="group name or TOML path")
    p.add_argument("--monodromy", default="", help="comma list of elements")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--subgroup", default="",
                   help="comma list generating the cover subgroup")
    p.add_argument("--model", help="TOML file with [group] and [monodromy]")
    common(p)
    p.set_defaults(func=cmd_eichler)

    p = sub.add_parser("euler", help="stringy Euler characteristics")
    p.add_argument("--model")
    p.add_argument("--group")
    p.add_argument("--chi", type=int)
    p.add_argument("--n", type=int)
    common(p)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("twist", help="apply a discrete torsion cocycle")
    p.add_argument("--model", required=True)
    p.add_argument("--cocycle", required=True,
                   help="cocycle TOML path, or 'sign' for order-2 groups")
    common(p)
    p.set_defaults(func=cmd_twist)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
