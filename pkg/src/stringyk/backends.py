"""Concrete geometric backends: finite G-sets, linear actions on affine
space, and fully explicit table models.

G-set models have zero tangent data and are proper (integration = point
count).  Linear models put Q in degree zero on every fixed subspace, carry
exact eigen data from the group action matrices, and are flagged
non-proper.  Table models supply everything explicitly and are validated
(projection formula, ring-map pullbacks, action compatibility, sigma
involution, eigen consistency) before use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from stringyk import linalg
from stringyk.geometry import Atom, Combo, GeometricModel, GradedAlgebra
from stringyk.groups import FiniteGroup
from stringyk.stringy_classes import LinearGAction


def _all_pair_keys(model: GeometricModel) -> list[tuple[int, ...]]:
    G = model.group
    keys = {model.locus_key([])}
    for a in G.elements():
        keys.add(model.locus_key([a]))
        for b in G.elements():
            keys.add(model.locus_key([a, b]))
    return sorted(keys)


def gset_model(G: FiniteGroup, action_perms: Sequence[Sequence[int]],
               name: str = "") -> GeometricModel:
    """A finite G-set: one permutation of the point set per group element."""
    if len(action_perms) != G.order:
        raise ValueError("need one permutation per group element")
    perms = [tuple(p) for p in action_perms]
    npts = len(perms[0]) if perms else 0
    for g in G.elements():
        for h in G.elements():
            gh = G.table[g][h]
            if tuple(perms[g][perms[h][p]] for p in range(npts)) != perms[gh]:
                raise ValueError(f"not a G-action: fails at pair ({g},{h})")
    model = GeometricModel(G, name=name or "gset", proper=True,
                           grading_mode="chow", dim_x=0, trivial_chern=True)
    keys = _all_pair_keys(model)
    fixed: dict[tuple[int, ...], list[int]] = {}
    for key in keys:
        pts = [p for p in range(npts)
               if all(perms[g][p] == p for g in key)]
        fixed[key] = pts
        n = len(pts)
        labels = [f"p{p}" for p in pts]
        ident = linalg.identity_matrix(n)
        struct = [[tuple(Fraction(1) if (k == i and i == j) else Fraction(0)
                         for k in range(n)) for j in range(n)] for i in range(n)]
        model.loci[key] = GradedAlgebra(
            labels, [0] * n, struct, [Fraction(1)] * n,
            integration=[Fraction(1)] * n,
            components=labels, component_dims={l: 0 for l in labels})
        model.tangent_combo[key] = Combo()
    for k1 in keys:
        s1 = set(fixed[k1])
        for k2 in keys:
            if k1 == k2 or not set(k1) <= set(k2):
                continue
            pts1, pts2 = fixed[k1], fixed[k2]
            pull = [[Fraction(1) if p2 == p1 else Fraction(0) for p1 in pts1]
                    for p2 in pts2]
            push = [[Fraction(1) if p1 == p2 else Fraction(0) for p2 in pts2]
                    for p1 in pts1]
            model.pullbacks[(k1, k2)] = pull
            model.pushforwards[(k1, k2)] = push
    for g in G.elements():
        if g == 0:
            continue
        for key in keys:
            target = model.locus_key([G.conjugate(x, g) for x in key])
            src, tgt = fixed[key], fixed[target]
            mat = [[Fraction(1) if perms[g][p] == q else Fraction(0)
                    for p in src] for q in tgt]
            model.rho[(g, key)] = mat
    for m in G.elements():
        if m != 0:
            model.eigen[m] = {}
    model.validate()
    return model


def point_gset(G: FiniteGroup) -> GeometricModel:
    """The one-point G-set [pt/G]."""
    return gset_model(G, [(0,)] * G.order, name=f"pt/{G.name}")


def regular_gset(G: FiniteGroup) -> GeometricModel:
    """G acting on itself by left translation."""
    perms = [tuple(G.table[g][h] for h in G.elements()) for g in G.elements()]
    return gset_model(G, perms, name=f"{G.name}-regular")


def linear_model(action: LinearGAction, name: str = "") -> GeometricModel:
    """Affine space with a linear action: Chow rings are Q in degree 0,
    pushforwards vanish across positive codimension, no integration."""
    G = action.group
    model = GeometricModel(G, name=name or action.name or "linear",
                           proper=False, grading_mode="chow",
                           dim_x=action.dim, trivial_chern=True)
    model._linear_action = action
    keys = _all_pair_keys(model)
    fix_dim: dict[tuple[int, ...], int] = {}
    for key in keys:
        d = len(action.fixed_subspace(key))
        fix_dim[key] = d
        model.loci[key] = GradedAlgebra(
            ["1"], [0], [[(Fraction(1),)]], [Fraction(1)],
            integration=None, components=["U"], component_dims={"U": 0})
        atom = Atom(f"T@{'.'.join(map(str, key))}", d, key, (Fraction(1),))
        model.atoms[atom.name] = atom
        model.tangent_combo[key] = Combo({atom.name: Fraction(1)}) if d else Combo()
    for k1 in keys:
        for k2 in keys:
            if k1 == k2 or not set(k1) <= set(k2):
                continue
            model.pullbacks[(k1, k2)] = [[Fraction(1)]]
            same = Fraction(1) if fix_dim[k1] == fix_dim[k2] else Fraction(0)
            model.pushforwards[(k1, k2)] = [[same]]
    for g in G.elements():
        if g == 0:
            continue
        for key in keys:
            model.rho[(g, key)] = [[Fraction(1)]]
    for m in G.elements():
        if m == 0:
            continue
        dec = action.eigen_decompose(m)
        key = model.sector_key(m)
        pieces: dict[int, Combo] = {}
        for k in range(dec.order):
            dim = dec.dims[k]
            if not dim:
                continue
            aname = f"W@{m}:{k}"
            if aname not in model.atoms:
                model.atoms[aname] = Atom(aname, dim, key, (Fraction(1),))
            pieces[k] = Combo({aname: Fraction(1)})
        model.eigen[m] = pieces
    model.validate()
    return model


# -- table models ------------------------------------------------------------------


def build_table_model(G: FiniteGroup, spec: dict, name: str = "") -> GeometricModel:
    """Assemble and validate a table model from parsed dictionary data.

    See the shipped model files for the schema: loci with bases, degrees,
    components, sparse products, integration; maps with pullback and
    pushforward matrices; per-element action matrices; optional sigma
    matrices; named atoms with Chern data; tangent combos; eigen data.
    """
    model = GeometricModel(
        G, name=name or spec.get("name", "table"),
        proper=bool(spec.get("proper", True)),
        grading_mode=spec.get("grading", "chow"),
        dim_x=int(spec.get("dim", 0)),
        trivial_chern=False)

    def parse_key(elements) -> tuple[int, ...]:
        return model.locus_key([int(x) for x in elements])

    frac = Fraction

    def fracs(seq) -> list[Fraction]:
        return [Fraction(str(x)) for x in seq]

    loci_specs = spec.get("locus", [])
    for entry in loci_specs:
        key = parse_key(entry["elements"])
        labels = list(entry["basis"])
        index = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        degrees = fracs(entry["degrees"])
        components = list(entry.get("components", ["U"] * n))
        comp_dims = {str(k): Fraction(str(v))
                     for k, v in entry.get("component_dims", {}).items()}
        if not comp_dims:
            comp_dims = None
        struct = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        unit_label = entry.get("unit")
        unit = [Fraction(0)] * n
        unit_index = None
        if isinstance(unit_label, str):
            unit_index = index[unit_label]
            unit[unit_index] = Fraction(1)
        else:
            unit = fracs(unit_label)
        for prod in entry.get("products", []):
            i, j = index[prod["left"]], index[prod["right"]]
            vec = [Fraction(0)] * n
            for lbl, c in prod["result"].items():
                vec[index[lbl]] = Fraction(str(c))
            struct[i][j] = vec
            struct[j][i] = vec
        if unit_index is not None:
            # rows against a basis-vector unit are implied
            for i in range(n):
                struct[unit_index][i] = [Fraction(1) if k == i else Fraction(0)
                                         for k in range(n)]
                struct[i][unit_index] = struct[unit_index][i]
        integration = entry.get("integration")
        model.loci[key] = GradedAlgebra(
            labels, degrees, struct, unit,
            integration=fracs(integration) if integration is not None else None,
            components=components, component_dims=comp_dims)

    for entry in spec.get("map", []):
        k1 = parse_key(entry["from"])
        k2 = parse_key(entry["to"])
        if not set(k1) <= set(k2):
            raise ValueError(f"map {k1}->{k2} is not a nested pair")
        model.pullbacks[(k1, k2)] = [fracs(row) for row in entry["pullback"]]
        model.pushforwards[(k1, k2)] = [fracs(row) for row in entry["pushforward"]]

    for entry in spec.get("action", []):
        g = int(entry["gamma"])
        key = parse_key(entry["locus"])
        model.rho[(g, key)] = [fracs(row) for row in entry["matrix"]]

    for entry in spec.get("sigma", []):
        m = int(entry["sector"])
        model.sigma[m] = [fracs(row) for row in entry["matrix"]]

    for entry in spec.get("atom", []):
        home = parse_key(entry["locus"])
        atom = Atom(entry["name"], int(entry["rank"]), home,
                    tuple(fracs(entry["chern"])))
        nalg = model.loci[home].rank
        if len(atom.chern) != nalg:
            raise ValueError(f"atom {atom.name}: chern vector has wrong length")
        alg = model.loci[home]
        if alg.unit_coefficient(atom.chern) != 1:
            raise ValueError(f"atom {atom.name}: total Chern class must start at 1")
        for i, c in enumerate(atom.chern):
            if c and alg.degrees[i] > atom.rank:
                raise ValueError(
                    f"atom {atom.name}: Chern classes above the rank")
        model.atoms[atom.name] = atom

    for entry in spec.get("tangent", []):
        key = parse_key(entry["locus"])
        model.tangent_combo[key] = Combo(
            {nm: Fraction(str(v)) for nm, v in entry["combo"].items()})
    for key in model.loci:
        if key not in model.tangent_combo:
            raise ValueError(f"missing tangent data for locus {key}")

    for entry in spec.get("eigen", []):
        m = int(entry["element"])
        pieces = {}
        for kstr, combo in entry["pieces"].items():
            pieces[int(kstr)] = Combo(
                {nm: Fraction(str(v)) for nm, v in combo.items()})
        model.eigen[m] = pieces

    for entry in spec.get("obstruction_certificate", []):
        m1, m2 = int(entry["m1"]), int(entry["m2"])
        model.obstruction_certificates[(m1, m2)] = Combo(
            {nm: Fraction(str(v)) for nm, v in entry["combo"].items()})

    model.validate()
    return model
