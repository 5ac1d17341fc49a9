"""Model file loading: TOML in, validated GeometricModel (or action data) out.

A model file declares its kind in [model] type = "table" | "linear" | "gset".
Linear action files carry generator matrices with entries in the cyclotomic
literal grammar; cocycle files carry a rational |G| x |G| table.
"""

from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path
from typing import Union

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from stringyk.backends import build_table_model, gset_model, linear_model
from stringyk.characters import MatrixRep
from stringyk.cyclotomic import parse_cyclo
from stringyk.geometry import GeometricModel
from stringyk.groups import FiniteGroup, TwoCocycle, group_from_dict
from stringyk.stringy_classes import LinearGAction

CATALOG_ENV = "STRINGY_CATALOG_DIR"


def catalog_dir() -> Path:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "models"


def resolve_model_path(spec: Union[str, Path]) -> Path:
    """A model path as given, or looked up in the model catalog directory."""
    p = Path(spec)
    if p.exists():
        return p
    candidate = catalog_dir() / p.name
    if candidate.exists():
        return candidate
    candidate = catalog_dir() / f"{spec}.toml"
    if candidate.exists():
        return candidate
    raise FileNotFoundError(f"no model file {spec!r} (catalog: {catalog_dir()})")


def _load_toml(path: Union[str, Path]) -> dict:
    with open(resolve_model_path(path), "rb") as fh:
        return tomllib.load(fh)


def load_group(data: dict) -> FiniteGroup:
    return group_from_dict(data.get("group", {}))


def linear_action_from_dict(data: dict) -> LinearGAction:
    G = load_group(data)
    rep_data = data.get("representation", data)
    gens = [int(x) for x in rep_data["generators"]]
    mats = []
    for mat in rep_data["matrices"]:
        mats.append([[parse_cyclo(str(entry)) for entry in row] for row in mat])
    rep = MatrixRep.from_generators(G, gens, mats)
    name = data.get("model", {}).get("name", "")
    return LinearGAction(G, rep, name=name)


def load_model(path: Union[str, Path]) -> GeometricModel:
    data = _load_toml(path)
    kind = data.get("model", {}).get("type", "table")
    name = data.get("model", {}).get("name", Path(path).stem)
    if kind == "table":
        G = load_group(data)
        spec = dict(data)
        spec.update(data.get("model", {}))
        return build_table_model(G, spec, name=name)
    if kind == "linear":
        return linear_model(linear_action_from_dict(data), name=name)
    if kind == "gset":
        G = load_group(data)
        gdata = data.get("gset", data)
        perms = [tuple(int(x) for x in p)
                 for p in gdata["action_permutations"]]
        return gset_model(G, perms, name=name)
    raise ValueError(f"unknown model type {kind!r}")


def load_linear_action(path: Union[str, Path]) -> LinearGAction:
    data = _load_toml(path)
    if data.get("model", {}).get("type", "linear") != "linear":
        raise ValueError("not a linear action file")
    return linear_action_from_dict(data)


def load_cocycle(path: Union[str, Path], group: FiniteGroup) -> TwoCocycle:
    data = _load_toml(path)
    table = data["alpha"]
    values = [[Fraction(str(x)) for x in row] for row in table]
    return TwoCocycle(group, values)


def load_monodromy(data: dict, group: FiniteGroup):
    """Parse genus and monodromy element indices from a mapping."""
    from stringyk.stringy_classes import MonodromyDatum
    genus = int(data.get("genus", 0))
    monodromy = [int(x) for x in data.get("monodromy", [])]
    subgroup = None
    if "subgroup" in data:
        subgroup = group.subgroup_generated([int(x) for x in data["subgroup"]])
    return MonodromyDatum(group, genus, monodromy, subgroup=subgroup)


def load_monodromy_datum(path: Union[str, Path]):
    """A branched-cover datum from a TOML file with [group] and [monodromy]."""
    data = _load_toml(path)
    if "monodromy" not in data:
        raise ValueError("file has no [monodromy] section")
    group = load_group(data)
    return load_monodromy(data["monodromy"], group)
