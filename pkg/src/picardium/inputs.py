"""Declarative input files: TOML for humans, JSON for algebras and objects.

Group file::

    name = "Z4"
    size = 4
    mul = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]

``abelian = [2, 2]`` may replace ``size``/``mul``.  A cochain file carries its
group in a ``[group]`` table, ``degree``, ``order`` and a ``[values]`` table
keyed by comma separated element tuples, so ``"1,1,2" = 3`` means
zeta_order^3 at (1, 1, 2).  Elements are indices of the cochain's group; on a
subgroup they are positions in the sorted ``elements`` list.
``standard_cyclic = [n, k]`` is a shorthand for the standard 3-cocycle on Z/n.
A context file has ``[group]``, ``[psi]`` and optionally ``[pivot]``.  A
subgroup file lists ``elements`` of the ambient group; an omega file is a
cochain file whose group is the subgroup, so it needs no ``[group]`` table.
"""
from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .cohomology import (
    Cochain,
    FiniteGroup,
    InconsistentInput,
    SchemaError,
    SubgroupEmbedding,
    is_normalized_cocycle,
    standard_cyclic_cocycle,
)
from .pointed_category import CategoryContext

__all__ = [
    "ParseError",
    "SchemaError",
    "read_toml",
    "read_json",
    "digest",
    "group_from_dict",
    "cochain_from_dict",
    "context_from_dict",
    "context_to_dict",
    "load_group",
    "load_cochain",
    "load_context",
    "load_subgroup",
    "load_omega",
]


class ParseError(ValueError):
    pass


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def read_toml(path) -> dict:
    try:
        return tomllib.loads(_read(path).decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def read_json(path) -> dict:
    try:
        return json.loads(_read(path))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def digest(path) -> str:
    return "sha256:" + hashlib.sha256(_read(path)).hexdigest()


def _int(data: dict, key: str, where: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{where}: '{key}' must be an integer")
    return v


def group_from_dict(data: dict) -> FiniteGroup:
    if not isinstance(data, dict):
        raise SchemaError("group must be a table")
    name = data.get("name")
    if "abelian" in data:
        orders = data["abelian"]
        if not isinstance(orders, list) or not orders or not all(isinstance(n, int) and n >= 1 for n in orders):
            raise SchemaError("'abelian' must be a nonempty list of positive integers")
        G = FiniteGroup.abelian(*orders)
        if name:
            G.name = str(name)
        return G
    if "mul" not in data:
        raise SchemaError("group needs 'mul' (or 'abelian')")
    mul = data["mul"]
    if not isinstance(mul, list) or not all(isinstance(row, list) for row in mul):
        raise SchemaError("'mul' must be a list of rows")
    if "size" in data and _int(data, "size", "group") != len(mul):
        raise SchemaError(f"'size' is {data['size']} but the table has {len(mul)} rows")
    for row in mul:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise SchemaError("table entries must be integers")
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != len(mul)):
        raise SchemaError("'labels' must list one label per element")
    return FiniteGroup(mul, name=name, labels=labels)


def cochain_from_dict(group: FiniteGroup, data: dict, degree: int | None = None) -> Cochain:
    if "standard_cyclic" in data:
        try:
            n, k = data["standard_cyclic"]
            c = standard_cyclic_cocycle(int(n), int(k))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad standard_cyclic entry: {exc}") from None
        if c.group != group:
            raise SchemaError(f"standard_cyclic = [{n}, {k}] does not live on the given group")
        return c
    data = dict(data)
    if degree is not None:
        data.setdefault("degree", degree)
    if "order" not in data and not data.get("values"):
        data["order"] = 1
    c = Cochain.from_dict(group, data)
    if degree is not None and c.degree != degree:
        raise SchemaError(f"expected a {degree}-cochain, got degree {c.degree}")
    return c


def context_from_dict(data: dict) -> CategoryContext:
    if "group" not in data:
        raise SchemaError("context needs a [group] table")
    G = group_from_dict(data["group"])
    psi = cochain_from_dict(G, data.get("psi", {}), degree=3)
    if not is_normalized_cocycle(psi):
        raise SchemaError("psi is not a normalized 3-cocycle")
    pivot = cochain_from_dict(G, data["pivot"], degree=1) if "pivot" in data else None
    try:
        return CategoryContext(G, psi, pivot)
    except InconsistentInput as exc:
        raise SchemaError(str(exc)) from None


def context_to_dict(ctx: CategoryContext) -> dict:
    G = ctx.group
    out = {"group": {"name": G.name, "size": G.size, "mul": [list(r) for r in G.mul], "labels": list(G.labels)},
           "psi": ctx.psi.to_dict()}
    if ctx.pivot is not None:
        out["pivot"] = ctx.pivot.to_dict()
    return out


def load_group(path) -> FiniteGroup:
    data = read_toml(path)
    return group_from_dict(data.get("group", data))


def load_cochain(path) -> Cochain:
    data = read_toml(path)
    if "group" not in data:
        if "standard_cyclic" in data:
            n = int(data["standard_cyclic"][0])
            return cochain_from_dict(FiniteGroup.cyclic(n), data)
        raise SchemaError(f"{path}: cochain file needs a [group] table")
    return cochain_from_dict(group_from_dict(data["group"]), data)


def load_context(path) -> CategoryContext:
    """A context file, or a 3-cochain file read as (G, psi) with trivial pivot."""
    data = read_toml(path)
    if "psi" in data:
        return context_from_dict(data)
    psi = load_cochain(path)
    if psi.degree != 3:
        raise SchemaError(f"{path}: expected a 3-cochain")
    if not is_normalized_cocycle(psi):
        raise SchemaError("psi is not a normalized 3-cocycle")
    return CategoryContext(psi.group, psi)


def load_subgroup(path, ambient: FiniteGroup | None = None) -> SubgroupEmbedding:
    data = read_toml(path)
    if ambient is None:
        if "group" not in data:
            raise SchemaError(f"{path}: no ambient group (pass --ctx or add a [group] table)")
        ambient = group_from_dict(data["group"])
    elif "group" in data and group_from_dict(data["group"]) != ambient:
        raise SchemaError(f"{path}: [group] differs from the context's group")
    els = data.get("elements")
    if not isinstance(els, list) or not els:
        raise SchemaError(f"{path}: 'elements' must be a nonempty list")
    if not all(isinstance(x, int) and 0 <= x < ambient.size for x in els):
        raise SchemaError(f"{path}: elements must be indices of the ambient group")
    try:
        return SubgroupEmbedding.from_elements(ambient, els, name=data.get("name"))
    except (InconsistentInput, ValueError) as exc:
        raise SchemaError(f"{path}: {exc}") from None


def load_omega(path, emb: SubgroupEmbedding) -> Cochain:
    data = read_toml(path)
    return cochain_from_dict(emb.sub, data, degree=2)
