"""Serialization of category and stack data (schemas catlat-cat/1, catlat-stack/1).

Complex numbers are stored as (re, im) pairs of decimal strings with 36
significant digits, which preserves surd-valued entries well beyond double
precision.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import FusionCategoryData, ModularData, ModuleStack, SchemaError

CAT_SCHEMA = "catlat-cat/1"
STACK_SCHEMA = "catlat-stack/1"


def _cstr(z) -> list:
    z = complex(z)
    return [format(z.real, ".36g"), format(z.imag, ".36g")]


def _cval(pair) -> complex:
    try:
        return complex(float(pair[0]), float(pair[1]))
    except (TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"bad complex entry {pair!r}") from exc


def category_to_doc(cat: FusionCategoryData) -> dict:
    doc = {
        "schema": CAT_SCHEMA,
        "name": cat.name,
        "objects": list(cat.objects),
        "dual": dict(cat.dual),
        "fusion": [[a, b, c, n] for (a, b, c), n in sorted(cat.fusion.items())],
        "fsymbols": [],
        "qdim": {a: format(float(d), ".36g") for a, d in cat.qdim.items()},
        "fs": {a: _cstr(k) for a, k in cat.fs_indicator.items()},
    }
    for key in sorted(cat.assoc):
        a, b, c, d = key
        blk = cat.assoc[key]
        rows = cat.row_basis(a, b, c, d)
        cols = cat.col_basis(a, b, c, d)
        for i, (e, m, n) in enumerate(rows):
            for j, (f, jj, kk) in enumerate(cols):
                z = blk[i, j]
                if z != 0:
                    doc["fsymbols"].append([a, b, c, d, e, f, m, n, jj, kk] + _cstr(z))
    if cat.modular is not None:
        doc["modular"] = {
            "S": [[_cstr(z) for z in row] for row in cat.modular.s],
            "theta": {a: _cstr(t) for a, t in cat.modular.theta.items()},
        }
    return doc


def category_from_doc(doc: dict, validate: bool = True) -> FusionCategoryData:
    if not isinstance(doc, dict) or doc.get("schema") != CAT_SCHEMA:
        raise SchemaError(f"expected schema {CAT_SCHEMA}")
    try:
        objects = tuple(doc["objects"])
        dual = dict(doc["dual"])
        fusion = {(a, b, c): int(n) for a, b, c, n in doc["fusion"] if int(n)}
        qdim = {a: float(v) for a, v in doc["qdim"].items()}
        fs = {a: _cval(v) for a, v in doc["fs"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed category document: {exc}") from exc
    cat = FusionCategoryData(
        name=doc.get("name", "unnamed"),
        objects=objects,
        dual=dual,
        fusion=fusion,
        qdim=qdim,
        fs_indicator=fs,
    )
    blocks: dict = {}
    for entry in doc.get("fsymbols", []):
        a, b, c, d, e, f, m, n, jj, kk = entry[:10]
        z = _cval(entry[10:12])
        key = (a, b, c, d)
        if key not in blocks:
            rows = cat.row_basis(a, b, c, d)
            cols = cat.col_basis(a, b, c, d)
            if not rows:
                raise SchemaError(f"F-symbol entry at inadmissible block {key}")
            blocks[key] = (
                np.zeros((len(rows), len(cols)), dtype=complex),
                {r: i for i, r in enumerate(rows)},
                {cc: i for i, cc in enumerate(cols)},
            )
        mat, ridx, cidx = blocks[key]
        try:
            mat[ridx[(e, int(m), int(n))], cidx[(f, int(jj), int(kk))]] = z
        except KeyError as exc:
            raise SchemaError(f"F-symbol entry outside block basis: {entry[:10]}") from exc
    cat.assoc = {k: v[0] for k, v in blocks.items()}
    if "modular" in doc:
        s = np.array([[_cval(z) for z in row] for row in doc["modular"]["S"]])
        theta = {a: _cval(t) for a, t in doc["modular"]["theta"].items()}
        cat.modular = ModularData(objects=objects, s=s, theta=theta)
    if validate:
        cat.validate()
    return cat


def _family_records(stack, table, bases):
    out = []
    for key in sorted(table):
        blk = table[key]
        rows, cols = bases(*key)
        for i, (r0, r1, r2) in enumerate(rows):
            for j, (c0, c1, c2) in enumerate(cols):
                z = blk[i, j]
                if z != 0:
                    out.append(list(key) + [r0, r1, r2, c0, c1, c2] + _cstr(z))
    return out


def stack_to_doc(stack: ModuleStack) -> dict:
    return {
        "schema": STACK_SCHEMA,
        "name": stack.name,
        "cat_c": category_to_doc(stack.cat_c),
        "cat_d": category_to_doc(stack.cat_d),
        "module_objects": list(stack.module_objects),
        "right_action": [[A, al, B, n] for (A, al, B), n in sorted(stack.right_action.items()) if n],
        "left_action": [[a, A, B, n] for (a, A, B), n in sorted(stack.left_action.items()) if n],
        "module_qdim": {A: format(float(d), ".36g") for A, d in stack.module_qdim.items()},
        "f1": _family_records(stack, stack.f1, stack.f1_bases),
        "f2": _family_records(stack, stack.f2, stack.f2_bases),
        "f3": _family_records(stack, stack.f3, stack.f3_bases),
    }


def stack_from_doc(doc: dict, validate: bool = True) -> ModuleStack:
    if not isinstance(doc, dict) or doc.get("schema") != STACK_SCHEMA:
        raise SchemaError(f"expected schema {STACK_SCHEMA}")
    cat_c = category_from_doc(doc["cat_c"], validate=validate)
    cat_d = category_from_doc(doc["cat_d"], validate=validate)
    stack = ModuleStack(
        name=doc.get("name", "unnamed"),
        cat_c=cat_c,
        cat_d=cat_d,
        module_objects=tuple(doc["module_objects"]),
        right_action={(A, al, B): int(n) for A, al, B, n in doc["right_action"]},
        left_action={(a, A, B): int(n) for a, A, B, n in doc["left_action"]},
        module_qdim={A: float(v) for A, v in doc["module_qdim"].items()},
    )
    for fam, bases in (("f1", stack.f1_bases), ("f2", stack.f2_bases), ("f3", stack.f3_bases)):
        table: dict = {}
        for entry in doc.get(fam, []):
            key = tuple(entry[:4])
            r = (entry[4], int(entry[5]), int(entry[6]))
            cc = (entry[7], int(entry[8]), int(entry[9]))
            z = _cval(entry[10:12])
            if key not in table:
                rows, cols = bases(*key)
                if not rows:
                    raise SchemaError(f"{fam} entry at inadmissible block {key}")
                table[key] = (
                    np.zeros((len(rows), len(cols)), dtype=complex),
                    {rr: i for i, rr in enumerate(rows)},
                    {c2: i for i, c2 in enumerate(cols)},
                )
            mat, ridx, cidx = table[key]
            mat[ridx[r], cidx[cc]] = z
        setattr(stack, fam, {k: v[0] for k, v in table.items()})
    if validate:
        stack.check_compatibility()
        stack.check_module_qdim()
    return stack


def load_category(source, validate: bool = True) -> FusionCategoryData:
    """Load a category from a document dict or a JSON file path."""
    if isinstance(source, dict):
        return category_from_doc(source, validate=validate)
    with open(source) as fh:
        return category_from_doc(json.load(fh), validate=validate)


def load_stack(source, validate: bool = True) -> ModuleStack:
    if isinstance(source, dict):
        return stack_from_doc(source, validate=validate)
    with open(source) as fh:
        return stack_from_doc(json.load(fh), validate=validate)


def save_category(cat: FusionCategoryData, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(category_to_doc(cat), indent=1, sort_keys=True))
    return path


def save_stack(stack: ModuleStack, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(stack_to_doc(stack), indent=1, sort_keys=True))
    return path
