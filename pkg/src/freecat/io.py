"""Document formats: fusion specs, group tables, representation files, reports.

All documents are JSON.  Machine output is canonical (sorted keys, two-space
indent, trailing newline) so that parse -> re-emit is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .fusion import CategorySpec, Irr, SpecError, TableSpec
from .repgroups import ConcreteCategory, FiniteGroup, UnitaryRep, build_category


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _qdim_out(q) -> "str | int | float":
    if isinstance(q, Fraction):
        return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    f = float(q)
    return int(f) if f.is_integer() else f


def _qdim_in(x):
    if isinstance(x, str):
        return Fraction(x)
    return x


def spec_to_doc(spec: CategorySpec, depth: int | None = None) -> dict:
    """Serialize a (window of a) category spec to the document format.

    Fusion rows whose results leave the emitted window are dropped and the
    document is marked ``fusion_complete: false``; omitted rows otherwise
    mean the all-zero decomposition.
    """
    window = spec.irreducibles(depth)
    in_window = set(window)
    doc = {
        "name": spec.name,
        "exact": bool(spec.exact),
        "zero_cells": sorted(spec.zero_cells()),
        "units": {c: spec.unit(c).label for c in spec.zero_cells()},
        "irreducibles": [
            {
                "label": a.label,
                "source": a.source,
                "target": a.target,
                "dual": spec.dual(a).label,
                "qdim": _qdim_out(spec.qdim(a)),
            }
            for a in sorted(window)
        ],
        "fusion": [],
    }
    complete = True
    for a in sorted(window):
        for b in sorted(window):
            if a.target != b.source:
                continue
            row = spec.fusion(a, b)
            if any(c not in in_window for c in row):
                complete = False
                continue
            if row:
                doc["fusion"].append({
                    "left": a.label,
                    "right": b.label,
                    "result": {c.label: n for c, n in sorted(row.items())},
                })
    doc["fusion_complete"] = complete
    return doc


def spec_from_doc(doc: dict) -> TableSpec:
    """Load a category spec from the document format; omitted fusion rows are zero."""
    try:
        irrs = [Irr(e["label"], e["source"], e["target"]) for e in doc["irreducibles"]]
        duals = {e["label"]: e["dual"] for e in doc["irreducibles"]}
        qdims = {e["label"]: _qdim_in(e["qdim"]) for e in doc["irreducibles"]}
        table = {(row["left"], row["right"]): dict(row["result"]) for row in doc.get("fusion", [])}
        return TableSpec(
            name=doc.get("name", "spec"),
            zero_cells=doc["zero_cells"],
            irreducibles=irrs,
            units=doc["units"],
            duals=duals,
            qdims=qdims,
            table=table,
            exact=bool(doc.get("exact", False)),
        )
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed spec document: {exc}") from exc


def load_spec(path: "str | Path") -> TableSpec:
    with open(path) as fh:
        return spec_from_doc(json.load(fh))


def save_spec(spec: CategorySpec, path: "str | Path", depth: int | None = None) -> None:
    Path(path).write_text(canonical_json(spec_to_doc(spec, depth)))


# -- groups and representations ----------------------------------------------

def group_to_doc(group: FiniteGroup) -> dict:
    return {
        "name": group.name,
        "order": group.order,
        "labels": list(group.labels),
        "table": [x for row in group.table for x in row],
    }


def group_from_doc(doc: dict) -> FiniteGroup:
    try:
        n = int(doc["order"])
        flat = doc["table"]
        if len(flat) != n * n:
            raise SpecError(f"group table must have {n * n} entries, got {len(flat)}")
        table = [flat[k * n:(k + 1) * n] for k in range(n)]
        return FiniteGroup(doc["labels"], table, name=doc.get("name", "G"))
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed group document: {exc}") from exc


def reps_to_doc(reps: list[UnitaryRep]) -> dict:
    out = []
    for r in reps:
        mats = []
        for g in range(r.group.order):
            flat = r.mats[g].reshape(-1)
            mats.append([[float(z.real), float(z.imag)] for z in flat])
        out.append({"label": r.label, "dim": r.dim, "matrices": mats})
    return {"irreps": out}


def reps_from_doc(doc: dict, group: FiniteGroup) -> list[UnitaryRep]:
    try:
        out = []
        for e in doc["irreps"]:
            d = int(e["dim"])
            mats = np.empty((group.order, d, d), dtype=complex)
            if len(e["matrices"]) != group.order:
                raise SpecError(f"irrep {e['label']}: expected {group.order} matrices")
            for g, flat in enumerate(e["matrices"]):
                arr = np.array([complex(re, im) for re, im in flat])
                mats[g] = arr.reshape(d, d)
            out.append(UnitaryRep(group, e["label"], mats))
        return out
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed representation document: {exc}") from exc


def load_group_category(table_path: "str | Path", reps_path: "str | Path") -> ConcreteCategory:
    with open(table_path) as fh:
        group = group_from_doc(json.load(fh))
    with open(reps_path) as fh:
        reps = reps_from_doc(json.load(fh), group)
    return build_category(group, reps, complete=False)
