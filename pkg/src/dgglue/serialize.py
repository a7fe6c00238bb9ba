"""JSON records for categories, twisted complexes, bimodules and morphisms.

Scalars are written as strings ``"p/q"`` (or ``"n"``), matrices row-major,
composition as sparse ``[g, f, [[k, c], ...]]`` entries.  Every record has a
``"type"`` field; output uses sorted keys so files are stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from .dgcore import FinDGCategory
from .exactlin import Cochain, format_scalar, parse_scalar
from .glue import Bimodule, BimoduleMorphism, GluedCategory, upper_triangular
from .twcx import TwistedComplex, TwMorphism, identity


class FormatError(ValueError):
    pass


def dumps(record) -> str:
    return json.dumps(record, sort_keys=True, indent=2)


def _vec_out(v) -> list:
    return [[k, format_scalar(x)] for k, x in sorted(v.items())]


def _vec_in(items) -> dict:
    out = {}
    for k, x in items:
        out[int(k)] = parse_scalar(x)
    return out


def _need(rec, key, where):
    try:
        return rec[key]
    except (KeyError, TypeError):
        raise FormatError(f"{where}: missing field {key!r}") from None


# ---------------------------------------------------------------------------
# categories


def category_to_json(cat: FinDGCategory) -> dict:
    homs = []
    for (x, y), c in sorted(cat.homs.items()):
        diff = {}
        for n, cols in sorted(c.diff.items()):
            rows = [["0"] * len(cols) for _ in range(c.dim(n + 1))]
            for j, col in enumerate(cols):
                for i, v in col.items():
                    rows[i][j] = format_scalar(v)
            diff[str(n)] = rows
        rec = {"source": x, "target": y, "dims": {str(n): d for n, d in c.dims.items()}, "differential": diff}
        if c.labels:
            rec["labels"] = {str(n): list(ls) for n, ls in c.labels.items()}
        homs.append(rec)
    comp = []
    for (x, y, z), tables in sorted(cat.composition.items()):
        for (p, q), table in sorted(tables.items()):
            comp.append({"objects": [x, y, z], "degrees": [p, q],
                         "entries": [[g, f, _vec_out(v)] for (g, f), v in sorted(table.items())]})
    rec = {"type": "category", "name": cat.name, "objects": list(cat.objects), "homs": homs,
           "composition": comp, "units": {x: _vec_out(v) for x, v in cat.units.items()}}
    if isinstance(cat, GluedCategory):
        rec["provenance"] = {c: cat.side[c] for c in cat.objects}
    return rec


def category_from_json(rec) -> FinDGCategory:
    where = "category"
    if not isinstance(rec, dict) or rec.get("type") != "category":
        raise FormatError("expected a record of type 'category'")
    objects = _need(rec, "objects", where)
    homs = {}
    for h in _need(rec, "homs", where):
        x, y = _need(h, "source", where), _need(h, "target", where)
        dims = {int(n): int(d) for n, d in _need(h, "dims", where).items()}
        diff = {}
        for n, rows in h.get("differential", {}).items():
            n = int(n)
            if len(rows) != dims.get(n + 1, 0) or any(len(r) != dims.get(n, 0) for r in rows):
                raise FormatError(f"differential of Hom({x},{y}) in degree {n} has the wrong shape")
            cols = [{} for _ in range(dims.get(n, 0))]
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    v = parse_scalar(v)
                    if v:
                        cols[j][i] = v
            diff[n] = cols
        labels = {int(n): list(ls) for n, ls in h.get("labels", {}).items()}
        homs[(x, y)] = Cochain(dims, diff, labels)
    comp: dict = {}
    for c in rec.get("composition", []):
        x, y, z = _need(c, "objects", where)
        p, q = _need(c, "degrees", where)
        table = comp.setdefault((x, y, z), {}).setdefault((int(p), int(q)), {})
        for g, f, v in _need(c, "entries", where):
            table[(int(g), int(f))] = _vec_in(v)
    units = {x: _vec_in(v) for x, v in _need(rec, "units", where).items()}
    try:
        return FinDGCategory(objects, homs, comp, units, name=rec.get("name"))
    except Exception as exc:  # malformed shapes surface as format errors
        raise FormatError(f"category: {exc}") from None


# ---------------------------------------------------------------------------
# twisted complexes and morphisms


def _entries_out(entries) -> list:
    return [[i, j, _vec_out(v)] for (i, j), v in sorted(entries.items())]


def _entries_in(items) -> dict:
    return {(int(i), int(j)): _vec_in(v) for i, j, v in items}


def twcx_to_json(Z: TwistedComplex, embed_category: bool = True) -> dict:
    rec = {"type": "twisted_complex", "generators": [[a, s] for a, s in Z.generators],
           "delta": _entries_out(Z.delta)}
    if embed_category:
        rec["category"] = category_to_json(Z.category)
    return rec


def twcx_from_json(rec, category: FinDGCategory | None = None) -> TwistedComplex:
    if not isinstance(rec, dict) or rec.get("type") != "twisted_complex":
        raise FormatError("expected a record of type 'twisted_complex'")
    if category is None:
        category = category_from_json(_need(rec, "category", "twisted_complex"))
    gens = [(a, int(s)) for a, s in _need(rec, "generators", "twisted_complex")]
    return TwistedComplex(category, gens, _entries_in(rec.get("delta", [])))


def morphism_to_json(f: TwMorphism) -> dict:
    return {"degree": f.degree, "entries": _entries_out(f.entries)}


def morphism_from_json(rec, source: TwistedComplex, target: TwistedComplex) -> TwMorphism:
    return TwMorphism(source, target, int(_need(rec, "degree", "morphism")), _entries_in(rec.get("entries", [])))


# ---------------------------------------------------------------------------
# bimodules


def bimodule_to_json(S: Bimodule) -> dict:
    actions = []
    for (x, y), per in sorted(S.actions.items()):
        for n, ms in sorted(per.items()):
            for k, m in enumerate(ms):
                if m.entries:
                    actions.append({"source": x, "target": y, "degree": n, "index": k,
                                    "morphism": morphism_to_json(m)})
    return {"type": "bimodule", "name": S.name,
            "source": category_to_json(S.source), "target": category_to_json(S.target),
            "values": {x: twcx_to_json(Z, embed_category=False) for x, Z in S.values.items()},
            "actions": actions}


def bimodule_from_json(rec) -> Bimodule:
    where = "bimodule"
    if not isinstance(rec, dict) or rec.get("type") != "bimodule":
        raise FormatError("expected a record of type 'bimodule'")
    B = category_from_json(_need(rec, "source", where))
    A = category_from_json(_need(rec, "target", where))
    values = {x: twcx_from_json(v, A) for x, v in _need(rec, "values", where).items()}
    for x in B.objects:
        if x not in values:
            raise FormatError(f"bimodule: no value for {x}")
    actions: dict = {}
    given = set()
    for a in rec.get("actions", []):
        x, y, n, k = a["source"], a["target"], int(a["degree"]), int(a["index"])
        per = actions.setdefault((x, y), {})
        if n not in per:
            per[n] = [TwMorphism(values[x], values[y], n) for _ in range(B.dim(x, y, n))]
        if k >= len(per[n]):
            raise FormatError(f"bimodule: action index {k} out of range for Hom({x},{y})^{n}")
        per[n][k] = morphism_from_json(a["morphism"], values[x], values[y])
        given.add((x, y, n, k))
    # omitted unit actions default to identities
    for x in B.objects:
        u = B.unit(x)
        if len(u) != 1:
            continue
        (k, c), = u.items()
        if c != 1 or (x, x, 0, k) in given:
            continue
        per = actions.setdefault((x, x), {})
        if 0 not in per:
            per[0] = [TwMorphism(values[x], values[x], 0) for _ in range(B.dim(x, x, 0))]
        per[0][k] = identity(values[x])
    return Bimodule(B, A, values, actions, name=rec.get("name", "S"))


def bimodule_morphism_to_json(phi: BimoduleMorphism) -> dict:
    return {"type": "bimodule_morphism", "source": bimodule_to_json(phi.source),
            "target": bimodule_to_json(phi.target),
            "components": {x: morphism_to_json(f) for x, f in phi.components.items()}}


def bimodule_morphism_from_json(rec, source: Bimodule | None = None) -> BimoduleMorphism:
    where = "bimodule_morphism"
    if not isinstance(rec, dict) or rec.get("type") != "bimodule_morphism":
        raise FormatError("expected a record of type 'bimodule_morphism'")
    S = source or bimodule_from_json(_need(rec, "source", where))
    T = bimodule_from_json(_need(rec, "target", where))
    comps = {}
    for x, m in _need(rec, "components", where).items():
        if x not in S.values or x not in T.values:
            raise FormatError(f"bimodule_morphism: unknown object {x}")
        comps[x] = morphism_from_json(m, S(x), T(x))
    return BimoduleMorphism(S, T, comps)


# ---------------------------------------------------------------------------
# glued bundles


def glued_to_json(C: GluedCategory) -> dict:
    return {"type": "glued", "A": category_to_json(C.A), "B": category_to_json(C.B),
            "S": bimodule_to_json(C.S), "category": category_to_json(C)}


def glued_from_json(rec, check: bool = True) -> GluedCategory:
    if not isinstance(rec, dict) or rec.get("type") != "glued":
        raise FormatError("expected a record of type 'glued'")
    A = category_from_json(_need(rec, "A", "glued"))
    B = category_from_json(_need(rec, "B", "glued"))
    S = bimodule_from_json(_need(rec, "S", "glued"))
    if S.source != B or S.target != A:
        raise FormatError("glued: bimodule does not match the two categories")
    S = Bimodule(B, A, S.values, S.actions, S.name)
    return upper_triangular(A, B, S, name=rec.get("category", {}).get("name"), check=check)


def gram_from_json(rec) -> list[list[int]]:
    if isinstance(rec, dict):
        rec = _need(rec, "matrix", "gram")
    if not isinstance(rec, list) or any(not isinstance(r, list) for r in rec):
        raise FormatError("expected a matrix (list of rows)")
    out = []
    for r in rec:
        row = []
        for x in r:
            v = parse_scalar(x)
            if not isinstance(v, int):
                raise FormatError(f"Gram entries must be integers, got {x}")
            row.append(v)
        out.append(row)
    return out


def load(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def save(path, record) -> None:
    Path(path).write_text(dumps(record) + "\n")
