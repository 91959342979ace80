"""Strict JSON loaders and dumpers for the on-disk formats.

Every loader rejects unknown keys and reports the file, the JSON path
and the offending key, so malformed inputs fail loudly instead of being
silently ignored.  Paths inside files are resolved relative to the file
that mentions them.
"""

from __future__ import annotations

import json
import os

from .awfs import Awfs, FunctorialFactorisation, factorisation_assignment, sem
from .catlib import (SplFibDouble, SplitFibration, SplitReflection,
                     SplRefDouble, build_roster, cat_lifting_operation)
from .dblcat import DoubleCategory, dbl_from_class
from .fincat import FinCategory, Functor, NatTransformation
from .lifting import (FactorisationAssignment, LiftingStructure, TableLifting,
                      unique_filler_lifting)


class ParseError(ValueError):
    def __init__(self, file, path, message):
        super().__init__(f"{file}: at {path or '$'}: {message}")
        self.file = file
        self.path = path


def _load_json(file):
    try:
        with open(file, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(file, "", str(e))
    except json.JSONDecodeError as e:
        raise ParseError(file, "", f"invalid JSON: {e}")


def _require(data, file, path, required, optional=()):
    if not isinstance(data, dict):
        raise ParseError(file, path, f"expected an object, got {type(data).__name__}")
    allowed = set(required) | set(optional)
    for key in data:
        if key not in allowed:
            raise ParseError(file, path, f"unknown key {key!r}")
    for key in required:
        if key not in data:
            raise ParseError(file, path, f"missing key {key!r}")


def _resolve(base_file, rel):
    return os.path.normpath(os.path.join(os.path.dirname(base_file), rel))


# ---------------------------------------------------------------------------
# categories and functors


def category_from_dict(data, file, path=""):
    _require(data, file, path, ("objects", "morphisms", "identities",
                                "composition"), optional=("name",))
    morphisms = []
    for idx, m in enumerate(data["morphisms"]):
        _require(m, file, f"{path}.morphisms[{idx}]", ("id", "dom", "cod"))
        morphisms.append((m["id"], m["dom"], m["cod"]))
    comp = {}
    for idx, row in enumerate(data["composition"]):
        if not (isinstance(row, list) and len(row) == 3):
            raise ParseError(file, f"{path}.composition[{idx}]",
                             "expected [g, f, gf]")
        comp[(row[0], row[1])] = row[2]
    return FinCategory(data["objects"], morphisms, data["identities"], comp,
                       name=data.get("name", ""))


def load_category(file) -> FinCategory:
    return category_from_dict(_load_json(file), file)


def category_to_dict(C: FinCategory) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "dom": C.dom[m], "cod": C.cod[m]}
                      for m in C.morphisms],
        "identities": dict(C.identities),
        "composition": [[g, f, gf] for (g, f), gf in sorted(C.comp.items())],
    }


def functor_from_dict(data, file, path, source, target, name=""):
    _require(data, file, path, ("object_map", "morphism_map"),
             optional=("source", "target", "name"))
    return Functor(source, target, dict(data["object_map"]),
                   dict(data["morphism_map"]), name=data.get("name", name))


def load_functor(file) -> Functor:
    data = _load_json(file)
    _require(data, file, "", ("source", "target", "object_map",
                              "morphism_map"), optional=("name",))
    source = load_category(_resolve(file, data["source"]))
    target = load_category(_resolve(file, data["target"]))
    return functor_from_dict(data, file, "", source, target)


# ---------------------------------------------------------------------------
# double categories


def load_double_category(file) -> DoubleCategory:
    data = _load_json(file)
    _require(data, file, "", ("cat0", "cat1", "d", "c", "i", "m"),
             optional=("name",))
    cat0 = category_from_dict(data["cat0"], file, "cat0")
    cat1 = category_from_dict(data["cat1"], file, "cat1")
    d = functor_from_dict(data["d"], file, "d", cat1, cat0, name="d")
    c = functor_from_dict(data["c"], file, "c", cat1, cat0, name="c")
    i = functor_from_dict(data["i"], file, "i", cat0, cat1, name="i")
    m_vert, m_sq = {}, {}
    verts = set(cat1.objects)
    for idx, row in enumerate(data["m"]):
        if not (isinstance(row, list) and len(row) == 3):
            raise ParseError(file, f"m[{idx}]", "expected [w, v, wv]")
        w, v, wv = row
        # entries compose either two verticals or two squares
        if w in verts or v in verts:
            m_vert[(w, v)] = wv
        else:
            m_sq[(w, v)] = wv
    return DoubleCategory(cat0, cat1, d, c, i, m_vert, m_sq,
                          name=data.get("name", ""))


# ---------------------------------------------------------------------------
# lifting bundles


def _class_double(spec, C, file, path, name):
    _require(spec, file, path, ("class",))
    members = spec["class"]
    if not isinstance(members, list):
        raise ParseError(file, f"{path}.class", "expected a list of morphism ids")
    return dbl_from_class(C, members, name=name)


def load_bundle(file):
    """Returns (category, LiftingStructure, FactorisationAssignment or
    None)."""
    data = _load_json(file)
    _require(data, file, "", ("category", "operation"),
             optional=("left", "right", "factorisation"))
    op_spec = data["operation"]
    if not isinstance(op_spec, dict) or "kind" not in op_spec:
        raise ParseError(file, "operation", "missing key 'kind'")
    kind = op_spec["kind"]

    if kind == "awfs":
        _require(op_spec, file, "operation", ("kind", "awfs"))
        for key in ("left", "right", "factorisation"):
            if key in data:
                raise ParseError(file, key,
                                 "not allowed with an awfs-backed operation")
        A = load_awfs(_resolve(file, op_spec["awfs"]))
        S = sem(A)
        return A.C, S, factorisation_assignment(A)

    if kind == "cat":
        _require(op_spec, file, "operation", ("kind", "roster"))
        for key in ("left", "right", "factorisation"):
            if key in data:
                raise ParseError(file, key,
                                 "not allowed with a roster-backed operation")
        L, R = load_roster(_resolve(file, op_spec["roster"]))
        op = cat_lifting_operation(L, R)
        return L.base, LiftingStructure(L, op, R), None

    if kind not in ("unique", "table"):
        raise ParseError(file, "operation.kind", f"unknown kind {kind!r}")
    C = load_category(_resolve(file, data["category"]))
    for key in ("left", "right"):
        if key not in data:
            raise ParseError(file, "", f"missing key {key!r}")
    left = _class_double(data["left"], C, file, "left", "L")
    right = _class_double(data["right"], C, file, "right", "R")
    if kind == "unique":
        _require(op_spec, file, "operation", ("kind",))
        op = unique_filler_lifting(left, right)
    elif kind == "table":
        _require(op_spec, file, "operation", ("kind", "entries"))
        entries = {}
        for idx, row in enumerate(op_spec["entries"]):
            if not (isinstance(row, list) and len(row) == 5):
                raise ParseError(file, f"operation.entries[{idx}]",
                                 "expected [j, k, top, bottom, diagonal]")
            entries[tuple(row[:4])] = row[4]
        op = TableLifting(left, right, entries)
    S = LiftingStructure(left, op, right)

    FA = None
    if "factorisation" in data:
        assignment = {}
        for idx, row in enumerate(data["factorisation"]):
            _require(row, file, f"factorisation[{idx}]",
                     ("f", "left", "mid", "right"))
            assignment[row["f"]] = (row["left"], row["mid"], row["right"])
        FA = FactorisationAssignment(assignment)
    return C, S, FA


# ---------------------------------------------------------------------------
# awfs files


def load_awfs(file) -> Awfs:
    data = _load_json(file)
    _require(data, file, "", ("category", "E", "E_mor", "delta", "mu"))
    C = load_category(_resolve(file, data["category"]))
    mid, lam, rho = {}, {}, {}
    for f, rec in data["E"].items():
        _require(rec, file, f"E.{f}", ("mid", "lambda", "rho"))
        mid[f] = rec["mid"]
        lam[f] = rec["lambda"]
        rho[f] = rec["rho"]
    sq_map = {}
    for idx, row in enumerate(data["E_mor"]):
        if not (isinstance(row, list) and len(row) == 5):
            raise ParseError(file, f"E_mor[{idx}]",
                             "expected [top, bottom, f, g, Ehk]")
        top, bottom, f, g, e = row
        sq_map[(f, g, top, bottom)] = e
    ff = FunctorialFactorisation(C, mid, lam, rho, sq_map)
    return Awfs(ff, dict(data["delta"]), dict(data["mu"]))


def awfs_to_dict(A: Awfs, category_path) -> dict:
    ff = A.ff
    return {
        "category": category_path,
        "E": {f: {"mid": ff.mid[f], "lambda": ff.lam[f], "rho": ff.rho[f]}
              for f in ff.C.morphisms},
        "E_mor": [[top, bottom, f, g, e]
                  for (f, g, top, bottom), e in sorted(ff.sq_map.items())],
        "delta": dict(sorted(A.delta.items())),
        "mu": dict(sorted(A.mu.items())),
    }


# ---------------------------------------------------------------------------
# rosters


def load_roster(file):
    """Returns (SplRefDouble, SplFibDouble) over one shared roster."""
    data = _load_json(file)
    _require(data, file, "", ("categories", "functors"),
             optional=("reflections", "fibrations", "composites"))
    categories = {}
    for name, spec in data["categories"].items():
        if isinstance(spec, str):
            categories[name] = load_category(_resolve(file, spec))
        else:
            categories[name] = category_from_dict(spec, file,
                                                  f"categories.{name}")
    functors = {}
    for name, spec in data["functors"].items():
        _require(spec, file, f"functors.{name}",
                 ("source", "target", "object_map", "morphism_map"))
        for side in ("source", "target"):
            if spec[side] not in categories:
                raise ParseError(file, f"functors.{name}.{side}",
                                 f"unknown category {spec[side]!r}")
        functors[name] = Functor(categories[spec["source"]],
                                 categories[spec["target"]],
                                 dict(spec["object_map"]),
                                 dict(spec["morphism_map"]), name=name)
    composites = {}
    for idx, row in enumerate(data.get("composites", [])):
        if not (isinstance(row, list) and len(row) == 3):
            raise ParseError(file, f"composites[{idx}]", "expected [g, f, gf]")
        composites[(row[0], row[1])] = row[2]
    roster = build_roster(categories, functors, composites)

    reflections = {}
    for idx, spec in enumerate(data.get("reflections", [])):
        _require(spec, file, f"reflections[{idx}]",
                 ("u", "left_adjoint", "eta"))
        u = roster.functors.get(spec["u"])
        l = roster.functors.get(spec["left_adjoint"])
        if u is None or l is None:
            raise ParseError(file, f"reflections[{idx}]", "unknown functor")
        eta = NatTransformation(None, None, dict(spec["eta"]), name="eta")
        reflections[spec["u"]] = SplitReflection(u, l, eta, name=spec["u"])
    fibrations = {}
    for idx, spec in enumerate(data.get("fibrations", [])):
        _require(spec, file, f"fibrations[{idx}]", ("u", "theta"))
        u = roster.functors.get(spec["u"])
        if u is None:
            raise ParseError(file, f"fibrations[{idx}].u", "unknown functor")
        theta = {}
        for jdx, row in enumerate(spec["theta"]):
            if not (isinstance(row, list) and len(row) == 3):
                raise ParseError(file, f"fibrations[{idx}].theta[{jdx}]",
                                 "expected [a, h, lift]")
            theta[(row[0], row[1])] = row[2]
        fibrations[spec["u"]] = SplitFibration(u, theta, name=spec["u"])
    return (SplRefDouble(roster, reflections),
            SplFibDouble(roster, fibrations))


# ---------------------------------------------------------------------------
# comma squares


def load_cat_square(file):
    """A square for cat-fill: a registered reflection, fibration, and
    the two functor names forming a commuting square between them."""
    data = _load_json(file)
    _require(data, file, "", ("roster", "reflection", "fibration",
                              "top", "bottom"))
    L, R = load_roster(_resolve(file, data["roster"]))
    for key, side in (("reflection", L), ("fibration", R)):
        if data[key] not in side.members:
            raise ParseError(file, key, f"not registered: {data[key]!r}")
    for key in ("top", "bottom"):
        if data[key] not in L.roster.functors:
            raise ParseError(file, key, f"unknown functor {data[key]!r}")
    return L, R, data["reflection"], data["fibration"], data["top"], data["bottom"]
