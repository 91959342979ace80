"""Finite categories with explicit composition tables.

Everything here is extensional: a category is its object list, morphism
list and a total composition table, so every equation is decided by a
dictionary lookup.  Identifiers are opaque strings; equality is
identifier equality and all enumeration is lexicographic, which makes
reports reproducible byte for byte.

Instances are immutable after construction (the square cache is
write-once memoization), so everything in this module is safe to use
concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .report import Report


class FinCategory:
    """A finite category given by explicit tables.

    ``comp[(g, f)]`` is the composite ``g after f`` and must be defined
    exactly on the composable pairs.  Identities are listed explicitly
    and verified by :func:`check_category`, never synthesized.
    """

    def __init__(self, objects, morphisms, identities, composition, name=""):
        self.name = name
        self.objects = tuple(sorted(objects))
        self.dom = {}
        self.cod = {}
        for mid, d, c in morphisms:
            if mid in self.dom:
                raise ValueError(f"duplicate morphism id {mid!r}")
            self.dom[mid] = d
            self.cod[mid] = c
        self.morphisms = tuple(sorted(self.dom))
        self.identities = dict(identities)
        self.comp = dict(composition)
        self._hom = {}
        for mid in self.morphisms:
            self._hom.setdefault((self.dom[mid], self.cod[mid]), []).append(mid)
        self._squares = {}

    def hom(self, a, b):
        """Morphisms a -> b in lexicographic order."""
        return self._hom.get((a, b), [])

    def compose(self, g, f):
        return self.comp[(g, f)]

    def identity(self, obj):
        return self.identities[obj]

    def is_identity(self, m):
        return self.identities.get(self.dom[m]) == m

    def composable(self, g, f):
        return self.cod[f] == self.dom[g]

    def squares(self, f, g):
        """All commuting squares (top, bottom): f -> g, lexicographically.

        A pair (top, bottom) commutes when g∘top = bottom∘f.
        """
        key = (f, g)
        cached = self._squares.get(key)
        if cached is None:
            out = []
            comp = self.comp
            for top in self.hom(self.dom[f], self.dom[g]):
                gt = comp[(g, top)]
                for bottom in self.hom(self.cod[f], self.cod[g]):
                    if comp[(bottom, f)] == gt:
                        out.append((top, bottom))
            cached = self._squares[key] = tuple(out)
        return cached

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


@dataclass(frozen=True)
class Square:
    """A commuting square in a category: right∘top = bottom∘left."""

    left: str
    right: str
    top: str
    bottom: str


def square_commutes(C: FinCategory, sq: Square) -> bool:
    if C.dom[sq.top] != C.dom[sq.left] or C.cod[sq.top] != C.dom[sq.right]:
        return False
    if C.dom[sq.bottom] != C.cod[sq.left] or C.cod[sq.bottom] != C.cod[sq.right]:
        return False
    return C.comp[(sq.right, sq.top)] == C.comp[(sq.bottom, sq.left)]


# ---------------------------------------------------------------------------
# validation


def check_category(C: FinCategory) -> Report:
    """Verify all category axioms of C by exhaustive table lookup."""
    report = Report()
    refs = []
    for m in C.morphisms:
        if C.dom[m] not in C.objects:
            refs.append({"kind": "unknown-object", "morphism": m, "object": C.dom[m]})
        if C.cod[m] not in C.objects:
            refs.append({"kind": "unknown-object", "morphism": m, "object": C.cod[m]})
    for obj in C.objects:
        i = C.identities.get(obj)
        if i is None:
            refs.append({"kind": "missing-identity", "object": obj})
        elif i not in C.dom:
            refs.append({"kind": "unknown-morphism", "object": obj, "identity": i})
        elif C.dom[i] != obj or C.cod[i] != obj:
            refs.append({"kind": "identity-boundary", "object": obj, "identity": i})
    for obj in C.identities:
        if obj not in C.objects:
            refs.append({"kind": "unknown-object", "identity_of": obj})
    for (g, f), gf in C.comp.items():
        for m in (g, f, gf):
            if m not in C.dom:
                refs.append({"kind": "unknown-morphism", "entry": [g, f, gf], "morphism": m})
    if refs:
        report.add_violation("references", refs, cases=len(C.morphisms))
        return report
    report.add_ok("references", cases=len(C.morphisms))

    # the composition table must be defined exactly on composable pairs
    malformed = []
    for (g, f) in C.comp:
        if C.cod[f] != C.dom[g]:
            malformed.append({"kind": "non-composable-pair", "g": g, "f": f})
    n_pairs = 0
    for f in C.morphisms:
        for g in C.morphisms:
            if C.cod[f] == C.dom[g]:
                n_pairs += 1
                if (g, f) not in C.comp:
                    malformed.append({"kind": "undefined-composite", "g": g, "f": f})
    if malformed:
        report.add_violation("composition-totality", malformed, cases=n_pairs)
        return report
    report.add_ok("composition-totality", cases=n_pairs)

    bounds = []
    for (g, f), gf in C.comp.items():
        if C.dom[gf] != C.dom[f] or C.cod[gf] != C.cod[g]:
            bounds.append({"g": g, "f": f, "composite": gf})
    if bounds:
        report.add_violation("boundaries", bounds, cases=n_pairs)
    else:
        report.add_ok("boundaries", cases=n_pairs)

    units = []
    for f in C.morphisms:
        if C.comp[(f, C.identities[C.dom[f]])] != f:
            units.append({"side": "right", "f": f})
        if C.comp[(C.identities[C.cod[f]], f)] != f:
            units.append({"side": "left", "f": f})
    if units:
        report.add_violation("units", units, cases=2 * len(C.morphisms))
    else:
        report.add_ok("units", cases=2 * len(C.morphisms))

    assoc = []
    n_triples = 0
    comp = C.comp
    by_dom = {}
    for m in C.morphisms:
        by_dom.setdefault(C.dom[m], []).append(m)
    for f in C.morphisms:
        for g in by_dom.get(C.cod[f], ()):
            gf = comp[(g, f)]
            for h in by_dom.get(C.cod[g], ()):
                n_triples += 1
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    assoc.append({"h": h, "g": g, "f": f})
    if assoc:
        report.add_violation("associativity", assoc, cases=n_triples)
    else:
        report.add_ok("associativity", cases=n_triples)
    return report


# ---------------------------------------------------------------------------
# functors, natural transformations, adjunctions


@dataclass
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: dict
    mor_map: dict
    name: str = ""

    def obj(self, o):
        return self.obj_map[o]

    def mor(self, m):
        return self.mor_map[m]

    def __repr__(self):
        return f"<Functor {self.name or '?'}>"


def functor_equal(F: Functor, G: Functor) -> bool:
    return (F.source is G.source or F.source.morphisms == G.source.morphisms) \
        and F.obj_map == G.obj_map and F.mor_map == G.mor_map


def identity_functor(C: FinCategory, name="1") -> Functor:
    return Functor(C, C, {o: o for o in C.objects},
                   {m: m for m in C.morphisms}, name=name)


def compose_functors(G: Functor, F: Functor, name="") -> Functor:
    """G after F."""
    return Functor(F.source, G.target,
                   {o: G.obj_map[v] for o, v in F.obj_map.items()},
                   {m: G.mor_map[v] for m, v in F.mor_map.items()},
                   name=name or f"{G.name}∘{F.name}")


def check_functor(F: Functor) -> Report:
    report = Report()
    S, T = F.source, F.target
    missing = [{"kind": "object-unmapped", "object": o} for o in S.objects
               if o not in F.obj_map]
    missing += [{"kind": "morphism-unmapped", "morphism": m} for m in S.morphisms
                if m not in F.mor_map]
    if missing:
        report.add_violation("totality", missing)
        return report
    report.add_ok("totality", cases=len(S.objects) + len(S.morphisms))

    bad = []
    for m in S.morphisms:
        fm = F.mor_map[m]
        if fm not in T.dom:
            bad.append({"kind": "unknown-image", "morphism": m, "image": fm})
        elif T.dom[fm] != F.obj_map[S.dom[m]] or T.cod[fm] != F.obj_map[S.cod[m]]:
            bad.append({"kind": "boundary", "morphism": m, "image": fm})
    if bad:
        report.add_violation("boundaries", bad, cases=len(S.morphisms))
        return report
    report.add_ok("boundaries", cases=len(S.morphisms))

    idbad = [{"object": o} for o in S.objects
             if F.mor_map[S.identities[o]] != T.identities[F.obj_map[o]]]
    if idbad:
        report.add_violation("identities", idbad, cases=len(S.objects))
    else:
        report.add_ok("identities", cases=len(S.objects))

    compbad = []
    n = 0
    for (g, f), gf in S.comp.items():
        n += 1
        if T.comp[(F.mor_map[g], F.mor_map[f])] != F.mor_map[gf]:
            compbad.append({"g": g, "f": f})
    if compbad:
        report.add_violation("composition", compbad, cases=n)
    else:
        report.add_ok("composition", cases=n)
    return report


@dataclass
class NatTransformation:
    source: Functor
    target: Functor
    components: dict  # object of the source category -> morphism of the target category
    name: str = ""


def check_nat_transformation(N: NatTransformation) -> Report:
    report = Report()
    F, G = N.source, N.target
    S, T = F.source, F.target
    bad = []
    for o in S.objects:
        c = N.components.get(o)
        if c is None or c not in T.dom:
            bad.append({"kind": "missing-component", "object": o})
        elif T.dom[c] != F.obj_map[o] or T.cod[c] != G.obj_map[o]:
            bad.append({"kind": "component-boundary", "object": o, "component": c})
    if bad:
        report.add_violation("components", bad, cases=len(S.objects))
        return report
    report.add_ok("components", cases=len(S.objects))

    nat = []
    for m in S.morphisms:
        x, y = S.dom[m], S.cod[m]
        lhs = T.comp[(G.mor_map[m], N.components[x])]
        rhs = T.comp[(N.components[y], F.mor_map[m])]
        if lhs != rhs:
            nat.append({"morphism": m, "lhs": lhs, "rhs": rhs})
    if nat:
        report.add_violation("naturality", nat, cases=len(S.morphisms))
    else:
        report.add_ok("naturality", cases=len(S.morphisms))
    return report


@dataclass
class Adjunction:
    """left ⊣ right, with unit 1 → right∘left and counit left∘right → 1."""

    left: Functor
    right: Functor
    unit: NatTransformation
    counit: NatTransformation


def check_adjunction(A: Adjunction) -> Report:
    report = Report()
    F, U = A.left, A.right
    C, D = F.source, F.target
    report.merge(check_nat_transformation(A.unit), prefix="unit-")
    report.merge(check_nat_transformation(A.counit), prefix="counit-")
    if not report.ok:
        return report

    tri = []
    for c in C.objects:
        # ε_{Fc} ∘ F(η_c) = 1_{Fc}
        lhs = D.comp[(A.counit.components[F.obj_map[c]],
                      F.mor_map[A.unit.components[c]])]
        if lhs != D.identities[F.obj_map[c]]:
            tri.append({"triangle": "left", "object": c, "got": lhs})
    for d in D.objects:
        # U(ε_d) ∘ η_{Ud} = 1_{Ud}
        lhs = C.comp[(U.mor_map[A.counit.components[d]],
                      A.unit.components[U.obj_map[d]])]
        if lhs != C.identities[U.obj_map[d]]:
            tri.append({"triangle": "right", "object": d, "got": lhs})
    if tri:
        report.add_violation("triangle-identities", tri,
                             cases=len(C.objects) + len(D.objects))
    else:
        report.add_ok("triangle-identities", cases=len(C.objects) + len(D.objects))
    return report


# ---------------------------------------------------------------------------
# stock categories


def terminal_category() -> FinCategory:
    return FinCategory(["*"], [("id", "*", "*")], {"*": "id"},
                       {("id", "id"): "id"}, name="1")


def walking_arrow() -> FinCategory:
    """The category 0 --a--> 1."""
    morphisms = [("id0", "0", "0"), ("id1", "1", "1"), ("a", "0", "1")]
    comp = {
        ("id0", "id0"): "id0",
        ("id1", "id1"): "id1",
        ("a", "id0"): "a",
        ("id1", "a"): "a",
    }
    return FinCategory(["0", "1"], morphisms, {"0": "id0", "1": "id1"}, comp,
                       name="2")


FINSET_BUDGET = 4


def finset_id(m: int, k: int, values) -> str:
    return f"{m}>{k}:" + "".join(str(v) for v in values)


def finset_values(mid: str):
    """Parse a finite-set morphism id back into (dom, cod, value tuple)."""
    head, _, vals = mid.partition(":")
    m, _, k = head.partition(">")
    return int(m), int(k), tuple(int(ch) for ch in vals)


@dataclass
class FinSet:
    """The full subcategory of finite sets on 0..n together with its
    surjections and injections."""

    category: FinCategory
    epis: frozenset
    monos: frozenset


def build_finset(n: int) -> FinSet:
    """Sets {0,..,k-1} for k ≤ n, with all functions between them."""
    if not 0 <= n <= FINSET_BUDGET:
        raise ValueError(f"budget exceeded: n must be between 0 and {FINSET_BUDGET}")
    objects = [str(k) for k in range(n + 1)]
    morphisms = []
    funcs = {}
    identities = {}
    epis, monos = set(), set()
    for m in range(n + 1):
        for k in range(n + 1):
            if m > 0 and k == 0:
                continue  # no maps out of a nonempty set into the empty set
            for values in itertools.product(range(k), repeat=m):
                mid = finset_id(m, k, values)
                morphisms.append((mid, str(m), str(k)))
                funcs[mid] = values
                if set(values) == set(range(k)):
                    epis.add(mid)
                if len(set(values)) == m:
                    monos.add(mid)
        identities[str(m)] = finset_id(m, m, range(m))
    comp = {}
    by_dom = {}
    for mid, d, c in morphisms:
        by_dom.setdefault(d, []).append(mid)
    for f, fd, fc in morphisms:
        fv = funcs[f]
        for g in by_dom.get(fc, ()):
            gv = funcs[g]
            _, gk, _ = finset_values(g)
            comp[(g, f)] = finset_id(int(fd), gk, tuple(gv[v] for v in fv))
    cat = FinCategory(objects, morphisms, identities, comp, name=f"FinSet≤{n}")
    return FinSet(cat, frozenset(epis), frozenset(monos))


def finset_image_factorisation(mid: str):
    """Factor a finite-set map as surjection ∘ injection⁻¹... i.e. as
    (surjection onto the image, image inclusion); returns (e, mid_object, m)."""
    m, k, values = finset_values(mid)
    image = sorted(set(values))
    r = len(image)
    index = {v: i for i, v in enumerate(image)}
    e = finset_id(m, r, tuple(index[v] for v in values))
    incl = finset_id(r, k, tuple(image))
    return e, str(r), incl


# ---------------------------------------------------------------------------
# the arrow category


def arrow_mor_id(f, g, top, bottom) -> str:
    return f"[{top}|{bottom}]:{f}=>{g}"


@dataclass
class ArrowCategory:
    """C^2 together with its domain/codomain projections onto C."""

    category: FinCategory
    dom_proj: Functor
    cod_proj: Functor


def arrow_category(C: FinCategory) -> ArrowCategory:
    """Objects are the morphisms of C; morphisms are commuting squares,
    composed by pasting."""
    objects = list(C.morphisms)
    morphisms = []
    identities = {}
    sq_data = {}
    for f in objects:
        for g in objects:
            for top, bottom in C.squares(f, g):
                mid = arrow_mor_id(f, g, top, bottom)
                morphisms.append((mid, f, g))
                sq_data[mid] = (f, g, top, bottom)
        identities[f] = arrow_mor_id(f, f, C.identities[C.dom[f]],
                                     C.identities[C.cod[f]])
    comp = {}
    by_dom = {}
    for mid, d, _ in morphisms:
        by_dom.setdefault(d, []).append(mid)
    for mid, d, c in morphisms:
        f, g, t1, b1 = sq_data[mid]
        for nid in by_dom.get(c, ()):
            _, h, t2, b2 = sq_data[nid]
            comp[(nid, mid)] = arrow_mor_id(f, h, C.comp[(t2, t1)], C.comp[(b2, b1)])
    cat = FinCategory(objects, morphisms, identities, comp,
                      name=f"{C.name or 'C'}^2")
    dom_proj = Functor(cat, C, {f: C.dom[f] for f in objects},
                       {m: sq_data[m][2] for m, _, _ in morphisms}, name="dom")
    cod_proj = Functor(cat, C, {f: C.cod[f] for f in objects},
                       {m: sq_data[m][3] for m, _, _ in morphisms}, name="cod")
    return ArrowCategory(cat, dom_proj, cod_proj)
