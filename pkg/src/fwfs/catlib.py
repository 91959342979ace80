"""Split reflections, split fibrations, the comma-category
factorisation, and the canonical filler algorithm, all at the scale of a
finite roster of finite categories and functors.

The ambient category of categories is never constructed: a
:class:`CatRoster` is a finite base category whose objects name finite
categories and whose morphisms name functors, closed under the
composites the checks actually use (closure failures raise with a
witness rather than being repaired).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dblcat import ClosureError, ConcreteDouble
from .fincat import (FinCategory, Functor, NatTransformation,
                     check_category, check_functor, check_nat_transformation,
                     compose_functors, functor_equal, identity_functor)
from .lifting import LiftingOperation, RuleLifting
from .report import Budget, Report, run_bounded


@dataclass
class SplitReflection:
    """u: A → B with left adjoint f: B → A, identity counit (f∘u = 1_A)
    and unit eta: 1_B → u∘f."""

    u: Functor
    left_adjoint: Functor
    eta: NatTransformation
    name: str = ""


@dataclass
class SplitFibration:
    """u: A → B with a split cleavage: theta[(a, h)] is the chosen
    cartesian lift of h: b → u(a) ending at a."""

    u: Functor
    theta: dict  # (object a of A, morphism h of B with cod h = u(a)) -> morphism of A
    name: str = ""
    _cart: dict = field(default_factory=dict, repr=False, compare=False)


def identity_reflection(X: FinCategory, name="") -> SplitReflection:
    one = identity_functor(X)
    eta = NatTransformation(one, one, {o: X.identities[o] for o in X.objects},
                            name="eta")
    return SplitReflection(one, one, eta, name=name)


def identity_fibration(X: FinCategory, name="") -> SplitFibration:
    theta = {(X.cod[h], h): h for h in X.morphisms}
    return SplitFibration(identity_functor(X), theta, name=name)


def check_split_reflection(S: SplitReflection) -> Report:
    report = Report()
    u, f = S.u, S.left_adjoint
    A, B = u.source, u.target
    report.merge(check_functor(u), prefix="u-")
    report.merge(check_functor(f), prefix="left-adjoint-")
    if not report.ok:
        return report
    if f.source is not B or f.target is not A:
        report.add_violation("boundaries",
                             [{"kind": "left-adjoint-boundary"}])
        return report

    fu = compose_functors(f, u)
    bad = [{"kind": "object", "object": a} for a in A.objects
           if fu.obj_map[a] != a]
    bad += [{"kind": "morphism", "morphism": m} for m in A.morphisms
            if fu.mor_map[m] != m]
    if bad:
        report.add_violation("identity-counit", bad,
                             cases=len(A.objects) + len(A.morphisms))
        return report
    report.add_ok("identity-counit", cases=len(A.objects) + len(A.morphisms))

    eta = S.eta
    report.merge(check_nat_transformation(
        NatTransformation(identity_functor(B), compose_functors(u, f),
                          eta.components)), prefix="unit-")
    if not report.ok:
        return report

    tri = []
    for a in A.objects:
        # split triangle: the unit is the identity on the image of u
        if eta.components[u.obj_map[a]] != B.identities[u.obj_map[a]]:
            tri.append({"kind": "unit-on-image", "object": a})
    for b in B.objects:
        # and f collapses the unit (triangle with identity counit)
        if f.mor_map[eta.components[b]] != A.identities[f.obj_map[b]]:
            tri.append({"kind": "adjoint-triangle", "object": b})
    if tri:
        report.add_violation("triangle-identities", tri,
                             cases=len(A.objects) + len(B.objects))
    else:
        report.add_ok("triangle-identities",
                      cases=len(A.objects) + len(B.objects))
    return report


def cartesian_factor(F: SplitFibration, a, h, m, g):
    """The unique psi with theta[(a,h)]∘psi = m and u(psi) = g; cached
    write-once.  Raises if zero or several candidates exist (signals an
    invalid fibration)."""
    key = (a, h, m, g)
    cached = F._cart.get(key)
    if cached is not None:
        return cached
    A = F.u.source
    th = F.theta[(a, h)]
    x = A.dom[th]
    found = [psi for psi in A.hom(A.dom[m], x)
             if A.comp[(th, psi)] == m and F.u.mor_map[psi] == g]
    if len(found) != 1:
        raise ValueError(f"not a split fibration: {len(found)} factorisations "
                         f"at {key}")
    F._cart[key] = found[0]
    return found[0]


def check_split_fibration(F: SplitFibration,
                          budget: Budget | None = None) -> Report:
    report = Report()
    u = F.u
    A, B = u.source, u.target
    report.merge(check_functor(u), prefix="u-")
    if not report.ok:
        return report

    # totality + lift property: theta defined exactly on (a, h: b -> u a)
    bad, n = [], 0
    expected = set()
    for a in A.objects:
        ua = u.obj_map[a]
        for h in B.morphisms:
            if B.cod[h] != ua:
                continue
            n += 1
            expected.add((a, h))
            th = F.theta.get((a, h))
            if th is None or th not in A.dom:
                bad.append({"kind": "missing-lift", "a": a, "h": h})
            elif A.cod[th] != a:
                bad.append({"kind": "lift-target", "a": a, "h": h})
            elif u.mor_map[th] != h:
                bad.append({"kind": "over", "a": a, "h": h,
                            "got": u.mor_map[th]})
    for key in F.theta:
        if key not in expected:
            bad.append({"kind": "spurious-lift", "key": list(key)})
    if bad:
        report.add_violation("cleavage", bad, cases=n)
        return report
    report.add_ok("cleavage", cases=n)

    def cartesian():
        cbad, n = [], 0
        for (a, h), th in F.theta.items():
            x = A.dom[th]
            b = B.dom[h]
            for m in A.morphisms:
                if A.cod[m] != a:
                    continue
                for g in B.hom(u.obj_map[A.dom[m]], b):
                    if B.comp[(h, g)] != u.mor_map[m]:
                        continue
                    n += 1
                    if budget:
                        budget.spend()
                    found = [psi for psi in A.hom(A.dom[m], x)
                             if A.comp[(th, psi)] == m
                             and u.mor_map[psi] == g]
                    if len(found) != 1:
                        cbad.append({"a": a, "h": h, "m": m, "g": g,
                                     "factorisations": found[:2]})
        if cbad:
            report.add_violation("cartesianness", cbad, cases=n)
        else:
            report.add_ok("cartesianness", cases=n)
    run_bounded(report, "cartesianness", cartesian, budget)

    sbad, n = [], 0
    for a in A.objects:
        n += 1
        if F.theta[(a, B.identities[u.obj_map[a]])] != A.identities[a]:
            sbad.append({"kind": "identity-lift", "a": a})
    for (a, h), th in F.theta.items():
        x = A.dom[th]
        for g in B.morphisms:
            if B.cod[g] != B.dom[h]:
                continue
            n += 1
            lhs = F.theta[(a, B.comp[(h, g)])]
            rhs = A.comp[(th, F.theta[(x, g)])]
            if lhs != rhs:
                sbad.append({"kind": "composite-lift", "a": a, "h": h, "g": g,
                             "lhs": lhs, "rhs": rhs})
    if sbad:
        report.add_violation("splitness", sbad, cases=n)
    else:
        report.add_ok("splitness", cases=n)
    if budget:
        report.budget_used = budget.used
    return report


# ---------------------------------------------------------------------------
# comma category


def comma_obj_id(alpha, a) -> str:
    return f"({alpha},{a})"


def comma_mor_id(beta, m, src) -> str:
    return f"({beta},{m})@{src}"


@dataclass
class CommaData:
    """The factorisation of f: A → B through B/f: a cofree split
    reflection i_f followed by a free split fibration d_f."""

    comma: FinCategory
    i_f: Functor
    c_f: Functor
    d_f: SplitFibration
    eta: NatTransformation
    reflection: SplitReflection
    f: Functor


def comma_category(f: Functor) -> CommaData:
    """Objects are pairs (alpha: b → f a, a); morphisms are pairs
    (beta, m) with f(m)∘alpha = alpha'∘beta."""
    A, B = f.source, f.target
    objects = []
    obj_data = {}
    for a in A.objects:
        fa = f.obj_map[a]
        for alpha in B.morphisms:
            if B.cod[alpha] == fa:
                oid = comma_obj_id(alpha, a)
                objects.append(oid)
                obj_data[oid] = (alpha, a)
    morphisms = []
    mor_data = {}
    identities = {}
    for src in objects:
        alpha, a = obj_data[src]
        for dst in objects:
            alpha2, a2 = obj_data[dst]
            for m in A.hom(a, a2):
                fm_alpha = B.comp[(f.mor_map[m], alpha)]
                for beta in B.hom(B.dom[alpha], B.dom[alpha2]):
                    if B.comp[(alpha2, beta)] == fm_alpha:
                        mid = comma_mor_id(beta, m, src)
                        morphisms.append((mid, src, dst))
                        mor_data[mid] = (beta, m, src, dst)
        identities[src] = comma_mor_id(B.identities[B.dom[alpha]],
                                       A.identities[a], src)
    comp = {}
    by_dom = {}
    for mid, d, _ in morphisms:
        by_dom.setdefault(d, []).append(mid)
    for mid, d, c in morphisms:
        beta1, m1, src1, _ = mor_data[mid]
        for nid in by_dom.get(c, ()):
            beta2, m2, _, _ = mor_data[nid]
            comp[(nid, mid)] = comma_mor_id(B.comp[(beta2, beta1)],
                                            A.comp[(m2, m1)], src1)
    comma = FinCategory(objects, morphisms, identities, comp,
                        name=f"{B.name or 'B'}/{f.name or 'f'}")

    i_obj = {a: comma_obj_id(B.identities[f.obj_map[a]], a) for a in A.objects}
    i_mor = {m: comma_mor_id(f.mor_map[m], m, i_obj[A.dom[m]])
             for m in A.morphisms}
    i_f = Functor(A, comma, i_obj, i_mor, name="i_f")
    c_f = Functor(comma, A, {o: obj_data[o][1] for o in objects},
                  {mid: mor_data[mid][1] for mid in mor_data}, name="c_f")
    d_u = Functor(comma, B, {o: B.dom[obj_data[o][0]] for o in objects},
                  {mid: mor_data[mid][0] for mid in mor_data}, name="d_f")
    theta = {}
    for o in objects:
        alpha, a = obj_data[o]
        b = B.dom[alpha]
        for g in B.morphisms:
            if B.cod[g] != b:
                continue
            src = comma_obj_id(B.comp[(alpha, g)], a)
            theta[(o, g)] = comma_mor_id(g, A.identities[a], src)
    d_f = SplitFibration(d_u, theta, name="d_f")
    eta = NatTransformation(
        identity_functor(comma), compose_functors(i_f, c_f),
        {o: comma_mor_id(obj_data[o][0], A.identities[obj_data[o][1]], o)
         for o in objects},
        name="eta")
    reflection = SplitReflection(i_f, c_f, eta, name="c_f -| i_f")
    return CommaData(comma, i_f, c_f, d_f, eta, reflection, f)


# ---------------------------------------------------------------------------
# canonical fillers


def canonical_filler(S: SplitReflection, F: SplitFibration,
                     r: Functor, s: Functor) -> Functor:
    """The canonical diagonal in a square (r, s): u → g of a split
    reflection u and split fibration g.

    On objects, k b is the domain of the chosen cartesian lift of
    s(eta_b) ending at r(l b) (l the left adjoint); on morphisms, k α is
    the unique cartesian factorisation lying over s(α).  Both triangles
    k∘u = r and g∘k = s are asserted after construction.
    """
    u, l, eta = S.u, S.left_adjoint, S.eta
    g = F.u
    B = u.target
    Cc = g.source
    assert r.source is u.source and r.target is Cc
    assert s.source is B and s.target is g.target
    assert functor_equal(compose_functors(g, r), compose_functors(s, u)), \
        "square does not commute"

    kobj, lift_at = {}, {}
    for b in B.objects:
        a = r.obj_map[l.obj_map[b]]
        h = s.mor_map[eta.components[b]]
        th = F.theta[(a, h)]
        kobj[b] = Cc.dom[th]
        lift_at[b] = th
    kmor = {}
    for al in B.morphisms:
        b2 = B.cod[al]
        m = Cc.comp[(r.mor_map[l.mor_map[al]], lift_at[B.dom[al]])]
        kmor[al] = cartesian_factor(
            F, r.obj_map[l.obj_map[b2]], s.mor_map[eta.components[b2]],
            m, s.mor_map[al])
    k = Functor(B, Cc, kobj, kmor, name="k")
    assert check_functor(k).ok
    assert functor_equal(compose_functors(k, u), r)
    assert functor_equal(compose_functors(g, k), s)
    return k


# ---------------------------------------------------------------------------
# rosters


@dataclass
class CatRoster:
    """A finite base category whose objects name finite categories and
    whose morphisms name functors; identities are auto-registered and
    the composition table is resolved by functor-table equality."""

    categories: dict  # name -> FinCategory
    functors: dict    # name -> Functor
    cat: FinCategory


def build_roster(categories: dict, functors: dict,
                 composites: dict | None = None) -> CatRoster:
    cat_name = {id(c): n for n, c in categories.items()}
    functors = dict(functors)
    morphisms = []
    for fname, F in functors.items():
        src = cat_name.get(id(F.source))
        dst = cat_name.get(id(F.target))
        if src is None or dst is None:
            raise ClosureError("functor over unregistered category", fname)
        morphisms.append((fname, src, dst))
    identities = {}
    for cname, C in categories.items():
        iname = None
        ident = identity_functor(C)
        for fname, F in functors.items():
            if F.source is C and F.target is C and functor_equal(F, ident):
                iname = fname
                break
        if iname is None:
            iname = f"1_{cname}"
            if iname in functors:
                raise ClosureError("identity name collision", iname)
            functors[iname] = ident
            morphisms.append((iname, cname, cname))
        identities[cname] = iname
    comp = dict(composites or {})
    doms = {m: (s, t) for m, s, t in morphisms}
    for fn, (fs, ft) in doms.items():
        for gn, (gs, gt) in doms.items():
            if ft != gs:
                continue
            if (gn, fn) in comp:
                continue
            gf = compose_functors(functors[gn], functors[fn])
            match = None
            for hn, (hs, ht) in doms.items():
                if hs == fs and ht == gt and functor_equal(functors[hn], gf):
                    match = hn
                    break
            if match is None:
                raise ClosureError("roster not closed under composition",
                                   (gn, fn))
            comp[(gn, fn)] = match
    base = FinCategory(list(categories), morphisms, identities, comp,
                       name="roster")
    return CatRoster(categories, functors, base)


class SplRefDouble(ConcreteDouble):
    """Verticals are registered split reflections (by functor name);
    squares are commuting functor squares compatible with the left
    adjoints and units."""

    def __init__(self, roster: CatRoster, reflections: dict, name="SplRef"):
        super().__init__(roster.cat, name)
        self.roster = roster
        self.members = dict(reflections)
        for cname in roster.cat.objects:
            iname = roster.cat.identities[cname]
            if iname not in self.members:
                self.members[iname] = identity_reflection(
                    roster.categories[cname], name=iname)

    def verticals(self):
        return sorted(self.members)

    def has_vertical(self, v):
        return v in self.members

    def underlying(self, v):
        return v

    def label(self, v):
        return v

    def identity_vertical(self, obj):
        return self.base.identities[obj]

    def compose(self, w, v):
        name = self.base.comp[(w, v)]
        if name not in self.members:
            raise ClosureError("reflection composite not registered", (w, v))
        Sv, Sw = self.members[v], self.members[w]
        l = compose_functors(Sv.left_adjoint, Sw.left_adjoint)
        got = self.members[name]
        # composed unit: u2(eta1 at l2 c) ∘ eta2_c
        B2 = Sw.u.target
        for c in B2.objects:
            comp_eta = B2.comp[(Sw.u.mor_map[
                Sv.eta.components[Sw.left_adjoint.obj_map[c]]],
                Sw.eta.components[c])]
            if got.eta.components[c] != comp_eta:
                raise ClosureError("registered composite reflection disagrees",
                                   (w, v, c))
        if not functor_equal(got.left_adjoint, l):
            raise ClosureError("registered composite reflection disagrees",
                               (w, v))
        return name

    def is_square(self, v, w, top, bottom):
        if (top, bottom) not in self.base.squares(v, w):
            return False
        Sv, Sw = self.members[v], self.members[w]
        r = self.roster.functors[top]
        s = self.roster.functors[bottom]
        if not functor_equal(compose_functors(Sw.left_adjoint, s),
                             compose_functors(r, Sv.left_adjoint)):
            return False
        for b in Sv.u.target.objects:
            if s.mor_map[Sv.eta.components[b]] != \
                    Sw.eta.components[s.obj_map[b]]:
                return False
        return True


class SplFibDouble(ConcreteDouble):
    """Verticals are registered split fibrations; squares are commuting
    functor squares preserving the cleavages."""

    def __init__(self, roster: CatRoster, fibrations: dict, name="SplFib"):
        super().__init__(roster.cat, name)
        self.roster = roster
        self.members = dict(fibrations)
        for cname in roster.cat.objects:
            iname = roster.cat.identities[cname]
            if iname not in self.members:
                self.members[iname] = identity_fibration(
                    roster.categories[cname], name=iname)

    def verticals(self):
        return sorted(self.members)

    def has_vertical(self, v):
        return v in self.members

    def underlying(self, v):
        return v

    def label(self, v):
        return v

    def identity_vertical(self, obj):
        return self.base.identities[obj]

    def compose(self, w, v):
        name = self.base.comp[(w, v)]
        if name not in self.members:
            raise ClosureError("fibration composite not registered", (w, v))
        Fv, Fw = self.members[v], self.members[w]
        got = self.members[name]
        # composed cleavage: lift through w first, then v
        for (a, h), th in got.theta.items():
            mid = Fw.theta[(Fv.u.obj_map[a], h)]
            if th != Fv.theta[(a, mid)]:
                raise ClosureError("registered composite fibration disagrees",
                                   (w, v, a, h))
        return name

    def is_square(self, v, w, top, bottom):
        if (top, bottom) not in self.base.squares(v, w):
            return False
        Fv, Fw = self.members[v], self.members[w]
        r = self.roster.functors[top]
        s = self.roster.functors[bottom]
        for (a, h), th in Fv.theta.items():
            if r.mor_map[th] != Fw.theta[(r.obj_map[a], s.mor_map[h])]:
                return False
        return True


def cat_lifting_operation(L: SplRefDouble, R: SplFibDouble) -> LiftingOperation:
    """Fillers via :func:`canonical_filler`; the resulting functor must
    itself be registered in the roster (closure error otherwise)."""
    roster = L.roster
    assert R.roster is roster

    def rule(j, k, top, bottom):
        S = L.members[j]
        F = R.members[k]
        filler = canonical_filler(S, F, roster.functors[top],
                                  roster.functors[bottom])
        for name, G in roster.functors.items():
            if (G.source is filler.source and G.target is filler.target
                    and functor_equal(G, filler)):
                return name
        raise ClosureError("canonical filler not registered",
                           (j, k, top, bottom))

    return RuleLifting(L, R, rule, name="can")


def check_cat_roster(L: SplRefDouble, R: SplFibDouble,
                     budget: Budget | None = None) -> Report:
    """Validate the roster base, every registered reflection and
    fibration, and the canonical lifting operation's axioms."""
    from .lifting import check_lifting_operation
    report = Report()
    report.merge(check_category(L.base), prefix="base-")
    for name in L.verticals():
        sub = check_split_reflection(L.members[name])
        if not sub.ok:
            report.merge(sub, prefix=f"reflection-{name}-")
    for name in R.verticals():
        sub = check_split_fibration(R.members[name], budget)
        if not sub.ok:
            report.merge(sub, prefix=f"fibration-{name}-")
    if report.violations():
        return report
    report.add_ok("members", cases=len(L.members) + len(R.members))
    report.merge(check_lifting_operation(cat_lifting_operation(L, R), budget),
                 prefix="operation-")
    return report


# ---------------------------------------------------------------------------
# brute-force functor enumeration and the universal-property checks


def enumerate_functors(S: FinCategory, T: FinCategory, fixed_obj=None,
                       fixed_mor=None, budget: Budget | None = None):
    """All functors S → T extending the given partial assignments, in
    lexicographic order; each full candidate costs one budget unit."""
    fixed_obj = fixed_obj or {}
    fixed_mor = fixed_mor or {}
    out = []
    free_objs = [o for o in S.objects if o not in fixed_obj]
    for combo in itertools.product(T.objects, repeat=len(free_objs)):
        obj_map = dict(fixed_obj)
        obj_map.update(zip(free_objs, combo))
        mor_choices = []
        ok = True
        free_mors = []
        mor_map = {}
        for m in S.morphisms:
            want = (obj_map[S.dom[m]], obj_map[S.cod[m]])
            if m in fixed_mor:
                fm = fixed_mor[m]
                if (T.dom.get(fm), T.cod.get(fm)) != want:
                    ok = False
                    break
                mor_map[m] = fm
            else:
                cands = T.hom(*want)
                if not cands:
                    ok = False
                    break
                free_mors.append(m)
                mor_choices.append(cands)
        if not ok:
            continue
        for mcombo in itertools.product(*mor_choices):
            if budget:
                budget.spend()
            full = dict(mor_map)
            full.update(zip(free_mors, mcombo))
            F = Functor(S, T, obj_map, full)
            if any(full[S.identities[o]] != T.identities[obj_map[o]]
                   for o in S.objects):
                continue
            if any(T.comp[(full[g], full[f])] != full[gf]
                   for (g, f), gf in S.comp.items()):
                continue
            out.append(F)
    return out


def check_free_split_fibration(cd: CommaData, tests,
                               budget: Budget | None = None) -> Report:
    """Universality of (i_f, 1): every square (r, s): f → v into a test
    split fibration v factors as (r', s∘·) through d_f via exactly one
    cleavage-preserving functor r': B/f → dom v with r'∘i_f = r and
    v∘r' = s∘d_f."""
    report = Report()
    f = cd.f
    A, B = f.source, f.target

    def body():
        bad, n = [], 0
        for V in tests:
            X, Y = V.u.source, V.u.target
            for s in enumerate_functors(B, Y, budget=budget):
                s_f = compose_functors(s, f)
                for r in enumerate_functors(A, X, budget=budget):
                    if not functor_equal(compose_functors(V.u, r), s_f):
                        continue
                    n += 1
                    # r' is forced on the image of i_f; s∘d_f pins the rest
                    sd = compose_functors(s, cd.d_f.u)
                    found = []
                    fo = {cd.i_f.obj_map[a]: r.obj_map[a] for a in A.objects}
                    fm = {cd.i_f.mor_map[m]: r.mor_map[m] for m in A.morphisms}
                    for r2 in enumerate_functors(cd.comma, X, fixed_obj=fo,
                                                 fixed_mor=fm, budget=budget):
                        if not functor_equal(compose_functors(V.u, r2), sd):
                            continue
                        if not all(r2.mor_map[cd.d_f.theta[(o, g)]]
                                   == V.theta[(r2.obj_map[o], sd.mor_map[
                                       cd.d_f.theta[(o, g)]])]
                                   for (o, g) in cd.d_f.theta):
                            continue
                        found.append(r2)
                    if len(found) != 1:
                        bad.append({"fibration": V.name,
                                    "square": [r.name or "r", s.name or "s"],
                                    "factorisations": len(found)})
        if bad:
            report.add_violation("free-fibration-universality", bad, cases=n)
        else:
            report.add_ok("free-fibration-universality", cases=n)

    run_bounded(report, "free-fibration-universality", body, budget)
    if budget:
        report.budget_used = budget.used
    return report


def check_cofree_split_reflection(cd: CommaData, tests,
                                  budget: Budget | None = None) -> Report:
    """Couniversality of (1, d_f): every square (a, b) from a test split
    reflection x into f factors through i_f via exactly one
    unit-preserving functor b': cod x → B/f with d_f∘b' = b, b'∘u_x =
    i_f∘a and c_f∘b' = a∘l_x."""
    report = Report()
    f = cd.f
    A, B = f.source, f.target

    def body():
        bad, n = [], 0
        for S in tests:
            P, Q = S.u.source, S.u.target
            for a in enumerate_functors(P, A, budget=budget):
                fa = compose_functors(f, a)
                for b in enumerate_functors(Q, B, budget=budget):
                    if not functor_equal(compose_functors(b, S.u), fa):
                        continue
                    n += 1
                    ia = compose_functors(cd.i_f, a)
                    al = compose_functors(a, S.left_adjoint)
                    fo = {S.u.obj_map[p]: ia.obj_map[p] for p in P.objects}
                    fm = {S.u.mor_map[m]: ia.mor_map[m] for m in P.morphisms}
                    found = []
                    for b2 in enumerate_functors(Q, cd.comma, fixed_obj=fo,
                                                 fixed_mor=fm, budget=budget):
                        if not functor_equal(
                                compose_functors(cd.d_f.u, b2), b):
                            continue
                        if not functor_equal(
                                compose_functors(cd.c_f, b2), al):
                            continue
                        if not all(b2.mor_map[S.eta.components[q]]
                                   == cd.eta.components[b2.obj_map[q]]
                                   for q in Q.objects):
                            continue
                        found.append(b2)
                    if len(found) != 1:
                        bad.append({"reflection": S.name,
                                    "square": [a.name or "a", b.name or "b"],
                                    "factorisations": len(found)})
        if bad:
            report.add_violation("cofree-reflection-couniversality", bad,
                                 cases=n)
        else:
            report.add_ok("cofree-reflection-couniversality", cases=n)

    run_bounded(report, "cofree-reflection-couniversality", body, budget)
    if budget:
        report.budget_used = budget.used
    return report
