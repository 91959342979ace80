import pytest

from fwfs import (Awfs, FunctorialFactorisation,
                  alg_double_category, awfs_from_lifting, check_awfs,
                  check_awfs_morphism, check_double_category,
                  check_essential_image, check_functorial_factorisation,
                  check_lifting_awfs, coalg_double_category,
                  enumerate_algebras, enumerate_coalgebras,
                  factorisation_assignment, roundtrip_compare, sem,
                  terminal_category, walking_arrow)
from fwfs.awfs import ReconstructionError, is_algebra
from fwfs.fincat import finset_id
from fwfs.lifting import FactorisationAssignment


def trivial_ff(C):
    """Ef = dom f, λf = identity, ρf = f; E(h, k) = h."""
    mid = {f: C.dom[f] for f in C.morphisms}
    lam = {f: C.identities[C.dom[f]] for f in C.morphisms}
    rho = {f: f for f in C.morphisms}
    sq_map = {(f, g, top, bottom): top
              for f in C.morphisms for g in C.morphisms
              for top, bottom in C.squares(f, g)}
    return FunctorialFactorisation(C, mid, lam, rho, sq_map)


def trivial_awfs(C):
    ff = trivial_ff(C)
    ident = {f: C.identities[C.dom[f]] for f in C.morphisms}
    return Awfs(ff, dict(ident), dict(ident))


# --- functorial factorisation ------------------------------------------------


def test_trivial_factorisation_ok():
    assert check_functorial_factorisation(trivial_ff(walking_arrow())).ok


def test_image_factorisation_functorial(image_awfs2):
    assert check_functorial_factorisation(image_awfs2.ff).ok


def test_corrupted_square_map_flagged(finset2):
    C = finset2.category
    ff = trivial_ff(C)
    # reroute one non-identity square image through a different morphism
    for key, e in sorted(ff.sq_map.items()):
        alts = [x for x in C.hom(C.dom[e], C.cod[e]) if x != e]
        if alts:
            ff.sq_map[key] = alts[0]
            break
    report = check_functorial_factorisation(ff)
    assert not report.ok


def test_broken_section_flagged():
    C = walking_arrow()
    ff = trivial_ff(C)
    ff.rho["a"] = "id0"  # ρ∘λ no longer equals a, and boundaries break
    assert not check_functorial_factorisation(ff).ok


# --- awfs laws ----------------------------------------------------------------


def test_trivial_awfs_on_walking_arrow():
    A = trivial_awfs(walking_arrow())
    assert check_awfs(A).ok


def test_trivial_awfs_on_terminal():
    assert check_awfs(trivial_awfs(terminal_category())).ok


def test_image_awfs_satisfies_all_laws(image_awfs2):
    assert check_awfs(image_awfs2).ok


def test_corrupted_comultiplication_flagged(image_awfs2, finset2):
    C = finset2.category
    A = image_awfs2
    delta = dict(A.delta)
    for f, d in sorted(delta.items()):
        alts = [x for x in C.hom(C.dom[d], C.cod[d]) if x != d]
        if alts:
            delta[f] = alts[0]
            break
    else:
        pytest.fail("no corruptible comultiplication entry")
    report = check_awfs(Awfs(A.ff, delta, A.mu))
    assert not report.ok


def test_corrupted_multiplication_flagged(image_awfs2, finset2):
    C = finset2.category
    A = image_awfs2
    mu = dict(A.mu)
    for f, m in sorted(mu.items()):
        alts = [x for x in C.hom(C.dom[m], C.cod[m]) if x != m]
        if alts:
            mu[f] = alts[0]
            break
    else:
        pytest.fail("no corruptible multiplication entry")
    assert not check_awfs(Awfs(A.ff, A.delta, mu)).ok


# --- coalgebras and algebras --------------------------------------------------


def test_coalgebras_are_exactly_the_epis(image_awfs2, finset2):
    A = image_awfs2
    for f in finset2.category.morphisms:
        n = len(enumerate_coalgebras(A, f))
        assert n == (1 if f in finset2.epis else 0), (f, n)


def test_algebras_are_exactly_the_monos(image_awfs2, finset2):
    A = image_awfs2
    for g in finset2.category.morphisms:
        n = len(enumerate_algebras(A, g))
        assert n == (1 if g in finset2.monos else 0), (g, n)


def test_structure_map_laws_checked(image_awfs2, finset2):
    A = image_awfs2
    C = finset2.category
    g = finset_id(1, 2, (0,))
    (p,) = [a.p for a in enumerate_algebras(A, g)]
    assert is_algebra(A, g, p)
    # any other parallel candidate is rejected
    for q in C.hom(C.dom[p], C.cod[p]):
        if q != p:
            assert not is_algebra(A, g, q)


def test_algebra_double_is_lawful(image_awfs2):
    U = alg_double_category(image_awfs2)
    assert check_double_category(U).ok


def test_coalgebra_double_is_lawful(image_awfs2):
    U = coalg_double_category(image_awfs2)
    assert check_double_category(U).ok


def test_composite_algebra_is_the_unique_one(image_awfs2, finset2):
    A = image_awfs2
    U = alg_double_category(A)
    C = finset2.category
    pairs = [(v, w) for v in U.verticals() for w in U.verticals()
             if U.composable(w, v)]
    assert pairs
    for v, w in pairs:
        comp = U.compose(w, v)
        (expected,) = enumerate_algebras(A, C.comp[(w.g, v.g)])
        assert comp == expected


def test_composite_coalgebra_is_the_unique_one(image_awfs2, finset2):
    A = image_awfs2
    U = coalg_double_category(A)
    C = finset2.category
    pairs = [(v, w) for v in U.verticals() for w in U.verticals()
             if U.composable(w, v)]
    assert pairs
    for v, w in pairs:
        comp = U.compose(w, v)
        (expected,) = enumerate_coalgebras(A, C.comp[(w.f, v.f)])
        assert comp == expected


# --- semantics ----------------------------------------------------------------


def test_sem_fillers_are_the_unique_fillers(image_awfs2, epi_mono2, finset2):
    T = sem(image_awfs2)
    S, _ = epi_mono2
    C = finset2.category
    for j in T.left.verticals():
        for k in T.right.verticals():
            for top, bottom in C.squares(j.f, k.g):
                assert T.op.fill(j, k, top, bottom) == \
                    S.op.fill(j.f, k.g, top, bottom)


def test_sem_satisfies_lifting_awfs(image_awfs2):
    T = sem(image_awfs2)
    FA = factorisation_assignment(image_awfs2)
    assert check_lifting_awfs(T, FA, "both").ok


# --- reconstruction and roundtrip ---------------------------------------------


def test_reconstruction_matches_image_factorisation(image_awfs2, finset2):
    from fwfs.fincat import finset_image_factorisation
    A = image_awfs2
    C = finset2.category
    for f in C.morphisms:
        e, mid, m = finset_image_factorisation(f)
        assert (A.ff.lam[f], A.ff.mid[f], A.ff.rho[f]) == (e, mid, m)


def test_reconstruction_rejects_non_universal_assignment(epi_mono2, finset2):
    S, FA = epi_mono2
    C = finset2.category
    bad = dict(FA.assignment)
    # factor an identity through a non-identity epi-mono pair: legs are in
    # the right classes but the comparison map is not unique/existent
    f = finset_id(2, 2, (0, 1))
    bad[f] = (finset_id(2, 1, (0, 0)), "1", finset_id(1, 2, (0,)))
    with pytest.raises(ReconstructionError):
        awfs_from_lifting(S, FactorisationAssignment(bad))


def test_roundtrip_identifies_structures(epi_mono2, image_awfs2):
    S, _ = epi_mono2
    report = roundtrip_compare(S, image_awfs2)
    assert report.ok
    names = {c.name for c in report.checks}
    assert names == {"left-verticals", "left-squares", "right-verticals",
                     "right-squares", "fillers"}


def test_roundtrip_detects_wrong_awfs(epi_mono2, finset2):
    S, _ = epi_mono2
    A = trivial_awfs(finset2.category)
    assert not roundtrip_compare(S, A).ok


# --- awfs morphisms -----------------------------------------------------------


def test_identity_awfs_morphism(image_awfs2, finset2):
    C = finset2.category
    K = {f: C.identities[image_awfs2.ff.mid[f]] for f in C.morphisms}
    assert check_awfs_morphism(image_awfs2, image_awfs2, K).ok


def test_corrupted_awfs_morphism_flagged(image_awfs2, finset2):
    C = finset2.category
    A = image_awfs2
    K = {f: C.identities[A.ff.mid[f]] for f in C.morphisms}
    for f, k in sorted(K.items()):
        alts = [x for x in C.hom(C.dom[k], C.cod[k]) if x != k]
        if alts:
            K[f] = alts[0]
            break
    else:
        pytest.fail("no corruptible component")
    assert not check_awfs_morphism(A, A, K).ok


# --- essential image ----------------------------------------------------------


def test_algebra_double_in_essential_image(image_awfs2):
    report = check_essential_image(alg_double_category(image_awfs2))
    assert report.ok


def test_missing_connecting_square_flagged(image_awfs2):
    U = alg_double_category(image_awfs2)
    victim = next(v for v in U.verticals()
                  if not U.base.is_identity(v.g))

    class Pruned(type(U)):
        def is_square(self, v, w, top, bottom):
            if v == victim and self.base.is_identity(w.g) \
                    and self.base.is_identity(bottom):
                return False
            return super().is_square(v, w, top, bottom)

    report = check_essential_image(Pruned(image_awfs2))
    assert not report.ok
    assert any(c.name == "right-connectedness" for c in report.violations())
