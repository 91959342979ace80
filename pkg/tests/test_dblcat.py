import pytest

from fwfs import (ClosureError, build_finset, check_double_category,
                  check_double_functor, dbl_from_class, sq, terminal_category,
                  to_internal, walking_arrow)
from fwfs.dblcat import (ConcreteDoubleMap, check_concrete_double_map,
                         identity_double_map, inclusion_double_functor)
from fwfs.fincat import FinCategory


def test_sq_of_terminal_is_trivial():
    D = to_internal(sq(terminal_category()))
    assert len(D.cat0.objects) == 1 and len(D.cat0.morphisms) == 1
    assert len(D.cat1.objects) == 1 and len(D.cat1.morphisms) == 1
    assert check_double_category(D).ok


def test_sq_of_walking_arrow():
    W = walking_arrow()
    S = sq(W)
    assert len(S.verticals()) == 3
    # squares agree with the brute-force commuting-square enumeration
    for f in W.morphisms:
        for g in W.morphisms:
            assert S.squares(f, g) == list(W.squares(f, g))
    assert check_double_category(S).ok


def test_interchange_holds_in_sq_finset1():
    assert check_double_category(sq(build_finset(1).category)).ok


def test_dbl_from_class_epis_closed(finset2):
    D = dbl_from_class(finset2.category, finset2.epis)
    assert check_double_category(D).ok


def test_dbl_from_class_monos_closed(finset2):
    D = dbl_from_class(finset2.category, finset2.monos)
    assert check_double_category(D).ok


def test_identities_only_class(finset2):
    C = finset2.category
    D = dbl_from_class(C, C.identities.values())
    assert set(D.verticals()) == set(C.identities.values())
    assert check_double_category(D).ok


def test_missing_identity_raises():
    C = walking_arrow()
    with pytest.raises(ClosureError) as ei:
        dbl_from_class(C, ["a", "id0"])
    assert "identity" in str(ei.value)


def test_unclosed_class_names_witness():
    # monoid where a∘a = b and b is excluded from the class
    morphisms = [("e", "*", "*"), ("a", "*", "*"), ("b", "*", "*")]
    table = {("e", "e"): "e", ("e", "a"): "a", ("e", "b"): "b",
             ("a", "e"): "a", ("a", "a"): "b", ("a", "b"): "e",
             ("b", "e"): "b", ("b", "a"): "e", ("b", "b"): "a"}
    C = FinCategory(["*"], morphisms, {"*": "e"}, table)
    with pytest.raises(ClosureError) as ei:
        dbl_from_class(C, ["e", "a"])
    assert ei.value.witness == ("a", "a")


def test_vertical_composition_agrees_with_base(finset2):
    C = finset2.category
    D = dbl_from_class(C, finset2.epis)
    for v in D.verticals():
        for w in D.verticals():
            if D.composable(w, v):
                assert D.compose(w, v) == C.comp[(w, v)]


def test_right_connected_squares_exist_in_sq(finset2):
    C = finset2.category
    S = sq(C)
    for f in C.morphisms:
        one = C.identities[C.cod[f]]
        assert (f, one) in C.squares(f, one)


def test_corrupted_square_composite_flagged():
    W = walking_arrow()
    D = to_internal(sq(W))
    # corrupt one vertical composite entry
    key = next(k for k in D.m_vert if not W.is_identity(k[0]))
    D.m_vert[key] = key[1]  # wrong: w∘v := v
    report = check_double_category(D)
    assert not report.ok
    names = {c.name for c in report.violations()}
    assert names & {"m-totality", "m-units", "m-associativity", "interchange"}


def test_double_functor_identity_ok(finset2):
    D = dbl_from_class(finset2.category, finset2.epis)
    F = inclusion_double_functor(D, D)
    assert check_double_functor(F).ok


def test_inclusion_into_sq_ok(finset2):
    D = dbl_from_class(finset2.category, finset2.epis)
    F = inclusion_double_functor(D, sq(finset2.category))
    assert check_double_functor(F).ok


def test_broken_i_preservation_flagged():
    W = walking_arrow()
    S = sq(W)
    F = inclusion_double_functor(S, S)
    # send the identity vertical on 0 somewhere else
    F.f1.obj_map["id0"] = "id1"
    F.f1.mor_map["[id0|id0]:id0=>id0"] = "[id1|id1]:id1=>id1"
    report = check_double_functor(F)
    assert not report.ok


def test_concrete_map_checker(finset2):
    D = dbl_from_class(finset2.category, finset2.epis)
    assert check_concrete_double_map(identity_double_map(D)).ok
    S = sq(finset2.category)
    incl = ConcreteDoubleMap(D, S, {v: v for v in D.verticals()})
    assert check_concrete_double_map(incl).ok
    # map over the wrong base morphism is flagged
    bad_map = {v: v for v in D.verticals()}
    e = next(v for v in D.verticals()
             if not finset2.category.is_identity(v))
    bad_map[e] = finset2.category.identities[finset2.category.dom[e]]
    report = check_concrete_double_map(ConcreteDoubleMap(D, S, bad_map))
    assert not report.ok
