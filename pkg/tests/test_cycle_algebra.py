import pytest

from forest_cycles import (OutOfClassError, boundary, concat, dimension,
                           face, is_admissible, normalize)
from forest_cycles.cycle_algebra import (cycle_sum, face_outcome, unit_sum)
from forest_cycles.formal import FormalSum
from helpers import bare, csum, ct, om


def _ca(const="a"):
    # [t, 1-t, 1-a/t] with t the first algebraic parameter
    return [bare(u1=1), om(u1=1), om(**{const: 1, "u1": -1})]


def test_normalize_kills_unit_monomial_coordinate():
    assert normalize([om()]) is None
    assert normalize([om(a=1), bare()]) is None


def test_normalize_kills_equal_coordinates():
    assert normalize([om(a=1), om(a=1)]) is None
    assert csum(([om(a=1, u1=1), om(a=1, u1=1)], 1)).is_zero()


def test_normalize_kills_orientation_reversing_symmetry():
    # swapping the two parameters reproduces the term with odd parity
    assert normalize([om(u1=1), om(u2=1)]) is None


def test_normalize_relabels_parameters_canonically():
    t, sign = normalize([om(u7=1, a=1), om(u7=-1, b=1)])
    names = {s.name for c in t.coords for s, _ in c.q.exps if s.kind == "param"}
    assert names == {"u1"}
    assert sign in (1, -1)


def test_normalize_sorting_tracks_parity():
    assert csum(([om(b=1), om(a=1)], 1)) == csum(([om(a=1), om(b=1)], -1))


def test_normalize_idempotent():
    t, _ = normalize(_ca())
    again, sign = normalize(t.coords)
    assert again == t
    assert sign == 1


def test_dimension_counts_parameters():
    assert dimension(ct(om(a=1), om(b=1))) == 0
    t, _ = normalize(_ca())
    assert dimension(t) == 1


def test_boundary_of_one_parameter_line_fixture():
    S = csum((_ca(), 1))
    got = boundary(S)
    assert got == csum(([bare(a=1), om(a=1)], 1))
    assert boundary(got).is_zero()


def test_boundary_of_two_parameter_fixture():
    # [1-1/u, 1-u*a*b, 1-u*b] against its known three-term boundary
    S = csum(([om(u1=-1), om(u1=1, a=1, b=1), om(u1=1, b=1)], 1))
    want = csum(
        ([om(a=1, b=1), om(b=1)], 1),
        ([om(a=1, b=1), om(a=-1)], -1),
        ([om(b=1), om(a=1)], 1),
    )
    got = boundary(S)
    assert got == want
    assert boundary(got).is_zero()


def test_zero_face_solves_for_unit_exponent_pivot():
    out = face(ct(om(u1=1, a=1)), 1, 0)
    assert out == unit_sum()


def test_face_empty_when_only_constants():
    assert face(ct(om(a=1, b=1)), 1, 0).is_zero()


def test_face_empty_for_single_topological_variable():
    assert face(ct(om(s1=1, a=1)), 1, 0).is_zero()


def test_zero_face_rejects_nonunit_pivot_exponent():
    with pytest.raises(OutOfClassError):
        face(ct(om(u1=2, a=1)), 1, 0)


def test_zero_face_rejects_two_topological_variables():
    with pytest.raises(OutOfClassError):
        face(ct(om(s1=1, s2=-1)), 1, 0)


def test_infinity_face_flags_blowup():
    t, _ = normalize([bare(u1=1), om(u1=1)])
    with pytest.raises(OutOfClassError):
        face(t, t.coords.index(om(u1=1)) + 1, "inf")
    out = face_outcome(t, t.coords.index(om(u1=1)) + 1, "inf")
    assert out.flags


def test_empty_limit_dominates_blowup():
    # in the full line fixture the 1-a/u coordinate goes to 1 first
    t, _ = normalize(_ca())
    i = t.coords.index(bare(u1=1)) + 1
    assert face(t, i, "inf").is_zero()


def test_face_index_out_of_range():
    with pytest.raises(ValueError):
        face(ct(om(a=1)), 2, 0)


def test_boundary_squared_on_monomial_terms():
    # shapes mirror tree images: every degeneration direction hits the
    # removed point 1 in some coordinate before a blow-up occurs
    for coords in (
        [om(u1=1, a=1), om(u1=1, b=1), om(u1=-1, a=1)],
        [om(u1=-1), om(u1=1, a=-1), om(u1=1, u2=-1), om(u2=1, b=-1)],
        [om(u1=-1, a=1), om(u1=1, b=1), om(u1=1, c=1)],
    ):
        S = cycle_sum([(coords, 1)])
        assert boundary(boundary(S)).is_zero()


def test_concat_unit_and_antisymmetry():
    A = csum(([om(a=1)], 1))
    B = csum(([om(b=1)], 1))
    assert concat(A, unit_sum()) == A
    assert concat(A, B) == concat(B, A).scale(-1)
    assert concat(A, A).is_zero()


def test_concat_renames_clashing_parameters():
    A = csum(([om(u1=1, a=1), om(u1=-1)], 1))
    B = csum(([om(u1=1, b=1), om(u1=-1)], 1))
    prod = concat(A, B)
    (t, _), = prod.items()
    assert dimension(t) == 2


def test_concat_boundary_derivation():
    A = csum((_ca("a"), 1))
    B = csum((_ca("b"), 1))
    nA = A.terms()[0].n
    lhs = boundary(concat(A, B))
    rhs = concat(boundary(A), B) + concat(A, boundary(B)).scale((-1) ** nA)
    assert lhs == rhs


def test_admissibility_of_line_fixture():
    t, _ = normalize(_ca())
    rep = is_admissible(t)
    assert rep.admissible
    assert rep.faces_checked > 0
    assert rep.certificate == ()


def test_admissibility_violation_reports_chain():
    t, _ = normalize([om(u1=1, a=1), om(u1=-1, a=-1)])
    rep = is_admissible(t)
    assert not rep.admissible
    assert rep.certificate


def test_admissibility_raises_outside_class():
    t, _ = normalize([om(u1=2, a=1)])
    with pytest.raises(OutOfClassError):
        is_admissible(t)


def test_formal_sum_algebra():
    A = csum(([om(a=1)], 1))
    assert (A - A).is_zero()
    assert (A + A) == A.scale(2)
    assert len(A) == 1
    assert not FormalSum().terms()
