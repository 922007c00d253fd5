import logging

from forest_cycles import (boundary, d, phi, phi_tree, tau_trees, tree_sum,
                           verify_chain_map)
from forest_cycles.forest_algebra import forest_sum
from helpers import (csum, forest, left_comb3, lf, nd, om, quiet_cycling_log,
                     right_comb3, tr, two_leaf_tree, xspec)


def test_image_of_two_leaf_tree():
    t = phi_tree(two_leaf_tree())
    assert list(t.coords) == [om(u1=-1), om(x1=-1, u1=1), om(x2=-1, u1=1)]


def test_image_keeps_display_edge_order():
    # one fresh parameter per internal vertex, numbered in preorder
    assert list(phi_tree(left_comb3()).coords) == [
        om(u1=-1), om(u1=1, u2=-1), om(x1=-1, u2=1),
        om(x2=-1, u2=1), om(x3=-1, u1=1)]
    assert list(phi_tree(right_comb3()).coords) == [
        om(u1=-1), om(x1=-1, u1=1), om(u1=1, u2=-1),
        om(x2=-1, u2=1), om(x3=-1, u2=1)]


def test_phi_canonicalizes_terms():
    S = phi(tree_sum(two_leaf_tree()))
    assert S == csum(([om(u1=-1), om(x1=-1, u1=1), om(x2=-1, u1=1)], 1))


def test_phi_numbers_parameters_across_forest():
    F = forest(tr("1", nd(lf("x1"), lf("x2"))), tr("1", nd(lf("x3"), lf("x4"))))
    with quiet_cycling_log():
        S = phi(forest_sum([(F, 1)]))
    (t, c), = S.items()
    assert c == 1
    assert t.n == 6
    assert len(t.params) == 2


def test_phi_empty_on_unit_root_edge_only():
    # a bare edge tree has no internal vertex and a one-coordinate image
    t = phi_tree(tr("1", lf("x1")))
    assert t.n == 1
    assert list(t.coords) == [om(x1=-1)]


def test_phi_warns_on_nongeneric_input(caplog):
    F = forest(tr("1", lf("x1")), tr("x1", lf("x2")))
    with caplog.at_level(logging.WARNING, logger="forest_cycles.forest_cycling"):
        S = phi(forest_sum([(F, 1)]))
    assert any("non-generic" in r.message for r in caplog.records)
    assert not S.is_zero()


def test_chain_map_on_small_trees():
    with quiet_cycling_log():
        for T in (two_leaf_tree(), left_comb3(), right_comb3()):
            rep = verify_chain_map(T)
            assert rep.passed
            assert rep.difference.is_zero()
            assert rep.lhs == rep.rhs


def test_chain_map_identity_directly():
    T = left_comb3()
    with quiet_cycling_log():
        assert phi(d(tree_sum(T))) == boundary(phi(tree_sum(T)))


def test_images_of_tree_sum_terms_stay_distinct():
    # canonical relabeling must not merge distinct tree images
    spec = xspec(4)
    images = [phi(tree_sum(T)) for T in tau_trees(spec)]
    terms = [S.terms()[0] for S in images]
    assert len(set(terms)) == 5
    for S in images:
        (_, c), = S.items()
        # canonical relabeling may flip orientation but never the weight
        assert c in (1, -1)
