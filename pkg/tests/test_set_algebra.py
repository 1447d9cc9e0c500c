import pytest

from infalg.algebra import is_isomorphism, verify_axioms
from infalg.equivalence import Equivalence, commutation_witness, saturate, star_family
from infalg.errors import NotDirectedError, StructureError
from infalg.set_algebra import (build_block_union_algebra, build_set_algebra,
                                principal_upset_representation)

GRID_ROWS = Equivalence.from_blocks(4, [[0, 1], [2, 3]])
GRID_COLS = Equivalence.from_blocks(4, [[0, 2], [1, 3]])


def test_two_element_set_algebra():
    eqs = star_family([Equivalence.all_relation(3)])
    sa = build_set_algebra(3, (0, 0b111), eqs)
    a = sa.to_info_algebra()
    assert a.n == 2
    assert verify_axioms(a).ok


def test_multivariate_is_set_algebra(multivariate22):
    a = multivariate22.to_info_algebra()
    assert a.n == 16
    assert verify_axioms(a).ok


def test_missing_saturation_rejected():
    theta = Equivalence.from_blocks(3, [[0, 1], [2]])
    eqs = star_family([theta])
    with pytest.raises(StructureError) as err:
        build_set_algebra(3, (0, 0b001, 0b111), eqs)
    assert not err.value.report.witness("saturation_compatible") is None


def test_intersection_gap_rejected():
    eqs = star_family([Equivalence.identity(2)], n=2)
    with pytest.raises(StructureError) as err:
        build_set_algebra(2, (0b01, 0b10, 0b11), eqs)
    report = err.value.report
    assert not report.ok
    assert report.witness("intersection_closed") == (0b01, 0b10)


def test_block_union_identity_gives_power_set():
    eqs = star_family([Equivalence.identity(3)])
    sa = build_block_union_algebra(eqs)
    assert sa.family == tuple(range(8))


def test_block_union_rejects_undirected():
    eqs = star_family([GRID_ROWS, GRID_COLS, Equivalence.all_relation(4)])
    with pytest.raises(NotDirectedError) as err:
        build_block_union_algebra(eqs)
    assert err.value.witness == (0, 1)


def test_block_union_with_identity_accepted():
    eqs = star_family([Equivalence.identity(4), GRID_ROWS, GRID_COLS,
                       Equivalence.all_relation(4)])
    sa = build_block_union_algebra(eqs)
    assert sa.family == tuple(range(16))
    assert verify_axioms(sa.to_info_algebra()).ok


def test_representation_two_chain():
    from infalg.algebra import make_algebra
    from infalg.order import chain_poset

    a = make_algebra(chain_poset(2), [(0, 1)])
    rep = principal_upset_representation(a)
    assert rep.ground == (0,)
    assert rep.set_algebra.family == (0, 1)


def test_representation_string22(string22):
    rep = principal_upset_representation(string22)
    assert len(rep.ground) == 7
    assert len(rep.set_algebra.family) == 8
    assert is_isomorphism(rep.morphism, string22, rep.algebra)


def test_representation_saturation_of_upset_is_upset_of_image(generated_suite):
    # saturating a truncated principal up-set lands on the up-set of the
    # extracted element, for every extractor and element
    for a in generated_suite.values():
        rep = principal_upset_representation(a)
        pos = {x: i for i, x in enumerate(rep.ground)}

        def upset_mask(x):
            return sum(1 << pos[y] for y in rep.ground if a.le(x, y))

        for k, theta in enumerate(rep.set_algebra.eqs.members):
            for x in rep.ground:
                assert saturate(theta, upset_mask(x)) == upset_mask(a.apply(k, x))


def test_representation_order_is_reverse_inclusion(generated_suite):
    for a in generated_suite.values():
        rep = principal_upset_representation(a)
        fam = rep.set_algebra.family
        b = rep.algebra
        for i in range(b.n):
            for j in range(b.n):
                assert b.le(i, j) == (fam[j] & ~fam[i] == 0)


def test_representation_kernels_form_closed_family(generated_suite):
    for a in generated_suite.values():
        rep = principal_upset_representation(a)
        assert rep.set_algebra.eqs.closed
        members = rep.set_algebra.eqs.members
        for t in members:
            for u in members:
                assert commutation_witness(t, u) is None


def test_representation_round_trip(generated_suite):
    # rebuilding the set algebra of the representation is again isomorphic
    for a in generated_suite.values():
        rep = principal_upset_representation(a)
        again = build_set_algebra(rep.set_algebra.n, rep.set_algebra.family,
                                  rep.set_algebra.eqs)
        assert is_isomorphism(rep.morphism, a, again.to_info_algebra())
