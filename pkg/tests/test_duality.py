import pytest

from infalg.algebra import (AlgebraMorphism, extraction_image, identity_morphism,
                            is_distributive_cdf, is_homomorphism, make_algebra, verify_axioms)
from infalg.duality import (QMorphism, _dual, _member_arrays, boolean_diagnostics,
                            check_q_morphism, check_separating, dual_point_map, dualize,
                            dualize_morphism, double_dual_element_map, make_nontrivial_separating,
                            make_q_space, q_space_report, reconstruct, round_trip_algebra,
                            round_trip_space, sentence_commutation, sentence_saturation_upsets,
                            sentence_separation, sentence_separation_star)
from infalg.equivalence import (Equivalence, all_equivalences, commutation_witness,
                                star_family)
from infalg.errors import PreconditionError
from infalg.generators import all_labeled_posets, enumerate_algebras, enumerate_q_spaces
from infalg.order import FinitePoset, antichain_poset, chain_poset, up_sets


def chain_algebra(m, extractors=None):
    return make_algebra(chain_poset(m), extractors or [tuple(range(m))])


def delta_space(poset):
    return make_q_space(poset, star_family([Equivalence.identity(poset.n)], ["d"]))


def test_dualize_three_chain():
    space = dualize(chain_algebra(3))
    assert space.poset.n == 2
    assert space.poset.le(0, 1) and not space.poset.le(1, 0)
    assert space.eqs.members == (Equivalence.identity(2),)


def test_dualize_boolean_gives_antichain(lv_2_chain2):
    space = dualize(lv_2_chain2)
    assert space.poset.n == 2
    assert space.poset.is_antichain()


def test_dualize_lattice_valued_passes_invariants(lv_2_chain3):
    space = dualize(lv_2_chain3)
    assert q_space_report(space).ok
    assert space.eqs.closed


def test_dualize_rejects_non_distributive(string22):
    with pytest.raises(PreconditionError):
        dualize(string22)


def test_reconstruct_point_space_is_two_chain():
    a = reconstruct(delta_space(chain_poset(1)))
    assert a.n == 2
    assert verify_axioms(a).ok


def test_reconstruct_antichain_with_both_trivial_equivalences():
    poset = antichain_poset(2)
    eqs = star_family([Equivalence.identity(2), Equivalence.all_relation(2)], ["d", "v"])
    a = reconstruct(make_q_space(poset, eqs))
    assert a.n == 4
    assert len(a.extractors) == 2
    assert is_distributive_cdf(a).ok


def test_reconstruct_two_chain_space_is_three_chain():
    a = reconstruct(delta_space(chain_poset(2)))
    assert a.n == 3
    # total order: every pair comparable
    assert all(a.le(x, y) or a.le(y, x) for x in range(3) for y in range(3))


def test_round_trip_two_chain():
    rt = round_trip_algebra(chain_algebra(2))
    assert rt.target.n == 2


def test_round_trip_multivariate(mv22_algebra):
    rt = round_trip_algebra(mv22_algebra)
    assert rt.space.poset.n == 4
    assert rt.space.poset.is_antichain()
    assert rt.target.n == 16


def test_round_trip_space_point():
    rt = round_trip_space(delta_space(chain_poset(1)))
    assert rt.target.poset.n == 1


def test_round_trip_space_three_chain_nontrivial():
    poset = chain_poset(3)
    theta = make_nontrivial_separating(poset)
    assert theta is not None
    fam = star_family([Equivalence.identity(3), theta,
                       Equivalence.all_relation(3)], ["d", "t", "v"])
    rt = round_trip_space(make_q_space(poset, fam))
    assert rt.target.poset.n == 3


def test_separating_trivial_equivalences():
    for poset in (chain_poset(3), antichain_poset(3), chain_poset(4)):
        assert check_separating(poset, Equivalence.identity(poset.n))[0]
        assert check_separating(poset, Equivalence.all_relation(poset.n))[0]


def test_separating_failure_witnessed():
    # gluing the two ends of a three-chain breaks saturation of up-sets
    poset = chain_poset(3)
    theta = Equivalence.from_blocks(3, [[0, 2], [1]])
    ok, witness = check_separating(poset, theta)
    assert not ok
    assert witness == ("saturation_image", 0b100)


def test_non_separating_equivalences_exist_with_witness():
    # exhaustive search over the three-point posets: failures occur and every
    # one is witnessed; at this scale they are all saturation-image failures
    # (an equivalence whose saturations keep up-sets up-closed never leaves
    # an inequivalent pair unsplit on so few points)
    found = 0
    for poset in all_labeled_posets(3):
        for theta in all_equivalences(3):
            ok, witness = check_separating(poset, theta)
            if not ok:
                found += 1
                assert witness[0] == "saturation_image"
    assert found > 0


def test_sentences_hold_for_trivial_equivalences():
    for poset in (chain_poset(3), antichain_poset(4)):
        n = poset.n
        for theta in (Equivalence.identity(n), Equivalence.all_relation(n)):
            assert sentence_saturation_upsets(poset, theta)
            assert sentence_separation(poset, theta)
            assert sentence_commutation(theta, theta)
            assert sentence_separation_star(poset, theta, theta)


def test_sentences_grid_on_antichain():
    poset = antichain_poset(4)
    rows = Equivalence.from_blocks(4, [[0, 1], [2, 3]])
    cols = Equivalence.from_blocks(4, [[0, 2], [1, 3]])
    assert sentence_saturation_upsets(poset, rows)
    assert sentence_saturation_upsets(poset, cols)
    assert sentence_commutation(rows, cols)
    assert sentence_separation_star(poset, rows, cols)


def test_commutation_sentence_matches_witness():
    theta = Equivalence.from_blocks(4, [[0, 1], [2, 3]])
    gamma = Equivalence.from_blocks(4, [[1, 2], [0], [3]])
    assert not sentence_commutation(theta, gamma)
    assert commutation_witness(theta, gamma) is not None


def test_first_order_characterization_three_points():
    # the two sentences together are exactly the separating property
    for poset in all_labeled_posets(3):
        for theta in all_equivalences(3):
            lhs = sentence_saturation_upsets(poset, theta) and sentence_separation(poset, theta)
            assert lhs == check_separating(poset, theta)[0]


def test_pair_sentence_reduces_to_single():
    for poset in all_labeled_posets(3):
        for theta in all_equivalences(3):
            pair = sentence_separation_star(poset, theta, theta)
            single = sentence_separation(poset, theta)
            assert not pair or single
            if sentence_saturation_upsets(poset, theta):
                assert pair == single


def test_q_morphism_identity():
    space = delta_space(chain_poset(3))
    m = QMorphism((0, 1, 2), (0,))
    assert check_q_morphism(m, space, space).ok


def test_q_morphism_constant_map_fails():
    poset = chain_poset(2)
    fam = star_family([Equivalence.all_relation(2)], ["v"])
    space = make_q_space(poset, fam)
    m = QMorphism((0, 0), (0,))
    report = check_q_morphism(m, space, space)
    assert not report.ok
    assert report.witness("saturation_compatible") is not None


def test_dualize_identity_morphism(lv_2_chain3):
    a = lv_2_chain3
    qm = dualize_morphism(identity_morphism(a), a, a)
    assert list(qm.alpha) == list(range(len(qm.alpha)))
    assert list(qm.omega) == list(range(len(qm.omega)))


def inclusion_pairs(a):
    """Deduped extraction-image inclusions of a, as (morphism, sub, a)."""
    from infalg.algebra import dedupe_extractors

    out = []
    for k in range(len(a.extractors)):
        sub, incl = extraction_image(a, k)
        deduped, merge = dedupe_extractors(sub)
        g = tuple(incl.g[i] for i, arr in enumerate(sub.extractors)
                  if sub.extractors.index(arr) == i)
        out.append((AlgebraMorphism(incl.f, g), deduped, a))
    return out


def test_dual_of_inclusion_is_onto(generated_suite):
    # one-to-one algebra maps dualize to surjective point maps
    for a in generated_suite.values():
        if not is_distributive_cdf(a).ok:
            continue
        for m, sub, _ in inclusion_pairs(a):
            assert is_homomorphism(m, sub, a, check_meets=True).ok
            qm = dualize_morphism(m, sub, a)
            _, points_sub, _ = _dual(sub)
            assert set(qm.alpha) == set(range(len(points_sub)))


def test_dual_of_surjection_is_order_embedding():
    a = chain_algebra(3, [(0, 1, 2), (0, 0, 2)])
    b = chain_algebra(2)
    m = AlgebraMorphism((0, 0, 1), (0, 0))
    assert is_homomorphism(m, a, b, check_meets=True).ok
    qm = dualize_morphism(m, a, b)
    space_b, _, _ = _dual(b)
    space_a, _, _ = _dual(a)
    for p in range(space_b.poset.n):
        for q in range(space_b.poset.n):
            assert space_b.poset.le(p, q) == space_a.poset.le(qm.alpha[p], qm.alpha[q])
    assert len(set(qm.alpha)) == len(qm.alpha)


def test_double_dual_commuting_square(lv_2_chain3, mv22_algebra):
    # the reconstructed image of a dualized morphism matches the original
    # through the two round-trip isomorphisms
    pairs = []
    for a in (lv_2_chain3, mv22_algebra):
        pairs.extend(inclusion_pairs(a))
    for m, a, b in pairs:
        qm = dualize_morphism(m, a, b)
        rt_a, rt_b = round_trip_algebra(a), round_trip_algebra(b)
        lx_f = double_dual_element_map(qm, rt_a.space, rt_b.space)
        for x in range(a.n):
            assert lx_f[rt_a.morphism.f[x]] == rt_b.morphism.f[m.f[x]]


def test_compatibility_transfers_both_ways():
    # pairs (f, g) obeying the lattice and semigroup laws satisfy the
    # extraction law exactly when their double duals do
    a = chain_algebra(3, [(0, 1, 2), (0, 0, 2)])
    b = a
    space, points, _ = _dual(a)
    checked_bad = checked_good = 0
    from itertools import product

    for f in product(range(3), repeat=3):
        if f[a.unit] != b.unit or f[a.zero] != b.zero:
            continue
        if any(f[a.join(x, y)] != b.join(f[x], f[y]) for x in range(3) for y in range(3)):
            continue
        lat_ok = all(f[min(x, y)] == min(f[x], f[y]) for x in range(3) for y in range(3))
        if not lat_ok:
            continue
        for g in product(range(2), repeat=2):
            if any(g[a.compose_label(k, l)] != b.compose_label(g[k], g[l])
                   for k in range(2) for l in range(2)):
                continue
            compat = all(f[a.apply(k, x)] == b.apply(g[k], f[x])
                         for k in range(2) for x in range(3))
            alpha = dual_point_map(f, a, b, points, points)
            qm = QMorphism(alpha, tuple(g))
            dual_compat = check_q_morphism(qm, space, space).witness("saturation_compatible") is None
            assert compat == dual_compat
            checked_bad += not compat
            checked_good += compat
    assert checked_good and checked_bad


def test_boolean_diagnostics(lv_2_chain2):
    report = boolean_diagnostics(lv_2_chain2)
    assert report.ok
    assert dualize(lv_2_chain2).poset.n == 2


def test_boolean_diagnostics_two_chain():
    assert boolean_diagnostics(chain_algebra(2)).ok


def test_boolean_diagnostics_rejects_three_chain():
    with pytest.raises(PreconditionError):
        boolean_diagnostics(chain_algebra(3))


def test_make_nontrivial_separating_three_chain():
    theta = make_nontrivial_separating(chain_poset(3))
    assert theta == Equivalence.from_blocks(3, [[1, 2], [0]])
    assert check_separating(chain_poset(3), theta)[0]
    assert not theta.is_identity() and not theta.is_all()


def test_make_nontrivial_separating_antichain_falls_back():
    theta = make_nontrivial_separating(antichain_poset(4))
    assert theta is not None
    assert not theta.is_identity() and not theta.is_all()
    assert check_separating(antichain_poset(4), theta)[0]


def test_make_nontrivial_separating_two_chain_none():
    assert make_nontrivial_separating(chain_poset(2)) is None


def test_make_nontrivial_separating_rejects_singleton():
    with pytest.raises(PreconditionError):
        make_nontrivial_separating(chain_poset(1))


def test_saturations_compose_along_extractor_labels(generated_suite):
    # the dual saturations on up-sets form a semigroup matching composition
    for a in generated_suite.values():
        if not is_distributive_cdf(a).ok:
            continue
        space, _, _ = _dual(a)
        arrays = _member_arrays(space)
        for k in range(len(arrays)):
            for l in range(len(arrays)):
                composed = tuple(arrays[k][arrays[l][i]] for i in range(len(arrays[k])))
                assert composed == arrays[a.compose_label(k, l)]


def test_dual_saturations_distinct(generated_suite):
    # distinct extractors induce distinct saturations already on up-sets
    for a in generated_suite.values():
        if not is_distributive_cdf(a).ok:
            continue
        space, _, _ = _dual(a)
        arrays = _member_arrays(space)
        assert len(set(arrays)) == len(arrays)


def test_kernel_class_witness_on_duals(generated_suite):
    # whenever an extracted element sits inside a principal prime ideal,
    # some equivalent ideal contains the original element
    for a in generated_suite.values():
        if not is_distributive_cdf(a).ok:
            continue
        space, points, _ = _dual(a)
        for k in range(len(a.extractors)):
            theta = space.eqs.members[k]
            for x in range(a.n):
                for p in range(len(points)):
                    if a.le(a.apply(k, x), points[p]):
                        assert any(theta.relates(p, q) and a.le(x, points[q])
                                   for q in range(len(points)))


def test_trace_inclusion_matches_membership_transfer(generated_suite):
    for a in generated_suite.values():
        if not is_distributive_cdf(a).ok:
            continue
        space, points, _ = _dual(a)
        usets = up_sets(space.poset)
        for k in range(len(a.extractors)):
            theta = space.eqs.members[k]
            from infalg.equivalence import saturate

            sat_usets = [u for u in usets if saturate(theta, u) == u]
            image = set(a.extractors[k])
            traces = [frozenset(e for e in image if a.le(e, p)) for p in points]
            for p in range(len(points)):
                for q in range(len(points)):
                    incl = traces[p] <= traces[q]
                    transfer = all((u >> q) & 1 for u in sat_usets if (u >> p) & 1)
                    assert incl == transfer


def test_enumerated_round_trips_sample():
    for i, a in enumerate(enumerate_algebras(4)):
        round_trip_algebra(a)
    count = 0
    for s in enumerate_q_spaces(3):
        round_trip_space(s)
        count += 1
    assert count > 0


def test_dual_family_can_fail_to_commute():
    # diamond with a pendant top and its two one-sided retractions: a fully
    # verified distributive algebra whose dual trace equivalences do not
    # commute as relations; the round trip is an isomorphism regardless.
    # This pins a divergence between the family-level relational claim and
    # what reconstruction actually needs (the saturations on up-sets).
    rows = [[True, True, True, True, True],
            [False, True, False, True, True],
            [False, False, True, True, True],
            [False, False, False, True, True],
            [False, False, False, False, True]]
    # order: 0 < 1,2 < 3 < 4 where 0=unit, 4=zero
    poset = FinitePoset.from_bool_table(rows)
    a = make_algebra(poset, [(0, 1, 0, 1, 4), (0, 0, 2, 2, 4), (0, 0, 0, 0, 4),
                             (0, 1, 2, 3, 4)])
    assert verify_axioms(a).ok
    assert is_distributive_cdf(a).ok
    space = dualize(a)
    assert not space.eqs.closed
    i, j = 0, 1
    assert commutation_witness(space.eqs.members[i], space.eqs.members[j]) is not None
    assert not sentence_commutation(space.eqs.members[i], space.eqs.members[j])
    rt = round_trip_algebra(a)
    assert rt.target.n == a.n
