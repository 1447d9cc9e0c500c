from itertools import combinations

import pytest

from infalg.errors import FormatError, StructureError
from infalg.generators import enumerate_lattices, gen_string, string_elements
from infalg.order import (FinitePoset, antichain_poset, bits, chain_lattice, chain_poset,
                          complements, diamond_m3, glb, is_distributive, lub,
                          meet_irreducibles, pentagon_n5, powerset_lattice,
                          principal_up_set, semilattice_from_poset, try_lattice, up_sets,
                          verify_poset, verify_semilattice)


def test_verify_poset_singleton():
    assert verify_poset([[True]]).ok


def test_verify_poset_antisymmetry_witness():
    report = verify_poset([[True, True], [True, True]])
    assert not report.ok
    assert report.witness("antisymmetric") == (0, 1)


def test_verify_poset_three_chain():
    rows = [[True, True, True], [False, True, True], [False, False, True]]
    assert verify_poset(rows).ok


def test_verify_poset_transitivity_witness():
    rows = [[True, True, False], [False, True, True], [False, False, True]]
    report = verify_poset(rows)
    assert report.witness("transitive") == (0, 1, 2)


def test_verify_poset_rejects_non_square():
    with pytest.raises(FormatError):
        verify_poset([[True, True], [True]])


def test_lub_two_chain():
    sl = semilattice_from_poset(chain_poset(2))
    assert lub(sl, sl.unit, sl.zero) == sl.zero


def test_lub_unit_neutral():
    for lat in (chain_lattice(4), powerset_lattice(2), diamond_m3()):
        sl = lat.sl
        for a in range(sl.n):
            assert lub(sl, a, sl.unit) == a


def test_lub_detects_inconsistent_table():
    sl = semilattice_from_poset(chain_poset(3))
    broken = sl.__class__(sl.poset, ((0, 1, 2), (1, 1, 2), (2, 2, 1)), sl.unit, sl.zero)
    with pytest.raises(StructureError):
        lub(broken, 2, 2)


def test_glb_string_longest_common_prefix():
    a = gen_string(2, 2)
    names = string_elements(2, 2)
    idx = {s: i for i, s in enumerate(names)}
    # oracle: definition-level scan for the greatest common lower bound
    x, y = idx["ab"], idx["aa"]
    lowers = [c for c in range(a.n) if a.le(c, x) and a.le(c, y)]
    greatest = [c for c in lowers if all(a.le(d, c) for d in lowers)]
    assert greatest == [idx["a"]]
    assert glb(a.poset, x, y) == idx["a"]


def test_glb_missing_returns_none():
    # two incomparable points with no common lower bound
    poset = antichain_poset(2)
    assert glb(poset, 0, 1) is None


def test_chains_distributive():
    for m in range(1, 6):
        ok, _ = is_distributive(chain_lattice(m))
        assert ok


def test_diamond_not_distributive():
    ok, witness = is_distributive(diamond_m3())
    assert not ok
    assert witness is not None


def test_string_lattice_not_distributive():
    a = gen_string(2, 2)
    lat = try_lattice(a.sl)
    assert lat is not None
    ok, witness = is_distributive(lat)
    assert not ok
    a_, b, c = witness
    join, meet = lat.sl.join, lat.meet
    assert meet[a_][join[b][c]] != join[meet[a_][b]][meet[a_][c]]


def test_complements_two_chain():
    cmap, missing = complements(chain_lattice(2))
    assert missing is None
    assert cmap == {0: 1, 1: 0}


def test_complements_three_chain_missing_middle():
    cmap, missing = complements(chain_lattice(3))
    assert cmap is None
    assert missing == 1


def test_complements_powerset_is_set_complement():
    lat = powerset_lattice(2)
    cmap, missing = complements(lat)
    assert missing is None
    full = 3
    assert cmap == {m: full ^ m for m in range(4)}


def test_pentagon_complemented_but_not_distributive():
    lat = pentagon_n5()
    assert complements(lat)[0] is not None
    assert not is_distributive(lat)[0]


def test_meet_irreducibles_three_chain():
    assert meet_irreducibles(chain_lattice(3)) == [0, 1]


def test_meet_irreducibles_boolean_four():
    lat = powerset_lattice(2)
    # in information order the two singleton subsets are the irreducibles
    assert meet_irreducibles(lat) == [1, 2]


def test_meet_irreducibles_two_chain():
    assert meet_irreducibles(chain_lattice(2)) == [0]


def brute_up_sets(poset):
    n = poset.n
    out = []
    for size in range(n + 1):
        for xs in combinations(range(n), size):
            if all(not poset.le(a, b) or b in xs for a in xs for b in range(n)):
                out.append(sum(1 << x for x in xs))
    return sorted(out)


@pytest.mark.parametrize("poset,count", [
    (chain_poset(2), 3),
    (antichain_poset(2), 4),
    (chain_poset(3), 4),
])
def test_up_set_counts(poset, count):
    masks = up_sets(poset)
    assert len(masks) == count
    assert masks == brute_up_sets(poset)


def test_up_sets_match_brute_force_on_stock_posets():
    for poset in (chain_poset(4), antichain_poset(3), diamond_m3().poset):
        assert up_sets(poset) == brute_up_sets(poset)


def test_principal_up_set():
    poset = chain_poset(3)
    assert principal_up_set(poset, 1) == 0b110


def test_order_join_coherence():
    for lat in (chain_lattice(4), powerset_lattice(2), diamond_m3(), pentagon_n5()):
        sl = lat.sl
        for a in range(sl.n):
            for b in range(sl.n):
                assert sl.poset.le(a, b) == (sl.join[a][b] == b)


def test_birkhoff_count_on_enumerated_distributive_lattices():
    for lat in enumerate_lattices(5):
        mi = meet_irreducibles(lat)
        sub = lat.poset.restrict(mi)
        assert len(up_sets(sub)) == lat.n


def test_verify_semilattice_reports_non_associative():
    # 2-element table with a broken entry
    join = [[0, 1], [1, 0]]
    report = verify_semilattice(join, 0, 1)
    assert not report.ok


def test_finite_bounded_semilattices_always_have_meets():
    # with a least element every finite join-semilattice is a lattice,
    # so the meet completion can never fail on valid inputs
    for lat in enumerate_lattices(4, distributive_only=False):
        assert try_lattice(lat.sl) is not None


def test_semilattice_from_poset_rejects_no_bottom():
    rows = [[True, False, True], [False, True, True], [False, False, True]]
    with pytest.raises(StructureError):
        semilattice_from_poset(FinitePoset.from_bool_table(rows))


def test_bits_roundtrip():
    assert list(bits(0b10110)) == [1, 2, 4]
