from itertools import combinations

import pytest

from infalg.algebra import extraction_image, make_algebra, verify_axioms
from infalg.atoms import (AtomRepresentation, atom_representation, atoms,
                          check_complete_atomistic_boolean, classify)
from infalg.equivalence import Equivalence, commutation_witness, saturate
from infalg.errors import PreconditionError
from infalg.generators import string_elements
from infalg.order import chain_poset


def test_atoms_two_chain():
    a = make_algebra(chain_poset(2), [(0, 1)])
    assert atoms(a) == (0,)


def test_atoms_string22(string22):
    names = string_elements(2, 2)
    assert [names[x] for x in atoms(string22)] == ["aa", "ab", "ba", "bb"]


def test_atoms_multivariate_are_singletons(mv22_algebra):
    # carrier index equals the subset mask of the universe
    assert atoms(mv22_algebra) == (1, 2, 4, 8)


def test_classify_multivariate(mv22_algebra):
    rep = classify(mv22_algebra)
    assert rep.atomic and rep.atomistic and rep.completely_atomistic


def test_classify_string(string22, string23):
    for a in (string22, string23):
        rep = classify(a)
        assert rep.atomic and rep.atomistic and not rep.completely_atomistic


def test_classify_two_chain_vacuously_complete():
    a = make_algebra(chain_poset(2), [(0, 1)])
    rep = classify(a)
    assert rep.atomic and rep.atomistic and rep.completely_atomistic
    assert rep.atoms == (0,)


def test_classification_implications(generated_suite):
    for a in generated_suite.values():
        rep = classify(a)
        if rep.completely_atomistic:
            assert rep.atomistic
        if rep.atomistic:
            assert rep.atomic


def test_atom_representation_multivariate_iso(mv22_algebra):
    rep = atom_representation(mv22_algebra)
    assert rep.is_embedding and rep.is_isomorphism


def test_atom_representation_string_embeds_not_onto(string22):
    rep = atom_representation(string22)
    assert rep.is_embedding and not rep.is_isomorphism
    realized = set(rep.morphism.f)
    unrealized = [m for m in range(1, 1 << len(rep.atoms)) if m not in realized]
    assert unrealized
    # atoms with different first letters are never the atom set of one string
    names = string_elements(2, 2)
    pos = {names[x]: i for i, x in enumerate(rep.atoms)}
    assert (1 << pos["aa"]) | (1 << pos["bb"]) in unrealized


def test_atom_representation_matches_classification(generated_suite):
    for a in generated_suite.values():
        rep = classify(a)
        if not rep.atomic:
            continue
        ar = atom_representation(a)
        assert ar.is_embedding == rep.atomistic
        assert ar.is_isomorphism == rep.completely_atomistic


def test_finite_algebras_are_atomic(generated_suite):
    # every nonzero element of a finite carrier lies below a maximal nonzero
    # element, so the non-atomic rejection path cannot fire at desk scale
    from infalg.generators import enumerate_algebras

    for a in generated_suite.values():
        assert classify(a).atomic
    for a in enumerate_algebras(4):
        assert classify(a).atomic


def test_at_of_combination_is_intersection(generated_suite):
    for a in generated_suite.values():
        rep = classify(a)
        for x in range(a.n):
            for y in range(a.n):
                assert rep.at[a.join(x, y)] == rep.at[x] & rep.at[y]
        assert rep.at[a.unit] == (1 << len(rep.atoms)) - 1
        assert rep.at[a.zero] == 0


def test_atom_combination_dichotomy(generated_suite):
    # an atom absorbs anything below it and annihilates everything else
    for a in generated_suite.values():
        for alpha in atoms(a):
            for x in range(a.n):
                j = a.join(alpha, x)
                assert j in (alpha, a.zero)
                if j == alpha:
                    assert a.le(x, alpha)
        for alpha in atoms(a):
            for beta in atoms(a):
                if alpha != beta:
                    assert a.join(alpha, beta) == a.zero


def test_extraction_preserves_atoms(generated_suite):
    for a in generated_suite.values():
        if not classify(a).atomic:
            continue
        ats = set(atoms(a))
        for k in range(len(a.extractors)):
            sub, incl = extraction_image(a, k)
            image_atoms = {incl.f[x] for x in atoms(sub)}
            assert image_atoms == {a.apply(k, al) for al in ats}


def test_restricted_kernels_commute(generated_suite):
    for a in generated_suite.values():
        ats = atoms(a)
        restricted = [Equivalence(len(ats), [a.apply(k, al) for al in ats])
                      for k in range(len(a.extractors))]
        for t in restricted:
            for u in restricted:
                assert commutation_witness(t, u) is None


def test_restricted_saturation_of_at_is_at_of_image(generated_suite):
    for a in generated_suite.values():
        rep = classify(a)
        ats = rep.atoms
        for k in range(len(a.extractors)):
            eq = Equivalence(len(ats), [a.apply(k, al) for al in ats])
            for x in range(a.n):
                assert saturate(eq, rep.at[x]) == rep.at[a.apply(k, x)]


def test_atom_representation_is_homomorphism_on_suite(generated_suite):
    for a in generated_suite.values():
        if classify(a).atomic:
            ar = atom_representation(a)
            assert isinstance(ar, AtomRepresentation)
            assert verify_axioms(ar.target).ok


def test_boolean_consequences_multivariate(mv22_algebra):
    report = check_complete_atomistic_boolean(mv22_algebra)
    assert report.ok, report.format()


def test_boolean_consequences_two_chain():
    a = make_algebra(chain_poset(2), [(0, 1)])
    assert check_complete_atomistic_boolean(a).ok


def test_boolean_consequences_requires_complete(string22):
    with pytest.raises(PreconditionError):
        check_complete_atomistic_boolean(string22)


def test_at_join_check_covers_triples(mv22_algebra):
    # independent oracle for the join preservation item: all triples
    rep = classify(mv22_algebra)
    full = (1 << len(rep.atoms)) - 1
    a = mv22_algebra
    for xs in combinations(range(a.n), 3):
        j = a.unit
        expected = full
        for x in xs:
            j = a.join(j, x)
            expected &= rep.at[x]
        assert rep.at[j] == expected
