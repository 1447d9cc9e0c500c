"""Atom theory: maximally informative elements, classification, and the
representation of an atomic algebra inside the power set of its atoms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import AlgebraMorphism, InfoAlgebra, is_homomorphism
from .equivalence import Equivalence, saturate
from .errors import CapExceeded, PreconditionError, StructureError
from .order import (BoundedJoinSemilattice, FinitePoset, bits, complements, glb_of_set,
                    is_distributive, mask_of, try_lattice)
from .report import Report

ATOM_POWERSET_LIMIT = 10


def atoms(a: InfoAlgebra) -> tuple[int, ...]:
    """Nonzero elements whose only strict upper bound is the contradiction."""
    want = lambda x: a.poset.up[x] == (1 << x) | (1 << a.zero)
    return tuple(x for x in range(a.n) if x != a.zero and want(x))


def at_mask(a: InfoAlgebra, atom_list, x: int) -> int:
    """Mask over atom positions of the atoms at or above x."""
    return mask_of(i for i, al in enumerate(atom_list) if a.le(x, al))


@dataclass(frozen=True)
class AtomReport:
    atoms: tuple[int, ...]
    at: tuple[int, ...]              # per carrier element, mask over atom positions
    atomic: bool
    atomistic: bool
    completely_atomistic: bool


def classify(a: InfoAlgebra) -> AtomReport:
    """Atomic / atomistic / completely atomistic classification.

    Atomistic means the greatest lower bound of At(x) exists in the poset
    and equals x, for every nonzero x; completely atomistic additionally
    realizes every nonempty atom set as some At(x).
    """
    ats = atoms(a)
    at = tuple(at_mask(a, ats, x) for x in range(a.n))
    nonzero = [x for x in range(a.n) if x != a.zero]
    atomic = all(at[x] != 0 for x in nonzero)
    atomistic = all(glb_of_set(a.poset, mask_of(ats[i] for i in bits(at[x]))) == x
                    for x in nonzero)
    completely = False
    if atomistic:
        realized = {at[x] for x in nonzero}
        completely = all(m in realized for m in range(1, 1 << len(ats)))
    return AtomReport(ats, at, atomic, atomistic, completely)


@dataclass(frozen=True)
class AtomRepresentation:
    atoms: tuple[int, ...]
    target: InfoAlgebra              # full power set of the atoms
    morphism: AlgebraMorphism        # x -> At(x), label -> same label
    is_embedding: bool
    is_isomorphism: bool


def atom_representation(a: InfoAlgebra) -> AtomRepresentation:
    """Map an atomic algebra into the power set of its atoms.

    The target carrier index coincides with the atom-set mask, ordered by
    reverse inclusion; the extractors are the saturations of the kernels
    restricted to the atoms. Always a homomorphism; an embedding exactly
    when the source is atomistic; onto exactly when completely atomistic.
    """
    report = classify(a)
    if not report.atomic:
        bad = next(x for x in range(a.n) if x != a.zero and report.at[x] == 0)
        raise PreconditionError(f"not atomic: element {bad} lies below no atom",
                                witness=bad)
    ats = report.atoms
    m = len(ats)
    if m > ATOM_POWERSET_LIMIT:
        raise CapExceeded(f"power set of {m} atoms exceeds the limit {ATOM_POWERSET_LIMIT}")
    size = 1 << m
    # carrier index == atom-set mask; up-set rows are the submasks
    up = []
    for i in range(size):
        row = 0
        sub = i
        while True:
            row |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & i
        up.append(row)
    join = tuple(tuple(i & j for j in range(size)) for i in range(size))
    sl = BoundedJoinSemilattice(FinitePoset(size, tuple(up)), join, size - 1, 0)
    restricted = [Equivalence(m, [a.apply(k, al) for al in ats])
                  for k in range(len(a.extractors))]
    extractors = tuple(tuple(saturate(eq, i) for i in range(size)) for eq in restricted)
    ks = range(len(a.extractors))
    composition = tuple(tuple(a.compose_label(k, l) for l in ks) for k in ks)
    target = InfoAlgebra(sl, extractors, a.labels, composition)
    morphism = AlgebraMorphism(tuple(report.at), tuple(ks))
    hom = is_homomorphism(morphism, a, target, check_meets=False)
    if not hom.ok:
        raise StructureError("atom representation is not a homomorphism:\n" + hom.format(),
                             report=hom)
    injective = len(set(morphism.f)) == a.n
    onto = len(set(morphism.f)) == size
    return AtomRepresentation(ats, target, morphism, injective, injective and onto)


def check_complete_atomistic_boolean(a: InfoAlgebra, max_subset: int = 3) -> Report:
    """Consequences of complete atomisticity: the carrier is a Boolean lattice
    and x -> At(x) preserves joins, meets and complements.

    Joins are checked over every carrier subset of size <= max_subset
    (finiteness makes the bounded check exact in spirit: larger joins are
    folds of smaller ones), meets over all pairs, complements elementwise.
    """
    report = classify(a)
    if not report.completely_atomistic:
        raise PreconditionError("not completely atomistic")
    ats, at = report.atoms, report.at
    full = (1 << len(ats)) - 1
    out = Report()

    lat = try_lattice(a.sl)
    out.add("meets_exist", lat is not None)
    if lat is None:
        return out
    ok, w = is_distributive(lat)
    out.add("distributive", ok, w)
    comp, missing = complements(lat)
    out.add("complemented", comp is not None, missing)

    w = None
    for size in range(max_subset + 1):
        for xs in combinations(range(a.n), size):
            j = a.unit
            expected = full
            for x in xs:
                j = a.join(j, x)
                expected &= at[x]
            if at[j] != expected:
                w = xs
                break
        if w:
            break
    out.add("at_preserves_joins", w is None, w)

    w = next(((x, y) for x in range(a.n) for y in range(a.n)
              if at[lat.meet[x][y]] != at[x] | at[y]), None)
    out.add("at_preserves_meets", w is None, w)

    if comp is not None:
        w = next((x for x in range(a.n) if at[comp[x]] != full & ~at[x]), None)
        out.add("at_preserves_complements", w is None, w)
    return out
