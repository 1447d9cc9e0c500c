"""Concrete set algebras: intersection-closed subset families with saturation
operators of a compatible star-semigroup of equivalences.

Information order on subsets is reverse inclusion; combination is set
intersection, the unit is the full universe, the zero is the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraMorphism, InfoAlgebra, is_isomorphism
from .equivalence import Equivalence, StarFamily, saturate, star_family
from .errors import CapExceeded, NotDirectedError, StructureError
from .order import BoundedJoinSemilattice, FinitePoset, bits, mask_of
from .report import Report


@dataclass(frozen=True)
class SetAlgebra:
    n: int
    family: tuple[int, ...]
    eqs: StarFamily

    def index_of(self, mask: int) -> int:
        return self.family.index(mask)

    def to_info_algebra(self) -> InfoAlgebra:
        """The abstract algebra: carrier indexed by family position.

        The label-level composition table comes from star products when the
        family is closed; otherwise the composed saturation arrays are
        resolved against the listed ones, which requires them to be
        pairwise distinct (separating members always are).
        """
        fam = self.family
        m = len(fam)
        pos = {mask: i for i, mask in enumerate(fam)}
        up = tuple(mask_of(j for j in range(m) if fam[j] & ~fam[i] == 0)
                   for i in range(m))
        join = tuple(tuple(pos[fam[i] & fam[j]] for j in range(m)) for i in range(m))
        full = (1 << self.n) - 1
        sl = BoundedJoinSemilattice(FinitePoset(m, up), join, pos[full], pos[0])
        extractors = tuple(tuple(pos[saturate(theta, fam[i])] for i in range(m))
                           for theta in self.eqs.members)
        ks = range(len(self.eqs.members))
        if self.eqs.closed:
            composition = tuple(tuple(self.eqs.star_index(k, l) for l in ks) for k in ks)
        else:
            if len(set(extractors)) != len(extractors):
                raise StructureError("cannot resolve composition: saturation arrays collide")
            composition = []
            for k in ks:
                row = []
                for l in ks:
                    composed = tuple(extractors[k][extractors[l][i]] for i in range(m))
                    if composed not in extractors:
                        raise StructureError(f"saturations not closed under composition at ({k},{l})")
                    row.append(extractors.index(composed))
                composition.append(tuple(row))
            composition = tuple(composition)
        return InfoAlgebra(sl, extractors, self.eqs.labels, composition)


def check_set_algebra(n: int, family, eqs: StarFamily) -> Report:
    fam = tuple(family)
    full = (1 << n) - 1
    report = Report()
    report.add("universe_match", eqs.n == n, (eqs.n, n))
    report.add("contains_bounds", 0 in fam and full in fam)
    report.add("no_duplicates", len(set(fam)) == len(fam))
    w = next(((a, b) for a in fam for b in fam if a & b not in fam), None)
    report.add("intersection_closed", w is None, w)
    w = next(((lab, mask) for lab, theta in zip(eqs.labels, eqs.members)
              for mask in fam if saturate(theta, mask) not in fam), None)
    report.add("saturation_compatible", w is None, w)
    return report


def build_set_algebra(n: int, family, eqs: StarFamily) -> SetAlgebra:
    """Validated set algebra; rejection carries the witness subset or pair."""
    report = check_set_algebra(n, family, eqs)
    if not report.ok:
        raise StructureError("not a set algebra:\n" + report.format(), report=report)
    return SetAlgebra(n, tuple(sorted(set(family))), eqs)


def build_block_union_algebra(eqs: StarFamily, cap: int = 1 << 16) -> SetAlgebra:
    """Family of all unions of blocks of single members.

    This is intersection-closed exactly when the family is downward
    directed; a non-directed family is rejected with a witness pair.
    """
    from .equivalence import directedness_witness

    w = directedness_witness(eqs)
    if w is not None:
        raise NotDirectedError(w)
    family = set()
    for theta in eqs.members:
        nb = theta.num_blocks
        if 1 << nb > cap:
            raise CapExceeded(f"member with {nb} blocks exceeds union cap {cap}")
        for pick in range(1 << nb):
            family.add(sum(theta.blocks[i] for i in bits(pick)) if pick else 0)
    return build_set_algebra(eqs.n, tuple(sorted(family)), eqs)


@dataclass(frozen=True)
class UpsetRepresentation:
    """Principal up-set representation of an algebra over its nonzero carrier."""

    ground: tuple[int, ...]          # nonzero carrier elements, in index order
    set_algebra: SetAlgebra
    algebra: InfoAlgebra             # the set algebra as an abstract algebra
    morphism: AlgebraMorphism        # isomorphism from the source


def principal_upset_representation(a: InfoAlgebra) -> UpsetRepresentation:
    """Represent an algebra by truncated principal up-sets of nonzero elements.

    The universe is the carrier minus the contradiction; the family consists
    of the truncated up-sets plus the empty set; the equivalences are the
    extractor kernels restricted to the nonzero part (the kernel class of
    the contradiction is always the singleton, so nothing is lost). The
    resulting morphism is checked to be an isomorphism.
    """
    ground = tuple(x for x in range(a.n) if x != a.zero)
    pos = {x: i for i, x in enumerate(ground)}
    m = len(ground)

    def upset_mask(x: int) -> int:
        return mask_of(pos[y] for y in ground if a.le(x, y))

    fam = sorted({upset_mask(x) for x in ground} | {0})
    kernels = [Equivalence(m, [a.apply(k, x) for x in ground])
               for k in range(len(a.extractors))]
    eqs = star_family(kernels, a.labels, n=m)
    sa = build_set_algebra(m, fam, eqs)
    target = sa.to_info_algebra()
    f = tuple(sa.family.index(0) if x == a.zero else sa.family.index(upset_mask(x))
              for x in range(a.n))
    morphism = AlgebraMorphism(f, tuple(range(len(a.extractors))))
    if not is_isomorphism(morphism, a, target):
        raise StructureError("principal up-set representation failed to be an isomorphism")
    return UpsetRepresentation(ground, sa, target, morphism)
