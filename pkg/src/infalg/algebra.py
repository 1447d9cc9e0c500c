"""Information algebras: a bounded join-semilattice with extraction operators.

An extraction operator is a self-map that fixes the contradiction, never
adds information, and satisfies the combination law
e(e(x) . y) = e(x) . e(y). The listed family must commute pairwise and,
unless a lenient check is requested, be closed under composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .equivalence import Equivalence, star
from .errors import StructureError
from .order import (BoundedJoinSemilattice, FinitePoset, FiniteLattice, bits, down_sets,
                    glb, is_distributive, semilattice_from_poset, try_lattice)
from .report import Report


@dataclass(frozen=True)
class InfoAlgebra:
    sl: BoundedJoinSemilattice
    extractors: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    # optional label-level composition table; needed when distinct labels
    # denote extensionally equal maps (restricted saturations can collide)
    composition: tuple[tuple[int, ...], ...] | None = None

    @property
    def n(self) -> int:
        return self.sl.n

    @property
    def unit(self) -> int:
        return self.sl.unit

    @property
    def zero(self) -> int:
        return self.sl.zero

    @property
    def poset(self) -> FinitePoset:
        return self.sl.poset

    def join(self, a: int, b: int) -> int:
        return self.sl.join[a][b]

    def le(self, a: int, b: int) -> bool:
        return self.sl.poset.le(a, b)

    def apply(self, k: int, x: int) -> int:
        return self.extractors[k][x]

    def compose_arrays(self, k: int, l: int) -> tuple[int, ...]:
        """Array of the composite map: first l, then k."""
        ek, el = self.extractors[k], self.extractors[l]
        return tuple(ek[el[x]] for x in range(self.n))

    def find_extractor(self, arr: tuple[int, ...]) -> int | None:
        try:
            return self.extractors.index(arr)
        except ValueError:
            return None

    def compose_label(self, k: int, l: int) -> int:
        if self.composition is not None:
            return self.composition[k][l]
        idx = self.find_extractor(self.compose_arrays(k, l))
        if idx is None:
            raise StructureError(f"composite of extractors ({k},{l}) is not listed",
                                 witness=(k, l))
        return idx


@dataclass(frozen=True)
class AlgebraMorphism:
    """Element map f plus extractor-label map g; checked by is_homomorphism."""

    f: tuple[int, ...]
    g: tuple[int, ...]


def make_algebra(poset: FinitePoset, extractors, labels=None,
                 composition=None) -> InfoAlgebra:
    """Convenience constructor: join table derived from the order."""
    sl = semilattice_from_poset(poset)
    extractors = tuple(tuple(e) for e in extractors)
    if labels is None:
        labels = tuple(f"e{i}" for i in range(len(extractors)))
    return InfoAlgebra(sl, extractors, tuple(labels), composition)


def verify_axioms(a: InfoAlgebra, require_closure: bool = True) -> Report:
    """Per-axiom verdicts with minimal witnesses.

    Checks, per extractor: contradiction fixed, extraction dominated by its
    argument, the combination law, idempotence, unit fixed; across the
    family: pairwise commutation and (strict mode only) closure under
    composition. A lenient check omits only the closure item.
    """
    report = Report()
    n = a.n
    ks = range(len(a.extractors))

    bad_shape = next(((k, "length") for k in ks if len(a.extractors[k]) != n), None)
    if bad_shape is None:
        bad_shape = next(((k, x) for k in ks for x in range(n)
                          if not 0 <= a.extractors[k][x] < n), None)
    report.add("well_formed", bad_shape is None, bad_shape)
    if bad_shape is not None:
        return report

    w = next((k for k in ks if a.apply(k, a.zero) != a.zero), None)
    report.add("zero_fixed", w is None, w)

    w = next(((k, x) for k in ks for x in range(n)
              if a.join(a.apply(k, x), x) != x), None)
    report.add("extraction_dominated", w is None, w)

    w = next(((k, x, y) for k in ks for x in range(n) for y in range(n)
              if a.apply(k, a.join(a.apply(k, x), y)) != a.join(a.apply(k, x), a.apply(k, y))),
             None)
    report.add("extraction_combination", w is None, w)

    w = next(((k, l, x) for k in ks for l in ks for x in range(n)
              if a.apply(k, a.apply(l, x)) != a.apply(l, a.apply(k, x))), None)
    report.add("extractors_commute", w is None, w)

    w = next(((k, x) for k in ks for x in range(n)
              if a.apply(k, a.apply(k, x)) != a.apply(k, x)), None)
    report.add("extraction_idempotent", w is None, w)

    w = next((k for k in ks if a.apply(k, a.unit) != a.unit), None)
    report.add("unit_fixed", w is None, w)

    if require_closure:
        w = next(((k, l) for k in ks for l in ks
                  if a.find_extractor(a.compose_arrays(k, l)) is None), None)
        report.add("composition_closed", w is None, w)

    if a.composition is not None:
        w = next(((k, l) for k in ks for l in ks
                  if a.extractors[a.composition[k][l]] != a.compose_arrays(k, l)), None)
        report.add("composition_table_consistent", w is None, w)
    return report


def kernel(a: InfoAlgebra, k: int) -> Equivalence:
    """Partition of the carrier by equal image under extractor k."""
    return Equivalence(a.n, a.extractors[k])


def kernel_of_array(arr) -> Equivalence:
    return Equivalence(len(arr), arr)


def check_kernel_theorem(a: InfoAlgebra) -> bool:
    """Star of two kernels equals the kernel of the composite, for every pair."""
    ks = range(len(a.extractors))
    kernels = [kernel(a, k) for k in ks]
    for k in ks:
        for l in ks:
            try:
                prod = star(kernels[k], kernels[l])
            except Exception:
                return False
            if prod != kernel_of_array(a.compose_arrays(k, l)):
                return False
    return True


def meet_table(a: InfoAlgebra) -> tuple[tuple[int, ...], ...] | None:
    lat = try_lattice(a.sl)
    return None if lat is None else lat.meet


@dataclass(frozen=True)
class CdfReport:
    """Outcome of the distributive-algebra test; lattice present when ok."""

    ok: bool
    reason: str | None
    witness: object
    lattice: FiniteLattice | None


def is_distributive_cdf(a: InfoAlgebra) -> CdfReport:
    """All pairwise meets exist, the lattice is distributive, and every
    extractor preserves binary meets."""
    lat = try_lattice(a.sl)
    if lat is None:
        w = next((x, y) for x in range(a.n) for y in range(a.n)
                 if glb(a.poset, x, y) is None)
        return CdfReport(False, "missing_meet", w, None)
    ok, w = is_distributive(lat)
    if not ok:
        return CdfReport(False, "not_distributive", w, None)
    for k in range(len(a.extractors)):
        for x in range(a.n):
            for y in range(a.n):
                if a.apply(k, lat.meet[x][y]) != lat.meet[a.apply(k, x)][a.apply(k, y)]:
                    return CdfReport(False, "extractor_breaks_meets", (k, x, y), None)
    return CdfReport(True, None, None, lat)


def is_homomorphism(m: AlgebraMorphism, a: InfoAlgebra, b: InfoAlgebra,
                    check_meets: bool | None = None) -> Report:
    """Check the homomorphism laws; meets are required for distributive inputs.

    check_meets=None decides automatically: binary meets of f-images are
    compared exactly when both algebras are distributive.
    """
    report = Report()
    ok_shape = (len(m.f) == a.n and all(0 <= v < b.n for v in m.f)
                and len(m.g) == len(a.extractors)
                and all(0 <= v < len(b.extractors) for v in m.g))
    report.add("maps_total", ok_shape)
    if not ok_shape:
        return report

    w = next(((x, y) for x in range(a.n) for y in range(a.n)
              if m.f[a.join(x, y)] != b.join(m.f[x], m.f[y])), None)
    report.add("preserves_join", w is None, w)

    ok = m.f[a.unit] == b.unit and m.f[a.zero] == b.zero
    report.add("preserves_bounds", ok, None if ok else (m.f[a.unit], m.f[a.zero]))

    ks = range(len(a.extractors))
    w = None
    for k in ks:
        for l in ks:
            try:
                lhs = m.g[a.compose_label(k, l)]
                rhs = b.compose_label(m.g[k], m.g[l])
            except StructureError:
                w = (k, l)
                break
            if lhs != rhs:
                w = (k, l)
                break
        if w:
            break
    report.add("preserves_composition", w is None, w)

    w = next(((k, x) for k in ks for x in range(a.n)
              if m.f[a.apply(k, x)] != b.apply(m.g[k], m.f[x])), None)
    report.add("extraction_compatible", w is None, w)

    if check_meets is None:
        check_meets = is_distributive_cdf(a).ok and is_distributive_cdf(b).ok
    if check_meets:
        lat_a, lat_b = try_lattice(a.sl), try_lattice(b.sl)
        if lat_a is None or lat_b is None:
            report.add("preserves_meet", False, "missing meets")
        else:
            w = next(((x, y) for x in range(a.n) for y in range(a.n)
                      if m.f[lat_a.meet[x][y]] != lat_b.meet[m.f[x]][m.f[y]]), None)
            report.add("preserves_meet", w is None, w)
    return report


def is_isomorphism(m: AlgebraMorphism, a: InfoAlgebra, b: InfoAlgebra) -> bool:
    """Homomorphism with bijective f and g; inverse compatibility follows."""
    if not is_homomorphism(m, a, b).ok:
        return False
    return (sorted(m.f) == list(range(b.n))
            and sorted(m.g) == list(range(len(b.extractors))))


def extraction_image(a: InfoAlgebra, k: int) -> tuple[InfoAlgebra, AlgebraMorphism]:
    """The subalgebra on the image of extractor k, with its inclusion morphism.

    The image is closed under combination and under every listed extractor;
    the whole label family acts on it (possibly with collisions), so the
    composition table is inherited.
    """
    image = sorted(set(a.extractors[k]))
    pos = {x: i for i, x in enumerate(image)}
    poset = a.poset.restrict(image)
    join = []
    for x in image:
        row = []
        for y in image:
            j = a.join(x, y)
            if j not in pos:
                raise StructureError(f"image not closed under join at ({x},{y})")
            row.append(pos[j])
        join.append(tuple(row))
    sl = BoundedJoinSemilattice(poset, tuple(join), pos[a.unit], pos[a.zero])
    ks = range(len(a.extractors))
    extractors = []
    for l in ks:
        arr = []
        for x in image:
            y = a.apply(l, x)
            if y not in pos:
                raise StructureError(f"image not closed under extractor {l} at {x}")
            arr.append(pos[y])
        extractors.append(tuple(arr))
    composition = tuple(tuple(a.compose_label(i, j) for j in ks) for i in ks)
    sub = InfoAlgebra(sl, tuple(extractors), a.labels, composition)
    embed = AlgebraMorphism(tuple(image), tuple(ks))
    return sub, embed


def ideal_completion(a: InfoAlgebra) -> tuple[InfoAlgebra, AlgebraMorphism]:
    """The algebra of all ideals (join-closed down-sets) with lifted operations.

    Ideals are enumerated honestly; in a finite carrier they are exactly the
    principal down-sets, so the embedding x -> down(x) is an isomorphism,
    which is checked.
    """
    poset, n = a.poset, a.n
    down = [poset.down_mask(x) for x in range(n)]
    ideals = []
    for mask in down_sets(poset):
        if mask == 0:
            continue
        elems = list(bits(mask))
        if all((mask >> a.join(x, y)) & 1 for x in elems for y in elems):
            ideals.append(mask)
    ideals.sort()
    pos = {m: i for i, m in enumerate(ideals)}

    def combine(im, jm):
        out = 0
        for x in bits(im):
            for y in bits(jm):
                out |= down[a.join(x, y)]
        return out

    m = len(ideals)
    join = tuple(tuple(pos[combine(ideals[i], ideals[j])] for j in range(m))
                 for i in range(m))
    up = tuple(sum(1 << j for j in range(m) if ideals[i] & ~ideals[j] == 0)
               for i in range(m))
    sl = BoundedJoinSemilattice(FinitePoset(m, up), join,
                                pos[down[a.unit]], pos[poset.full_mask()])

    def extract(k, im):
        out = 0
        for y in bits(im):
            out |= down[a.apply(k, y)]
        return out

    ks = range(len(a.extractors))
    extractors = tuple(tuple(pos[extract(k, ideals[i])] for i in range(m)) for k in ks)
    composition = tuple(tuple(a.compose_label(i, j) for j in ks) for i in ks)
    completion = InfoAlgebra(sl, extractors, a.labels, composition)
    embed = AlgebraMorphism(tuple(pos[down[x]] for x in range(n)), tuple(ks))
    if not is_isomorphism(embed, a, completion):
        raise StructureError("ideal completion of a finite algebra must be isomorphic")
    return completion, embed


def dedupe_extractors(a: InfoAlgebra) -> tuple[InfoAlgebra, AlgebraMorphism]:
    """Merge extensionally equal extractor maps, keeping the first label.

    Restriction constructions can make distinct labels act identically;
    duals and representations need one label per map. The returned morphism
    (identity on elements, merge on labels) is a homomorphism onto the
    deduped algebra.
    """
    arrays: list[tuple[int, ...]] = []
    labels: list[str] = []
    merge = []
    for arr, lab in zip(a.extractors, a.labels):
        if arr not in arrays:
            arrays.append(arr)
            labels.append(lab)
        merge.append(arrays.index(arr))
    ks = range(len(arrays))
    composition = tuple(tuple(arrays.index(tuple(arrays[i][arrays[j][x]]
                                                 for x in range(a.n)))
                              for j in ks)
                        for i in ks)
    deduped = InfoAlgebra(a.sl, tuple(arrays), tuple(labels), composition)
    return deduped, AlgebraMorphism(tuple(range(a.n)), tuple(merge))


def image_algebra(m: AlgebraMorphism, a: InfoAlgebra, b: InfoAlgebra) -> InfoAlgebra:
    """The image of a homomorphism as a subalgebra of the codomain."""
    carrier = sorted(set(m.f))
    pos = {x: i for i, x in enumerate(carrier)}
    gl = sorted(set(m.g))
    poset = b.poset.restrict(carrier)
    join = tuple(tuple(pos[b.join(x, y)] for y in carrier) for x in carrier)
    sl = BoundedJoinSemilattice(poset, join, pos[b.unit], pos[b.zero])
    extractors = tuple(tuple(pos[b.apply(k, x)] for x in carrier) for k in gl)
    return InfoAlgebra(sl, extractors, tuple(b.labels[k] for k in gl))


def enumerate_homomorphisms(a: InfoAlgebra, b: InfoAlgebra,
                            check_meets: bool | None = None):
    """Exhaustive (f, g) search; intended for small carriers only."""
    n, nb = a.n, b.n
    ks, lbs = len(a.extractors), len(b.extractors)
    free = [x for x in range(n) if x not in (a.unit, a.zero)]
    for values in product(range(nb), repeat=len(free)):
        f = [0] * n
        f[a.unit], f[a.zero] = b.unit, b.zero
        for x, v in zip(free, values):
            f[x] = v
        if any(b.join(f[x], f[y]) != f[a.join(x, y)] for x in range(n) for y in range(n)):
            continue
        for g in product(range(lbs), repeat=ks):
            m = AlgebraMorphism(tuple(f), g)
            if is_homomorphism(m, a, b, check_meets=check_meets).ok:
                yield m


def identity_morphism(a: InfoAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(tuple(range(a.n)), tuple(range(len(a.extractors))))
