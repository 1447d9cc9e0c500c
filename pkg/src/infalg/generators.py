"""Generators for the stock example families and brute-force enumeration of
small algebras and Q-spaces, used as oracles by the test suite.

All streams are deterministic; enumerated objects are duplicate-free up to
isomorphism (lattices by canonical order tables, extractor families and
equivalence families up to automorphisms of their carrier).
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from string import ascii_lowercase

from .algebra import InfoAlgebra
from .duality import QSpace, check_separating
from .equivalence import Equivalence, all_equivalences, star, star_family
from .errors import CapExceeded, PreconditionError, StructureError
from .order import (BoundedJoinSemilattice, FiniteLattice, FinitePoset, automorphisms,
                    bits, is_distributive, lattice_from_semilattice, mask_of,
                    semilattice_from_poset, up_sets)
from .set_algebra import SetAlgebra, build_set_algebra

DEFAULT_CAP = 4096
LATTICE_ENUM_LIMIT = 6
QSPACE_POINT_LIMIT = 4
FAMILY_BASE_LIMIT = 18


def gen_string(k: int, max_len: int, cap: int = DEFAULT_CAP) -> InfoAlgebra:
    """Truncated string algebra: all words of length <= max_len over a
    k-letter alphabet, plus the contradiction.

    Combination keeps the longer word when one is a prefix of the other and
    collapses to the contradiction otherwise. Extractor m truncates to the
    first m letters; the last extractor is the identity on the truncated
    carrier.
    """
    if k < 1 or max_len < 1:
        raise PreconditionError(f"need k >= 1 and max_len >= 1, got {(k, max_len)}")
    if k > 26:
        raise PreconditionError("alphabet limited to 26 letters")
    strs: list[str] = []
    for length in range(max_len + 1):
        strs.extend("".join(w) for w in product(ascii_lowercase[:k], repeat=length))
    n = len(strs) + 1
    if n > cap:
        raise CapExceeded(f"carrier of {n} exceeds cap {cap}")
    zero = n - 1
    idx = {s: i for i, s in enumerate(strs)}

    def is_prefix(r, s):
        return s.startswith(r)

    up = []
    for s in strs:
        up.append(mask_of(idx[t] for t in strs if is_prefix(s, t)) | (1 << zero))
    up.append(1 << zero)
    poset = FinitePoset(n, tuple(up))

    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == zero or b == zero:
                join[a][b] = zero
            elif is_prefix(strs[a], strs[b]):
                join[a][b] = b
            elif is_prefix(strs[b], strs[a]):
                join[a][b] = a
            else:
                join[a][b] = zero
    sl = BoundedJoinSemilattice(poset, tuple(map(tuple, join)), idx[""], zero)

    extractors = []
    for m in range(max_len + 1):
        arr = [idx[s[:m]] for s in strs] + [zero]
        extractors.append(tuple(arr))
    composition = tuple(tuple(min(a, b) for b in range(max_len + 1))
                        for a in range(max_len + 1))
    labels = tuple(f"e{m}" for m in range(max_len + 1))
    return InfoAlgebra(sl, tuple(extractors), labels, composition)


def string_elements(k: int, max_len: int) -> list[str]:
    """Element labels matching gen_string's indexing; the contradiction is '0'."""
    out = []
    for length in range(max_len + 1):
        out.extend("".join(w) for w in product(ascii_lowercase[:k], repeat=length))
    out.append("0")
    return out


def _subset_label(smask: int) -> str:
    return "s" + "".join(str(i) for i in bits(smask))


def gen_multivariate(domain_sizes, cap: int = DEFAULT_CAP) -> SetAlgebra:
    """Full power set of a finite product universe with one projection
    equivalence per variable subset.

    The star product of two projection equivalences is the projection onto
    the intersection of the variable sets; this is verified, not assumed.
    """
    domain_sizes = list(domain_sizes)
    if not domain_sizes or any(d < 1 for d in domain_sizes):
        raise PreconditionError(f"domain sizes must be positive, got {domain_sizes}")
    points = list(product(*(range(d) for d in domain_sizes)))
    m = len(points)
    if 1 << m > cap:
        raise CapExceeded(f"family of {1 << m} subsets exceeds cap {cap}")
    v = len(domain_sizes)

    by_mask = {}
    members, labels = [], []
    for smask in range(1 << v):
        svars = list(bits(smask))
        eq = Equivalence(m, [tuple(t[i] for i in svars) for t in points])
        by_mask[smask] = eq
        if eq not in set(members):
            members.append(eq)
            labels.append(_subset_label(smask))
    for a in range(1 << v):
        for b in range(1 << v):
            if star(by_mask[a], by_mask[b]) != by_mask[a & b]:
                raise StructureError(f"projection star identity failed at {(a, b)}")
    eqs = star_family(members, labels)
    return build_set_algebra(m, tuple(range(1 << m)), eqs)


def gen_lattice_valued(domain_sizes, lam: FiniteLattice,
                       cap: int = DEFAULT_CAP) -> InfoAlgebra:
    """Maps from a finite product universe into a distributive value lattice.

    Combination is the pointwise join; extractor s sends a map to the one
    that is constant on each block of points agreeing on the variables in
    s, at the meet of the map over the block.
    """
    ok, w = is_distributive(lam)
    if not ok:
        raise PreconditionError(f"value lattice is not distributive, witness {w}")
    domain_sizes = list(domain_sizes)
    if not domain_sizes or any(d < 1 for d in domain_sizes):
        raise PreconditionError(f"domain sizes must be positive, got {domain_sizes}")
    points = list(product(*(range(d) for d in domain_sizes)))
    nv = len(points)
    count = lam.n ** nv
    if count > cap:
        raise CapExceeded(f"carrier of {count} exceeds cap {cap}")
    carrier = list(product(range(lam.n), repeat=nv))
    idx = {phi: i for i, phi in enumerate(carrier)}
    lle = lam.poset.le
    up = tuple(mask_of(j for j, psi in enumerate(carrier)
                       if all(lle(x, y) for x, y in zip(phi, psi)))
               for phi in carrier)
    join = tuple(tuple(idx[tuple(lam.sl.join[x][y] for x, y in zip(phi, psi))]
                       for psi in carrier)
                 for phi in carrier)
    unit = idx[tuple([lam.sl.unit] * nv)]
    zero = idx[tuple([lam.sl.zero] * nv)]
    sl = BoundedJoinSemilattice(FinitePoset(count, up), join, unit, zero)

    v = len(domain_sizes)
    extractors, labels = [], []
    for smask in range(1 << v):
        svars = list(bits(smask))
        group_of = {}
        groups: list[list[int]] = []
        for t, point in enumerate(points):
            key = tuple(point[i] for i in svars)
            if key not in group_of:
                group_of[key] = len(groups)
                groups.append([])
            groups[group_of[key]].append(t)
        gidx = [group_of[tuple(point[i] for i in svars)] for point in points]

        arr = []
        for phi in carrier:
            vals = []
            for members in groups:
                acc = phi[members[0]]
                for t in members[1:]:
                    acc = lam.meet[acc][phi[t]]
                vals.append(acc)
            arr.append(idx[tuple(vals[gidx[t]] for t in range(nv))])
        arr = tuple(arr)
        if arr not in extractors:
            extractors.append(arr)
            labels.append(_subset_label(smask))

    composition = []
    for a in extractors:
        row = []
        for b in extractors:
            composed = tuple(a[b[x]] for x in range(count))
            row.append(extractors.index(composed))
        composition.append(tuple(row))
    return InfoAlgebra(sl, tuple(extractors), tuple(labels), tuple(composition))


# ---------------------------------------------------------------------------
# brute-force enumeration


def all_labeled_posets(n: int) -> list[FinitePoset]:
    """Every partial order on n labeled points (reflexive table variants)."""
    if n == 0:
        return [FinitePoset(0, ())]
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    out = []
    for choice in range(1 << len(pairs)):
        rel = [1 << a for a in range(n)]
        ok = True
        for i, (a, b) in enumerate(pairs):
            if (choice >> i) & 1:
                rel[a] |= 1 << b
        for a in range(n):
            if not ok:
                break
            for b in bits(rel[a]):
                if a != b and (rel[b] >> a) & 1:
                    ok = False
                    break
                if rel[b] & ~rel[a]:
                    ok = False
                    break
        if ok:
            out.append(FinitePoset(n, tuple(rel)))
    return out


def _canonical_poset_key(poset: FinitePoset):
    n = poset.n
    best = None
    for perm in permutations(range(n)):
        key = tuple(poset.le(perm[a], perm[b]) for a in range(n) for b in range(n))
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(max_n: int) -> list[FinitePoset]:
    """All posets with up to max_n points, one canonical representative per
    isomorphism class, generated from upper-triangular order tables."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        found = []
        for choice in range(1 << len(pairs)):
            rel = [1 << a for a in range(n)]
            for i, (a, b) in enumerate(pairs):
                if (choice >> i) & 1:
                    rel[a] |= 1 << b
            ok = True
            for a in range(n):
                for b in bits(rel[a]):
                    if rel[b] & ~rel[a]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            poset = FinitePoset(n, tuple(rel))
            key = _canonical_poset_key(poset)
            if key not in seen:
                seen.add(key)
                rows = [[key[a * n + b] for b in range(n)] for a in range(n)]
                found.append((key, FinitePoset(n, tuple(mask_of(b for b in range(n) if rows[a][b])
                                                        for a in range(n)))))
        found.sort(key=lambda t: t[0])
        out.extend(p for _, p in found)
    return out


def enumerate_lattices(max_n: int, distributive_only: bool = True) -> list[FiniteLattice]:
    """All bounded lattices with up to max_n elements up to isomorphism,
    optionally filtered to the distributive ones."""
    if max_n > LATTICE_ENUM_LIMIT:
        raise CapExceeded(f"lattice enumeration limited to {LATTICE_ENUM_LIMIT} elements")
    out = []
    for poset in enumerate_posets(max_n):
        if poset.bottom() is None or poset.top() is None:
            continue
        try:
            lat = lattice_from_semilattice(semilattice_from_poset(poset))
        except StructureError:
            continue
        if distributive_only and not is_distributive(lat)[0]:
            continue
        out.append(lat)
    return out


def extraction_maps(lat: FiniteLattice, require_meets: bool = True) -> list[tuple[int, ...]]:
    """Every self-map satisfying the extraction axioms on the lattice,
    optionally restricted to the meet-preserving ones. Exhaustive search
    over maps dominated by the identity."""
    n = lat.n
    sl = lat.sl
    down = [list(bits(lat.poset.down_mask(x))) for x in range(n)]
    down[sl.zero] = [sl.zero]
    out = []
    for cand in product(*down):
        ok = True
        for x in range(n):
            ex = cand[x]
            for y in range(n):
                if cand[sl.join[ex][y]] != sl.join[ex][cand[y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok and require_meets:
            for x in range(n):
                for y in range(n):
                    if cand[lat.meet[x][y]] != lat.meet[cand[x]][cand[y]]:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(tuple(cand))
    out.sort()
    return out


def extraction_families(ops: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], ...]]:
    """All nonempty pairwise-commuting composition-closed subsets of the
    given operator pool, in subset-mask order."""
    k = len(ops)
    if k > FAMILY_BASE_LIMIT:
        raise CapExceeded(f"operator pool of {k} exceeds limit {FAMILY_BASE_LIMIT}")
    n = len(ops[0]) if ops else 0
    pos = {op: i for i, op in enumerate(ops)}
    commute = [0] * k
    compose = [[-1] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            ij = tuple(ops[i][ops[j][x]] for x in range(n))
            ji = tuple(ops[j][ops[i][x]] for x in range(n))
            if ij == ji:
                commute[i] |= 1 << j
                compose[i][j] = pos.get(ij, -1)
    families = []
    for mask in range(1, 1 << k):
        members = list(bits(mask))
        if any(mask & ~commute[i] for i in members):
            continue
        closed = True
        for i in members:
            for j in members:
                c = compose[i][j]
                if c < 0 or not (mask >> c) & 1:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            families.append(tuple(ops[i] for i in members))
    return families


def _conjugate_map(arr, perm, inv):
    return tuple(perm[arr[inv[x]]] for x in range(len(arr)))


def enumerate_algebras(max_n: int):
    """All distributive information algebras on up to max_n elements:
    every distributive lattice paired with every closed commuting family of
    meet-preserving extraction maps, up to lattice automorphism."""
    if max_n > LATTICE_ENUM_LIMIT:
        raise CapExceeded(f"algebra enumeration limited to {LATTICE_ENUM_LIMIT} elements")
    for lat in enumerate_lattices(max_n, distributive_only=True):
        ops = extraction_maps(lat, require_meets=True)
        auts = automorphisms(lat.poset)
        invs = []
        for perm in auts:
            inv = [0] * len(perm)
            for i, p in enumerate(perm):
                inv[p] = i
            invs.append(tuple(inv))
        seen = set()
        for fam in extraction_families(ops):
            key = min(tuple(sorted(_conjugate_map(arr, perm, inv) for arr in fam))
                      for perm, inv in zip(auts, invs))
            if key in seen:
                continue
            seen.add(key)
            arrays = tuple(sorted(fam))
            composition = tuple(tuple(arrays.index(tuple(a[b[x]] for x in range(lat.n)))
                                      for b in arrays)
                                for a in arrays)
            labels = tuple(f"e{i}" for i in range(len(arrays)))
            yield InfoAlgebra(lat.sl, arrays, labels, composition)


def _conjugate_eq(eq: Equivalence, perm) -> Equivalence:
    return Equivalence(eq.n, [eq.block_of[perm[x]] for x in range(eq.n)])


def separating_equivalences(poset: FinitePoset) -> list[Equivalence]:
    usets = up_sets(poset)
    return [eq for eq in all_equivalences(poset.n)
            if check_separating(poset, eq, _usets=usets)[0]]


def enumerate_q_spaces(max_points: int):
    """All Q-spaces with up to max_points points: every poset paired with
    every star-closed commuting family of separating equivalences, up to
    poset automorphism."""
    if max_points > QSPACE_POINT_LIMIT:
        raise CapExceeded(f"Q-space enumeration limited to {QSPACE_POINT_LIMIT} points")
    for poset in enumerate_posets(max_points):
        seps = separating_equivalences(poset)
        k = len(seps)
        if k > FAMILY_BASE_LIMIT:
            raise CapExceeded(f"separating pool of {k} exceeds limit {FAMILY_BASE_LIMIT}")
        commute = [0] * k
        star_idx = [[-1] * k for _ in range(k)]
        by_eq = {eq: i for i, eq in enumerate(seps)}
        for i in range(k):
            for j in range(k):
                try:
                    prod = star(seps[i], seps[j])
                except Exception:
                    continue
                commute[i] |= 1 << j
                star_idx[i][j] = by_eq.get(prod, -1)
        auts = automorphisms(poset)
        seen = set()
        for mask in range(1, 1 << k):
            members = list(bits(mask))
            if any(mask & ~commute[i] for i in members):
                continue
            closed = all(star_idx[i][j] >= 0 and (mask >> star_idx[i][j]) & 1
                         for i in members for j in members)
            if not closed:
                continue
            fam = [seps[i] for i in members]
            key = min(tuple(sorted(_conjugate_eq(eq, perm).block_of for eq in fam))
                      for perm in auts)
            if key in seen:
                continue
            seen.add(key)
            labels = tuple(f"t{i}" for i in range(len(fam)))
            yield QSpace(poset, star_family(fam, labels))


def enumerate_small(max_n: int | None = None, poset_cap: int | None = None):
    """Combined stream of small algebras and Q-spaces (either part optional)."""
    if max_n is not None:
        yield from enumerate_algebras(max_n)
    if poset_cap is not None:
        yield from enumerate_q_spaces(poset_cap)
