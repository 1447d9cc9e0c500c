"""Finite posets and bounded (semi)lattices in the information order.

Conventions used throughout the package:

* carrier elements are dense indices 0..n-1;
* the information order puts the vacuous element (``unit``) at the bottom
  and the contradiction (``zero``) at the top; combination is join;
* subsets of a carrier are bitmasks, bit x set meaning x is a member.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import CapExceeded, FormatError, StructureError
from .report import Report

UPSET_ENUM_LIMIT = 20


def bits(mask: int):
    """Iterate the set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(xs) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


@dataclass(frozen=True)
class FinitePoset:
    """Finite partial order; row ``up[a]`` is the bitmask of all b with a <= b."""

    n: int
    up: tuple[int, ...]

    def le(self, a: int, b: int) -> bool:
        return (self.up[a] >> b) & 1 == 1

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.le(a, b)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def down_mask(self, a: int) -> int:
        return mask_of(b for b in range(self.n) if self.le(b, a))

    def covers(self, a: int) -> list[int]:
        """Upper neighbors of a: minimal elements strictly above a."""
        strict = self.up[a] & ~(1 << a)
        out = []
        for b in bits(strict):
            between = strict & self.down_mask(b) & ~(1 << b)
            if between == 0:
                out.append(b)
        return out

    def bottom(self) -> int | None:
        full = self.full_mask()
        lows = [a for a in range(self.n) if self.up[a] == full]
        return lows[0] if len(lows) == 1 else None

    def top(self) -> int | None:
        tops = [a for a in range(self.n) if self.down_mask(a) == self.full_mask()]
        return tops[0] if len(tops) == 1 else None

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.n, tuple(mask_of(b for b in range(self.n) if self.le(b, a))
                                         for a in range(self.n)))

    def restrict(self, elems) -> "FinitePoset":
        """Induced subposet on the given element sequence, in that order."""
        elems = list(elems)
        pos = {e: i for i, e in enumerate(elems)}
        up = []
        for e in elems:
            up.append(mask_of(pos[f] for f in elems if self.le(e, f)))
        return FinitePoset(len(elems), tuple(up))

    def is_antichain(self) -> bool:
        return all(self.up[a] == 1 << a for a in range(self.n))

    def bool_table(self) -> list[list[bool]]:
        return [[self.le(a, b) for b in range(self.n)] for a in range(self.n)]

    @classmethod
    def from_bool_table(cls, rows) -> "FinitePoset":
        report = verify_poset(rows)
        if not report.ok:
            raise StructureError("not a partial order:\n" + report.format(), report=report)
        n = len(rows)
        return cls(n, tuple(mask_of(b for b in range(n) if rows[a][b]) for a in range(n)))


def verify_poset(rows) -> Report:
    """Check reflexivity, antisymmetry and transitivity of a boolean table.

    Reports the first witness of each violated axiom. Raises FormatError
    for a non-square or non-boolean table.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise FormatError(f"leq table is not square: {n} rows, row of length {len(row)}")
        for v in row:
            if not isinstance(v, bool):
                raise FormatError(f"leq entries must be booleans, got {v!r}")
    report = Report()
    refl = next((a for a in range(n) if not rows[a][a]), None)
    report.add("reflexive", refl is None, refl)
    anti = next(((a, b) for a in range(n) for b in range(n)
                 if a != b and rows[a][b] and rows[b][a]), None)
    report.add("antisymmetric", anti is None, anti)
    trans = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                  if rows[a][b] and rows[b][c] and not rows[a][c]), None)
    report.add("transitive", trans is None, trans)
    return report


def lub_of_pair(poset: FinitePoset, a: int, b: int) -> int | None:
    """Least upper bound of {a, b}, or None if it does not exist."""
    uppers = poset.up[a] & poset.up[b]
    for c in bits(uppers):
        if uppers & ~poset.up[c] == 0:
            return c
    return None


def glb(poset: FinitePoset, a: int, b: int) -> int | None:
    """Greatest lower bound of {a, b} in the poset, or None.

    Join-semilattices need not have meets; callers decide whether a
    missing meet is an error.
    """
    lowers = poset.down_mask(a) & poset.down_mask(b)
    for c in bits(lowers):
        if lowers & ~poset.down_mask(c) == 0:
            return c
    return None


def glb_of_set(poset: FinitePoset, mask: int) -> int | None:
    """Greatest lower bound of a subset; the top element for the empty set."""
    lowers = poset.full_mask()
    for a in bits(mask):
        lowers &= poset.down_mask(a)
    for c in bits(lowers):
        if lowers & ~poset.down_mask(c) == 0:
            return c
    return None


@dataclass(frozen=True)
class BoundedJoinSemilattice:
    poset: FinitePoset
    join: tuple[tuple[int, ...], ...]
    unit: int
    zero: int

    @property
    def n(self) -> int:
        return self.poset.n


def lub(sl: BoundedJoinSemilattice, a: int, b: int) -> int:
    """Join table entry, asserted to be the unique least upper bound."""
    j = sl.join[a][b]
    expected = lub_of_pair(sl.poset, a, b)
    if expected != j:
        raise StructureError(f"join table inconsistent at ({a},{b}): "
                             f"table says {j}, least upper bound is {expected}",
                             witness=(a, b))
    return j


def semilattice_from_poset(poset: FinitePoset,
                           unit: int | None = None,
                           zero: int | None = None) -> BoundedJoinSemilattice:
    """Build the join table from the order; every pair must have a lub."""
    n = poset.n
    join = []
    for a in range(n):
        row = []
        for b in range(n):
            j = lub_of_pair(poset, a, b)
            if j is None:
                raise StructureError(f"no least upper bound for ({a},{b})", witness=(a, b))
            row.append(j)
        join.append(tuple(row))
    if unit is None:
        unit = poset.bottom()
        if unit is None:
            raise StructureError("no least element")
    if zero is None:
        zero = poset.top()
        if zero is None:
            raise StructureError("no greatest element")
    return BoundedJoinSemilattice(poset, tuple(join), unit, zero)


def verify_semilattice(join, unit: int, zero: int) -> Report:
    """Check a join table: semigroup laws, bounds, and order/join coherence.

    The order is derived by a <= b iff join[a][b] == b; the table must then
    be the least-upper-bound table of that order.
    """
    n = len(join)
    report = Report()
    idem = next((a for a in range(n) if join[a][a] != a), None)
    report.add("idempotent", idem is None, idem)
    comm = next(((a, b) for a in range(n) for b in range(n)
                 if join[a][b] != join[b][a]), None)
    report.add("commutative", comm is None, comm)
    assoc = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                  if join[join[a][b]][c] != join[a][join[b][c]]), None)
    report.add("associative", assoc is None, assoc)
    un = next((a for a in range(n) if join[a][unit] != a), None)
    report.add("unit_neutral", un is None, un)
    zr = next((a for a in range(n) if join[a][zero] != zero), None)
    report.add("zero_absorbing", zr is None, zr)

    rows = [[join[a][b] == b for b in range(n)] for a in range(n)]
    order_report = verify_poset(rows)
    report.items.extend(order_report.items)
    if not (order_report.ok and report.items[0].ok and report.items[1].ok):
        return report

    poset = FinitePoset(n, tuple(mask_of(b for b in range(n) if rows[a][b])
                                 for a in range(n)))
    bad = next(((a, b) for a in range(n) for b in range(n)
                if lub_of_pair(poset, a, b) != join[a][b]), None)
    report.add("join_is_least_upper_bound", bad is None, bad)
    return report


def semilattice_from_join(join, unit: int, zero: int) -> BoundedJoinSemilattice:
    report = verify_semilattice(join, unit, zero)
    if not report.ok:
        raise StructureError("not a bounded join-semilattice:\n" + report.format(),
                             report=report)
    n = len(join)
    rows = [[join[a][b] == b for b in range(n)] for a in range(n)]
    poset = FinitePoset(n, tuple(mask_of(b for b in range(n) if rows[a][b])
                                 for a in range(n)))
    return BoundedJoinSemilattice(poset, tuple(tuple(row) for row in join), unit, zero)


@dataclass(frozen=True)
class FiniteLattice:
    sl: BoundedJoinSemilattice
    meet: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.sl.n

    @property
    def poset(self) -> FinitePoset:
        return self.sl.poset


def try_lattice(sl: BoundedJoinSemilattice) -> FiniteLattice | None:
    """Complete a semilattice with its meet table, or None if a meet is missing."""
    n = sl.n
    meet = []
    for a in range(n):
        row = []
        for b in range(n):
            m = glb(sl.poset, a, b)
            if m is None:
                return None
            row.append(m)
        meet.append(tuple(row))
    return FiniteLattice(sl, tuple(meet))


def lattice_from_semilattice(sl: BoundedJoinSemilattice) -> FiniteLattice:
    lat = try_lattice(sl)
    if lat is None:
        bad = next((a, b) for a in range(sl.n) for b in range(sl.n)
                   if glb(sl.poset, a, b) is None)
        raise StructureError(f"no greatest lower bound for {bad}", witness=bad)
    return lat


def lattice_from_poset(poset: FinitePoset) -> FiniteLattice:
    return lattice_from_semilattice(semilattice_from_poset(poset))


def is_distributive(lat: FiniteLattice) -> tuple[bool, tuple | None]:
    """Exhaustive scan of a /\\ (b \\/ c) == (a /\\ b) \\/ (a /\\ c); witness triple on failure."""
    n = lat.n
    join, meet = lat.sl.join, lat.meet
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return False, (a, b, c)
    return True, None


def complements(lat: FiniteLattice) -> tuple[dict[int, int] | None, int | None]:
    """Complement map x -> x^c with join zero and meet unit, or (None, witness)."""
    sl = lat.sl
    out = {}
    for a in range(lat.n):
        c = next((b for b in range(lat.n)
                  if sl.join[a][b] == sl.zero and lat.meet[a][b] == sl.unit), None)
        if c is None:
            return None, a
        out[a] = c
    return out, None


def is_boolean(lat: FiniteLattice) -> bool:
    if not is_distributive(lat)[0]:
        return False
    return complements(lat)[0] is not None


def meet_irreducibles(lat: FiniteLattice) -> list[int]:
    """Elements that are not proper meets, excluding the top (zero).

    Computed twice: from the definition (a = b /\\ c forces a in {b, c}) and
    from the single-upper-neighbor characterization. The two must agree.
    """
    n = lat.n
    zero = lat.sl.zero
    by_def = []
    for a in range(n):
        if a == zero:
            continue
        if all(a in (b, c)
               for b in range(n) for c in range(n) if lat.meet[b][c] == a):
            by_def.append(a)
    by_covers = [a for a in range(n) if len(lat.poset.covers(a)) == 1]
    if by_def != sorted(by_covers):
        raise StructureError("meet-irreducible characterizations disagree: "
                             f"{by_def} vs {sorted(by_covers)}")
    return by_def


def is_up_set(poset: FinitePoset, mask: int) -> bool:
    return all(poset.up[x] & ~mask == 0 for x in bits(mask))


def up_sets(poset: FinitePoset) -> list[int]:
    """All upward-closed subsets as masks, ascending; includes 0 and the full set."""
    n = poset.n
    if n > UPSET_ENUM_LIMIT:
        raise CapExceeded(f"up-set enumeration limited to {UPSET_ENUM_LIMIT} points, got {n}")
    up = poset.up
    out = []
    for mask in range(1 << n):
        m = mask
        ok = True
        while m:
            low = m & -m
            if up[low.bit_length() - 1] & ~mask:
                ok = False
                break
            m ^= low
        if ok:
            out.append(mask)
    return out


def down_sets(poset: FinitePoset) -> list[int]:
    return up_sets(poset.dual())


def principal_up_set(poset: FinitePoset, x: int) -> int:
    return poset.up[x]


def up_closure(poset: FinitePoset, mask: int) -> int:
    out = 0
    for x in bits(mask):
        out |= poset.up[x]
    return out


def automorphisms(poset: FinitePoset) -> list[tuple[int, ...]]:
    """All order-preserving permutations; n is expected to stay tiny."""
    n = poset.n
    out = []
    for perm in permutations(range(n)):
        if all(poset.le(a, b) == poset.le(perm[a], perm[b])
               for a in range(n) for b in range(n)):
            out.append(perm)
    return out


# small stock orders used by tests and generators

def chain_poset(m: int) -> FinitePoset:
    return FinitePoset(m, tuple(mask_of(range(a, m)) for a in range(m)))


def chain_lattice(m: int) -> FiniteLattice:
    return lattice_from_poset(chain_poset(m))


def antichain_poset(m: int) -> FinitePoset:
    return FinitePoset(m, tuple(1 << a for a in range(m)))


def powerset_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-set in information order: more elements = less informative.

    Element index equals the subset mask; unit is the full set, zero the
    empty set.
    """
    n = 1 << k
    up = []
    for a in range(n):
        # b is above a iff b carries less: b subset of a
        up.append(mask_of(b for b in range(n) if b & ~a == 0))
    return lattice_from_poset(FinitePoset(n, tuple(up)))


def diamond_m3() -> FiniteLattice:
    """Three incomparable midpoints: the canonical non-distributive lattice."""
    rows = [[True] * 5,
            [False, True, False, False, True],
            [False, False, True, False, True],
            [False, False, False, True, True],
            [False, False, False, False, True]]
    return lattice_from_poset(FinitePoset.from_bool_table(rows))


def pentagon_n5() -> FiniteLattice:
    """The pentagon: 0 < 1 < 2 < 4 and 0 < 3 < 4."""
    rows = [[True] * 5,
            [False, True, True, False, True],
            [False, False, True, False, True],
            [False, False, False, True, True],
            [False, False, False, False, True]]
    return lattice_from_poset(FinitePoset.from_bool_table(rows))
