"""Equivalence relations on a finite universe: star products, saturation, closure.

An equivalence is stored as a block-id array canonicalized by first
occurrence, so equality is array equality. Subsets are bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonCommutingError, StructureError
from .order import bits


class Equivalence:
    __slots__ = ("n", "block_of", "blocks")

    def __init__(self, n: int, labels):
        """Partition of range(n); labels may be arbitrary hashables per element."""
        labels = list(labels)
        if len(labels) != n:
            raise StructureError(f"expected {n} labels, got {len(labels)}")
        ids: dict = {}
        block_of = []
        for lab in labels:
            if lab not in ids:
                ids[lab] = len(ids)
            block_of.append(ids[lab])
        blocks = [0] * len(ids)
        for x, b in enumerate(block_of):
            blocks[b] |= 1 << x
        self.n = n
        self.block_of = tuple(block_of)
        self.blocks = tuple(blocks)

    @classmethod
    def identity(cls, n: int) -> "Equivalence":
        return cls(n, range(n))

    @classmethod
    def all_relation(cls, n: int) -> "Equivalence":
        return cls(n, [0] * n)

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Equivalence":
        labels = [None] * n
        for i, block in enumerate(blocks):
            for x in block:
                labels[x] = i
        if None in labels:
            raise StructureError("blocks do not cover the universe")
        return cls(n, labels)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def relates(self, u: int, v: int) -> bool:
        return self.block_of[u] == self.block_of[v]

    def block_mask(self, u: int) -> int:
        return self.blocks[self.block_of[u]]

    def is_identity(self) -> bool:
        return self.num_blocks == self.n

    def is_all(self) -> bool:
        return self.num_blocks == 1

    def refines(self, other: "Equivalence") -> bool:
        """True iff self, as a relation set, is contained in other."""
        return all(self.block_mask(u) & ~other.block_mask(u) == 0 for u in range(self.n))

    def __eq__(self, other):
        return (isinstance(other, Equivalence)
                and self.n == other.n and self.block_of == other.block_of)

    def __hash__(self):
        return hash((self.n, self.block_of))

    def __repr__(self):
        parts = ["{" + ",".join(map(str, bits(b))) + "}" for b in self.blocks]
        return f"Equivalence({'|'.join(parts)})"


def saturate(theta: Equivalence, mask: int) -> int:
    """Union of all blocks meeting the given subset."""
    out = 0
    for block in theta.blocks:
        if block & mask:
            out |= block
    return out


def compose_rows(theta: Equivalence, gamma: Equivalence) -> list[int]:
    """Relational product rows: row u = {v : u theta w gamma v for some w}."""
    if theta.n != gamma.n:
        raise StructureError(f"universe mismatch: {theta.n} vs {gamma.n}")
    return [saturate(gamma, theta.block_mask(u)) for u in range(theta.n)]


def commutation_witness(theta: Equivalence, gamma: Equivalence) -> tuple[int, int] | None:
    """Least pair in the theta-gamma product missing from the gamma-theta product."""
    rows_tg = compose_rows(theta, gamma)
    rows_gt = compose_rows(gamma, theta)
    for u in range(theta.n):
        diff = rows_tg[u] & ~rows_gt[u]
        if diff:
            return (u, (diff & -diff).bit_length() - 1)
    return None


def star(theta: Equivalence, gamma: Equivalence) -> Equivalence:
    """Relational product as an equivalence; raises NonCommutingError otherwise."""
    rows_tg = compose_rows(theta, gamma)
    rows_gt = compose_rows(gamma, theta)
    if rows_tg != rows_gt:
        raise NonCommutingError(commutation_witness(theta, gamma))
    result = Equivalence(theta.n, rows_tg)
    # the product of commuting equivalences is transitive; guard anyway
    for u in range(theta.n):
        if result.block_mask(u) != rows_tg[u]:
            raise StructureError(f"product rows do not form a partition at {u}")
    return result


def least_upper_equivalence(theta: Equivalence, gamma: Equivalence) -> Equivalence:
    """Least equivalence containing both, via transitive closure of the union.

    Requires the arguments to commute, in which case the closure equals
    their star product; the two routes are compared.
    """
    starred = star(theta, gamma)
    n = theta.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eq in (theta, gamma):
        for block in eq.blocks:
            xs = list(bits(block))
            for y in xs[1:]:
                parent[find(y)] = find(xs[0])
    closure = Equivalence(n, [find(x) for x in range(n)])
    if closure != starred:
        raise StructureError("star product differs from transitive closure of the union")
    return closure


@dataclass(frozen=True)
class StarFamily:
    """A labeled set of equivalences on one universe.

    ``closed`` records whether the members commute pairwise and every star
    product is again a member; families built with the default strict
    factory always are. Duals of some algebras are not (their semigroup
    structure lives on the labels instead), so the flag is data, not an
    assumption.
    """

    n: int
    members: tuple[Equivalence, ...]
    labels: tuple[str, ...]
    closed: bool = True

    def __post_init__(self):
        if len(self.members) != len(self.labels):
            raise StructureError("member/label count mismatch")

    def index_of(self, eq: Equivalence) -> int:
        return self.members.index(eq)

    def star_index(self, i: int, j: int) -> int:
        if not self.closed:
            raise StructureError("family is not star-closed")
        return self.index_of(star(self.members[i], self.members[j]))


def closure_defect(members) -> tuple | None:
    """First witness that a member list is not a commuting star-closed set:
    ('commute', i, j, pair) or ('closure', i, j)."""
    seen = set(members)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            w = commutation_witness(a, b)
            if w is not None:
                return ("commute", i, j, w)
            if star(a, b) not in seen:
                return ("closure", i, j)
    return None


def star_family(members, labels=None, n: int | None = None,
                require_closure: bool = True) -> StarFamily:
    """Validate and build a StarFamily: same universe, no duplicate members
    or labels; strict mode additionally demands pairwise commutation and
    closure under star."""
    members = tuple(members)
    if not members and n is None:
        raise StructureError("empty family needs an explicit universe size")
    if members:
        n = members[0].n
    if labels is None:
        labels = tuple(f"t{i}" for i in range(len(members)))
    else:
        labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise StructureError(f"duplicate labels in {labels}")
    seen = set()
    for i, m in enumerate(members):
        if m.n != n:
            raise StructureError(f"universe mismatch at member {i}")
        if m in seen:
            raise StructureError(f"duplicate member at index {i}")
        seen.add(m)
    defect = closure_defect(members)
    if defect is not None and require_closure:
        if defect[0] == "commute":
            raise NonCommutingError(defect[3], f"members {defect[1]} and {defect[2]} "
                                               f"do not commute, witness {defect[3]}")
        raise StructureError("family not star-closed: missing product of "
                             f"({defect[1]},{defect[2]})", witness=defect[1:3])
    return StarFamily(n, members, labels, closed=defect is None)


def star_closure(members, labels=None) -> StarFamily:
    """Least star-closed superset of a commuting family; idempotent."""
    members = list(members)
    if labels is None:
        labels = [f"t{i}" for i in range(len(members))]
    else:
        labels = list(labels)
    for i, a in enumerate(members):
        for j in range(i + 1, len(members)):
            w = commutation_witness(a, members[j])
            if w is not None:
                raise NonCommutingError(w, f"members {i} and {j} do not commute, witness {w}")
    seen = {m: lab for m, lab in zip(members, labels)}
    work = list(members)
    out = list(members)
    while work:
        a = work.pop(0)
        for b in list(out):
            for x, y in ((a, b), (b, a)):
                prod = star(x, y)
                if prod not in seen:
                    seen[prod] = f"{seen[x]}*{seen[y]}"
                    out.append(prod)
                    work.append(prod)
    return star_family(out, [seen[m] for m in out])


def is_downward_directed(family: StarFamily) -> bool:
    """For every two members some member refines both (inclusion as relations)."""
    ms = family.members
    return all(any(c.refines(a) and c.refines(b) for c in ms)
               for a in ms for b in ms)


def directedness_witness(family: StarFamily) -> tuple[int, int] | None:
    ms = family.members
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            if not any(c.refines(a) and c.refines(b) for c in ms):
                return (i, j)
    return None


def all_equivalences(n: int) -> list[Equivalence]:
    """Every partition of range(n), by restricted-growth enumeration."""
    out = []

    def rec(prefix, mx):
        if len(prefix) == n:
            out.append(Equivalence(n, prefix))
            return
        for v in range(mx + 2):
            rec(prefix + [v], max(mx, v))

    if n == 0:
        return [Equivalence(0, [])]
    rec([0], 0)
    return out
