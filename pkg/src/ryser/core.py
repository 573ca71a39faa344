"""Set systems on a fixed point universe and the design axioms.

Points are the integers ``0 .. v-1``. A block is stored as a Python ``int``
bit mask (bit ``x`` set iff point ``x`` is a member), so symmetric difference
and intersection are single machine-word operations at the sizes used here.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from operator import xor

from .errors import IdentityViolation, InvalidParameterTriple


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        if p < 0:
            raise ValueError(f"negative point index {p}")
        m |= 1 << p
    return m


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Block:
    """An immutable set of points, backed by a bit mask."""

    mask: int

    @classmethod
    def of(cls, points: Iterable[int]) -> Block:
        return cls(mask_of(points))

    @property
    def points(self) -> tuple[int, ...]:
        return points_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(points_of(self.mask))

    def __contains__(self, point: object) -> bool:
        return isinstance(point, int) and point >= 0 and bool(self.mask >> point & 1)

    def __xor__(self, other: Block) -> Block:
        return Block(self.mask ^ other.mask)

    def __and__(self, other: Block) -> Block:
        return Block(self.mask & other.mask)

    def __or__(self, other: Block) -> Block:
        return Block(self.mask | other.mask)

    def __sub__(self, other: Block) -> Block:
        return Block(self.mask & ~other.mask)

    def __repr__(self) -> str:
        return "Block({" + ", ".join(map(str, self.points)) + "})"


def symmetric_difference(a: Block, b: Block) -> Block:
    """Points lying in exactly one of ``a`` and ``b``. The result may be empty."""
    return Block(a.mask ^ b.mask)


def fold_symmetric_difference(sets: Iterable[Block]) -> Block:
    """Points lying in an odd number of the given sets."""
    return Block(reduce(xor, (s.mask for s in sets), 0))


@dataclass(frozen=True)
class SetSystem:
    """An ordered family of ``v`` nonempty blocks on the universe ``range(v)``.

    Equality (``==``) is order sensitive, so block positions survive
    round-trips. Use :meth:`same_family` to compare as unordered families.
    Distinctness of blocks is not enforced here; :func:`classify` reports
    duplicates, and the file parser rejects them.
    """

    v: int
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        blocks = tuple(b if isinstance(b, Block) else Block.of(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.v < 1:
            raise ValueError(f"universe size must be positive, got {self.v}")
        if len(blocks) != self.v:
            raise ValueError(f"expected {self.v} blocks, got {len(blocks)}")
        full = (1 << self.v) - 1
        for i, b in enumerate(blocks):
            if b.mask == 0:
                raise ValueError(f"block {i} is empty")
            if b.mask & ~full:
                raise ValueError(f"block {i} has points outside range({self.v})")

    @classmethod
    def from_masks(cls, v: int, masks: Iterable[int]) -> SetSystem:
        return cls(v, tuple(Block(m) for m in masks))

    @classmethod
    def from_lists(cls, v: int, lists: Iterable[Iterable[int]]) -> SetSystem:
        return cls(v, tuple(Block.of(p) for p in lists))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(b.mask for b in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def universe(self) -> Block:
        return Block((1 << self.v) - 1)

    def family(self) -> frozenset[int]:
        return frozenset(self.masks)

    def same_family(self, other: SetSystem) -> bool:
        return self.v == other.v and self.family() == other.family()

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.masks)) != self.v

    def index_of(self, block: Block | int) -> int:
        mask = block.mask if isinstance(block, Block) else block
        return self.masks.index(mask)

    def to_lists(self) -> list[list[int]]:
        return [list(b.points) for b in self.blocks]

    def relabel(self, perm: Sequence[int]) -> SetSystem:
        """Apply the point map ``x -> perm[x]`` to every block."""
        if sorted(perm) != list(range(self.v)):
            raise ValueError("perm must be a permutation of range(v)")
        return SetSystem.from_masks(
            self.v, (mask_of(perm[p] for p in b.points) for b in self.blocks)
        )

    def __len__(self) -> int:
        return self.v

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __getitem__(self, i: int) -> Block:
        return self.blocks[i]


@dataclass(frozen=True)
class ReplicationProfile:
    """Replication numbers of every point.

    When at most two values occur, ``r1 >= r2`` are those values and ``E1``,
    ``E2`` the corresponding point classes; with a single value ``r1 == r2``
    and ``E2`` is empty. With three or more values these fields are ``None``
    and :attr:`values` lists everything observed.
    """

    counts: tuple[int, ...]
    values: tuple[int, ...]
    r1: int | None = None
    r2: int | None = None
    E1: Block | None = None
    E2: Block | None = None

    @property
    def e1(self) -> int | None:
        return None if self.E1 is None else len(self.E1)

    @property
    def e2(self) -> int | None:
        return None if self.E2 is None else len(self.E2)

    @property
    def two_valued(self) -> bool:
        return len(self.values) == 2


def replication_counts(system: SetSystem) -> tuple[int, ...]:
    counts = [0] * system.v
    for b in system.blocks:
        for p in b.points:
            counts[p] += 1
    return tuple(counts)


def replication_profile(system: SetSystem) -> ReplicationProfile:
    counts = replication_counts(system)
    values = tuple(sorted(set(counts), reverse=True))
    if len(values) > 2:
        return ReplicationProfile(counts, values)
    r1, r2 = values[0], values[-1]
    E1 = Block(mask_of(x for x, c in enumerate(counts) if c == r1))
    E2 = Block(mask_of(x for x, c in enumerate(counts) if c != r1))
    return ReplicationProfile(counts, values, r1, r2, E1, E2)


# --- classification -------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}" if self.detail else self.code


class DesignKind:
    """Marker base for the three classification outcomes."""

    is_design = True


@dataclass(frozen=True)
class Symmetric(DesignKind):
    k: int
    lambda_prime: int


@dataclass(frozen=True)
class Ryser(DesignKind):
    lam: int
    r1: int
    r2: int


@dataclass(frozen=True)
class NotADesign(DesignKind):
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    is_design = False

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)


def intersection_numbers(system: SetSystem) -> set[int]:
    masks = system.masks
    return {(a & b).bit_count() for a, b in combinations(masks, 2)}


def classify(system: SetSystem) -> DesignKind:
    """Decide whether ``system`` is a symmetric design, a Ryser design or neither.

    Both kinds need a constant pairwise intersection ``lam >= 1`` and every
    block strictly larger than ``lam``; one block size means symmetric, two or
    more means Ryser.
    """
    v = system.v
    masks = system.masks
    violations: list[Violation] = []
    if v < 2:
        return NotADesign((Violation("too_few_blocks", f"v = {v}"),))

    seen: dict[int, int] = {}
    for i, m in enumerate(masks):
        if m in seen:
            violations.append(Violation("duplicate_blocks", f"blocks {seen[m]} and {i} are equal"))
        else:
            seen[m] = i

    inter = intersection_numbers(system)
    lam = None
    if len(inter) > 1:
        violations.append(
            Violation("nonconstant_intersection", f"observed intersection sizes {sorted(inter)}")
        )
    else:
        (lam,) = inter
        if lam == 0:
            violations.append(Violation("zero_intersection", "blocks pairwise disjoint"))

    sizes = system.sizes
    if lam is not None:
        small = [i for i, k in enumerate(sizes) if k <= lam]
        if small:
            violations.append(
                Violation("block_not_larger_than_lambda", f"blocks {small} have size <= {lam}")
            )
    if violations:
        return NotADesign(tuple(violations))

    if len(set(sizes)) == 1:
        return Symmetric(sizes[0], lam)

    prof = replication_profile(system)
    if not prof.two_valued or prof.r1 + prof.r2 != v + 1:
        raise IdentityViolation(
            "replication_sum", f"replication values {prof.values} for v = {v}"
        )
    return Ryser(lam, prof.r1, prof.r2)


def is_ryser_system(system: SetSystem, r1: int, r2: int) -> bool:
    """True iff every point lies in exactly ``r1`` or ``r2`` blocks.

    All points sharing one of the two values is accepted.
    """
    if r1 <= r2 or r1 + r2 != system.v + 1:
        raise InvalidParameterTriple(
            f"need r1 > r2 and r1 + r2 = v + 1, got ({system.v}, {r1}, {r2})"
        )
    return all(c in (r1, r2) for c in replication_counts(system))


def design_lambda(kind: DesignKind) -> int:
    if isinstance(kind, Ryser):
        return kind.lam
    if isinstance(kind, Symmetric):
        return kind.lambda_prime
    raise ValueError("not a design")
