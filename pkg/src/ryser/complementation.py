"""Ryser-Woodall block complementation and block size classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import (
    Block,
    NotADesign,
    Ryser,
    SetSystem,
    Symmetric,
    classify,
    design_lambda,
    mask_of,
    replication_counts,
)
from .errors import DuplicateBlockProduced, EmptyBlockProduced, NonIntegralT, NotADesignError


class BlockClass(enum.Enum):
    SMALL = "small"
    AVERAGE = "average"
    LARGE = "large"


def complement_at(system: SetSystem, block_index: int) -> SetSystem:
    """Keep block ``A = system[block_index]`` and replace every other ``B`` by ``A ^ B``.

    Block positions are preserved, so index ``block_index`` still holds ``A``.
    """
    v = system.v
    if not 0 <= block_index < v:
        raise IndexError(f"block index {block_index} out of range for v = {v}")
    masks = system.masks
    a = masks[block_index]
    out = []
    seen: dict[int, int] = {}
    for i, b in enumerate(masks):
        m = a if i == block_index else a ^ b
        if m == 0:
            raise EmptyBlockProduced(f"block {i} equals block {block_index}")
        if m in seen:
            raise DuplicateBlockProduced(f"blocks {seen[m]} and {i} collide after complementing")
        seen[m] = i
        out.append(m)
    return SetSystem.from_masks(v, out)


def replication_pair(system: SetSystem, kind=None) -> tuple[int, int]:
    """The ``(r1, r2)`` pair of the complementation family containing ``system``.

    For a Ryser design these are its two replication numbers. A symmetric
    design with block size ``k`` belongs to the family with values
    ``{k, v + 1 - k}``.
    """
    kind = kind if kind is not None else classify(system)
    if isinstance(kind, Ryser):
        return kind.r1, kind.r2
    if isinstance(kind, Symmetric):
        other = system.v + 1 - kind.k
        return max(kind.k, other), min(kind.k, other)
    raise NotADesignError(f"not a design: {', '.join(map(str, kind.violations))}")


def points_with_replication(system: SetSystem, r: int) -> Block:
    return Block(mask_of(x for x, c in enumerate(replication_counts(system)) if c == r))


@dataclass
class ComplementReport:
    """Outcome of checking the complementation properties at blocks ``i`` and ``j``."""

    i: int
    j: int
    items: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.items.values())

    def failed(self) -> list[str]:
        return [k for k, ok in self.items.items() if not ok]


def verify_complement_properties(design: SetSystem, i: int, j: int) -> ComplementReport:
    """Recompute items (i) to (vii) of the complementation properties directly.

    Item keys are ``"membership"`` (``D*A`` is again a design of the same
    family) and the roman numerals ``"i"`` .. ``"vii"``.
    """
    kind = classify(design)
    if isinstance(kind, NotADesign):
        raise NotADesignError(f"not a design: {', '.join(map(str, kind.violations))}")
    if i == j:
        raise ValueError("i and j must differ")
    v = design.v
    if not (0 <= i < v and 0 <= j < v):
        raise IndexError(f"block indices ({i}, {j}) out of range for v = {v}")

    rep = ComplementReport(i, j)
    r1, r2 = replication_pair(design, kind)
    A, B = design[i], design[j]
    lam = design_lambda(kind)

    dA = complement_at(design, i)
    kind_a = classify(dA)
    rep.items["membership"] = not isinstance(kind_a, NotADesign) and (
        isinstance(kind_a, Ryser) or kind_a.k in (r1, r2)
    )
    if not rep.items["membership"]:
        rep.notes["membership"] = f"D*A classified as {kind_a}"
        return rep

    rep.items["i"] = complement_at(dA, i) == design

    ab = A ^ B
    has_ab = ab.mask in dA.family()
    rep.items["ii"] = has_ab and complement_at(dA, dA.index_of(ab)).same_family(
        complement_at(design, j)
    )

    rep.items["iii"] = replication_pair(dA, kind_a) == (r1, r2)
    rep.items["iv"] = design_lambda(kind_a) == len(A) - lam

    E1 = points_with_replication(design, r1)
    E2 = points_with_replication(design, r2) if r2 != r1 else Block(0)
    E1_a = points_with_replication(dA, r1)
    rep.items["v"] = E1_a == E1 ^ A

    tau1, tau2 = len(A & E1), len(A & E2)
    rep.items["vi"] = len(E1_a) == len(E1) - tau1 + tau2
    rep.notes["vi"] = f"e1(D*A) = {len(E1)} - {tau1} + {tau2} = {len(E1_a)}"

    rep.items["vii"] = isinstance(kind_a, Symmetric) == (A == E1 or A == E2)
    return rep


def block_class(ledger, block: Block) -> tuple[BlockClass, int]:
    """Classify ``block`` as small/average/large and return ``t`` with ``|block| = 2*lam + t*a``."""
    diff = len(block) - 2 * ledger.lam
    if ledger.a == 0 or diff % ledger.a:
        raise NonIntegralT(
            f"|block| - 2*lambda = {diff} is not a multiple of a = {ledger.a}"
        )
    t = diff // ledger.a
    if t < 0:
        return BlockClass.SMALL, t
    if t > 0:
        return BlockClass.LARGE, t
    return BlockClass.AVERAGE, 0


def predict_transformed_size(size_a: int, size_b: int, lam: int) -> int:
    """Size of ``A ^ B`` in ``D*A`` when ``|A & B| = lam``."""
    if size_a <= lam or size_b <= lam:
        raise ValueError("block sizes must exceed lambda")
    return 2 * (size_a - lam) + size_b - size_a
