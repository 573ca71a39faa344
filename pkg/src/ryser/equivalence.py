"""Equivalence classes under block complementation, Type-1 decisions and Hypothesis H."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .complementation import BlockClass, block_class, complement_at
from .core import Ryser, SetSystem, Symmetric, classify, replication_profile
from .errors import NotRyser
from .invariants import compute_ledger

# identity step in apply_sequence: the map that fixes every block
IDENTITY = None


@dataclass(frozen=True)
class ClassMember:
    system: SetSystem
    # None for the original system, otherwise the block index complemented at
    via_block: int | None

    @property
    def provenance(self) -> str:
        return "original" if self.via_block is None else f"complemented_at({self.via_block})"


@dataclass
class EquivalenceClass:
    members: list[ClassMember]
    _keys: set[frozenset[int]] = field(default_factory=set, repr=False)

    def __post_init__(self) -> None:
        self._keys = {m.system.family() for m in self.members}

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ClassMember]:
        return iter(self.members)

    def __contains__(self, system: SetSystem) -> bool:
        return system.family() in self._keys

    def families(self) -> set[frozenset[int]]:
        return set(self._keys)


def enumerate_class(system: SetSystem) -> EquivalenceClass:
    """The original system and its complement at each block, deduplicated.

    Duplicates keep the provenance seen first, i.e. the lowest block index.
    """
    members = [ClassMember(system, None)]
    seen = {system.family()}
    for i in range(system.v):
        other = complement_at(system, i)
        key = other.family()
        if key not in seen:
            seen.add(key)
            members.append(ClassMember(other, i))
    return EquivalenceClass(members)


def apply_sequence(system: SetSystem, choices: Sequence[int | None]) -> SetSystem:
    """Complement successively at the given block indices of the current system.

    ``IDENTITY`` (``None``) entries leave the system unchanged.
    """
    current = system
    for step, choice in enumerate(choices):
        if choice is IDENTITY:
            continue
        if not 0 <= choice < current.v:
            raise IndexError(f"step {step}: block index {choice} out of range")
        current = complement_at(current, choice)
    return current


@dataclass(frozen=True)
class Type1Decision:
    is_type1: bool
    witness_block: int | None = None
    symmetric_params: tuple[int, int, int] | None = None
    slow_path: bool | None = None

    def __bool__(self) -> bool:
        return self.is_type1


def _ryser_kind(design: SetSystem) -> Ryser:
    kind = classify(design)
    if not isinstance(kind, Ryser):
        raise NotRyser(f"design classifies as {kind}")
    return kind


def is_type1(design: SetSystem, verify_slow_path: bool = False) -> Type1Decision:
    """Decide Type-1 by looking for ``E1`` or ``E2`` among the blocks.

    With ``verify_slow_path`` the whole class is enumerated and classified as
    well; ``slow_path`` then records whether a symmetric member was found.
    """
    _ryser_kind(design)
    prof = replication_profile(design)
    masks = design.masks
    witness = None
    for target in (prof.E1.mask, prof.E2.mask):
        if target in masks:
            witness = masks.index(target)
            break
    params = None
    if witness is not None:
        sym = complement_at(design, witness)
        kind = classify(sym)
        params = (design.v, kind.k, kind.lambda_prime)
    slow = None
    if verify_slow_path:
        slow = any(isinstance(classify(m.system), Symmetric) for m in enumerate_class(design))
    return Type1Decision(witness is not None, witness, params, slow)


def symmetric_witness_blocks(design: SetSystem) -> list[int]:
    """Indices whose complementation yields a symmetric design, by brute force."""
    return [
        i for i in range(design.v) if isinstance(classify(complement_at(design, i)), Symmetric)
    ]


@dataclass(frozen=True)
class HViolation:
    member: ClassMember
    large_block: int
    small_block: int


@dataclass
class HypothesisHResult:
    violations: list[HViolation]
    members_checked: int

    @property
    def holds(self) -> bool:
        return not self.violations


def check_hypothesis_h(design: SetSystem, exhaustive: bool = False) -> HypothesisHResult:
    """Look for a member of the class with both a large and a small block."""
    _ryser_kind(design)
    violations = []
    checked = 0
    for member in enumerate_class(design):
        if not isinstance(classify(member.system), Ryser):
            continue
        checked += 1
        ledger = compute_ledger(member.system)
        large = small = None
        for idx, block in enumerate(member.system):
            cls, _ = block_class(ledger, block)
            if cls is BlockClass.LARGE and large is None:
                large = idx
            elif cls is BlockClass.SMALL and small is None:
                small = idx
        if large is not None and small is not None:
            violations.append(HViolation(member, large, small))
            if not exhaustive:
                break
    return HypothesisHResult(violations, checked)


@dataclass(frozen=True)
class EvenBlock:
    pair: tuple[int, int]
    system: SetSystem
    block_index: int
    size: int
    k: int
    lam: int


def even_block_construction(design: SetSystem) -> EvenBlock | None:
    """Complement at one of two equal-size blocks; the other becomes even.

    Returns None when all block sizes are distinct.
    """
    kind = _ryser_kind(design)
    first_of_size: dict[int, int] = {}
    for j, k in enumerate(design.sizes):
        if k in first_of_size:
            i = first_of_size[k]
            out = complement_at(design, i)
            return EvenBlock((i, j), out, j, len(out[j]), k, kind.lam)
        first_of_size[k] = j
    return None
