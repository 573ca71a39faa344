"""Seed symmetric designs from cyclic difference sets, and Type-1 Ryser designs."""

from __future__ import annotations

from dataclasses import dataclass

from .complementation import complement_at
from .core import SetSystem, Symmetric, classify, mask_of
from .errors import AverageDegenerate, NotSymmetric, ParameterArithmeticMismatch, ParameterError

DEFAULT_MAX_MODULUS = 200


@dataclass(frozen=True)
class DifferenceSet:
    modulus: int
    residues: tuple[int, ...]
    k: int
    lambda_prime: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "residues", tuple(sorted(r % self.modulus for r in self.residues)))

    def difference_counts(self) -> list[int]:
        v = self.modulus
        counts = [0] * v
        for x in self.residues:
            for y in self.residues:
                if x != y:
                    counts[(x - y) % v] += 1
        return counts

    def is_valid(self) -> bool:
        counts = self.difference_counts()
        return (
            len(set(self.residues)) == self.k
            and all(c == self.lambda_prime for c in counts[1:])
            and self.k * (self.k - 1) == self.lambda_prime * (self.modulus - 1)
        )


def find_difference_set(
    v: int, k: int, lambda_prime: int, max_modulus: int = DEFAULT_MAX_MODULUS
) -> DifferenceSet | None:
    """Lexicographically least ``(v, k, lambda')`` difference set in Z_v, or None.

    Elements are added in increasing order starting from 0, and any residue
    whose difference count would exceed ``lambda'`` is pruned.
    """
    if k * (k - 1) != lambda_prime * (v - 1):
        raise ParameterArithmeticMismatch(
            f"k(k-1) = {k * (k - 1)} but lambda'(v-1) = {lambda_prime * (v - 1)}"
        )
    if v > max_modulus:
        raise ParameterError(f"modulus {v} exceeds the configured bound {max_modulus}")
    if not 1 <= k <= v:
        raise ParameterError(f"need 1 <= k <= v, got k = {k}, v = {v}")

    counts = [0] * v
    chosen = [0]

    def place(y: int, sign: int) -> bool:
        ok = True
        for x in chosen:
            for diff in ((y - x) % v, (x - y) % v):
                counts[diff] += sign
                if counts[diff] > lambda_prime:
                    ok = False
        return ok

    def extend(start: int) -> bool:
        if len(chosen) == k:
            return True
        # leave room for the elements still to come
        for y in range(start, v - (k - len(chosen)) + 1):
            if place(y, 1):
                chosen.append(y)
                if extend(y + 1):
                    return True
                chosen.pop()
            place(y, -1)
        return False

    if not extend(1):
        return None
    return DifferenceSet(v, tuple(chosen), k, lambda_prime)


def develop(ds: DifferenceSet) -> SetSystem:
    """The ``v`` cyclic translates of a difference set, translate ``i`` at index ``i``."""
    v = ds.modulus
    return SetSystem.from_masks(v, (mask_of((r + i) % v for r in ds.residues) for i in range(v)))


def _symmetric(sym: SetSystem) -> Symmetric:
    kind = classify(sym)
    if not isinstance(kind, Symmetric):
        raise NotSymmetric(f"design classifies as {kind}")
    return kind


def make_type1(sym: SetSystem, block_index: int) -> SetSystem:
    """Complement a symmetric design at one block, giving a Type-1 Ryser design."""
    kind = _symmetric(sym)
    if kind.k == 2 * kind.lambda_prime:
        raise AverageDegenerate(
            f"k = {kind.k} = 2*lambda'; complementation yields a symmetric design again"
        )
    return complement_at(sym, block_index)


def complement_design(sym: SetSystem) -> SetSystem:
    """Replace every block by its complement in the point set."""
    kind = _symmetric(sym)
    if sym.v - 2 * kind.k + kind.lambda_prime < 1:
        raise ParameterError(
            f"complement of a ({sym.v}, {kind.k}, {kind.lambda_prime}) design has lambda < 1"
        )
    full = (1 << sym.v) - 1
    return SetSystem.from_masks(sym.v, (full & ~m for m in sym.masks))


# --- named seeds ------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(f for f in range(2, n + 1) if n % f == 0)
    while n % p == 0:
        n //= p
    return n == 1


def fano() -> SetSystem:
    return pg2(2)


def pg2(q: int) -> SetSystem:
    """Desarguesian projective plane of order ``q`` from a planar difference set."""
    if not _is_prime_power(q):
        raise ParameterError(f"q = {q} is not a prime power")
    v = q * q + q + 1
    ds = find_difference_set(v, q + 1, 1, max_modulus=max(DEFAULT_MAX_MODULUS, v))
    if ds is None:
        raise ParameterError(f"no planar difference set found for q = {q}")
    return develop(ds)


def paley_difference_set(q: int) -> DifferenceSet:
    if not _is_prime(q) or q % 4 != 3 or q < 7:
        raise ParameterError(f"Paley seeds need a prime q = 3 (mod 4) with q >= 7, got {q}")
    residues = sorted({x * x % q for x in range(1, q)})
    return DifferenceSet(q, tuple(residues), (q - 1) // 2, (q - 3) // 4)


def paley(q: int) -> SetSystem:
    """The ``(q, (q-1)/2, (q-3)/4)`` design developed from the quadratic residues."""
    return develop(paley_difference_set(q))


def named_seed(name: str, *args: int) -> SetSystem:
    if name == "fano":
        return fano()
    if name == "pg2":
        return pg2(*args)
    if name == "paley":
        return paley(*args)
    if name == "diffset":
        ds = find_difference_set(*args)
        if ds is None:
            raise ParameterError(f"no difference set with parameters {args}")
        return develop(ds)
    raise ParameterError(f"unknown seed {name!r}")
