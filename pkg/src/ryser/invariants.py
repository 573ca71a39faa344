"""Exact parameter ledger of a Ryser design and the identities it must satisfy.

Everything here is integer or :class:`fractions.Fraction` arithmetic. A
failing identity on a design that classifies as Ryser is a hard error.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .complementation import BlockClass, block_class
from .core import Block, Ryser, SetSystem, classify, replication_profile
from .errors import IdentityViolation, NotRyser, ParameterError


@dataclass(frozen=True)
class ParameterLedger:
    v: int
    lam: int
    r1: int
    r2: int
    e1: int
    e2: int
    E1: Block
    E2: Block
    rho: Fraction
    c: int
    d: int
    g: int
    a: int
    big_d: int

    def identity_checks(self) -> dict[str, bool]:
        """Every ledger-level identity, keyed by a short name."""
        v, lam, r1, r2, e1, e2 = self.v, self.lam, self.r1, self.r2, self.e1, self.e2
        c, d, g, a, rho = self.c, self.d, self.g, self.a, self.rho
        checks = {
            "replication_sum": r1 + r2 == v + 1 and r1 > r2,
            "point_classes": e1 + e2 == v and e1 > 0 and e2 > 0,
            "gcd_split": (
                r1 - 1 == c * g
                and r2 - 1 == d * g
                and v - 1 == (c + d) * g
                and gcd(c, d) == 1
                and (a == 0 or (gcd(c, a) == 1 and gcd(d, a) == 1))
            ),
            "pair_count": e1 * r1 * (r1 - 1) + e2 * r2 * (r2 - 1) == lam * v * (v - 1),
            "e1_relation": (c - d) * e1 == lam * (c + d) - d * r2,
            "e1_relation_rational": (rho - 1) * e1 == lam * (rho + 1) - r2,
            "e2_relation": (c - d) * e2 == c * r1 - lam * (c + d),
            "e2_relation_rational": (rho - 1) * e2 == rho * r1 - lam * (rho + 1),
            "incidence_sum": e1 * r1 + e2 * r2 == lam * (v - 1) + r1 * r2,
        }
        return checks

    def as_dict(self) -> dict:
        return {
            "v": self.v,
            "lambda": self.lam,
            "r1": self.r1,
            "r2": self.r2,
            "e1": self.e1,
            "e2": self.e2,
            "E1": list(self.E1.points),
            "E2": list(self.E2.points),
            "rho": f"{self.rho.numerator}/{self.rho.denominator}",
            "c": self.c,
            "d": self.d,
            "g": self.g,
            "a": self.a,
            "D": self.big_d,
        }


def _require_ryser(design: SetSystem) -> Ryser:
    kind = classify(design)
    if not isinstance(kind, Ryser):
        raise NotRyser(f"design classifies as {kind}")
    return kind


def compute_ledger(design: SetSystem) -> ParameterLedger:
    kind = _require_ryser(design)
    prof = replication_profile(design)
    r1, r2 = prof.r1, prof.r2
    if r2 < 2:
        raise IdentityViolation("replication_sum", f"r2 = {r2} leaves rho undefined")
    g = gcd(r1 - 1, r2 - 1)
    c, d = (r1 - 1) // g, (r2 - 1) // g
    ledger = ParameterLedger(
        v=design.v,
        lam=kind.lam,
        r1=r1,
        r2=r2,
        e1=prof.e1,
        e2=prof.e2,
        E1=prof.E1,
        E2=prof.E2,
        rho=Fraction(r1 - 1, r2 - 1),
        c=c,
        d=d,
        g=g,
        a=c - d,
        big_d=prof.e1 - r2,
    )
    for name, ok in ledger.identity_checks().items():
        if not ok:
            raise IdentityViolation(name, repr(ledger.as_dict()))
    return ledger


@dataclass(frozen=True)
class SumIdentity:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_sum_identity(design: SetSystem, ledger: ParameterLedger) -> SumIdentity:
    """Compare sum(1/(k_m - lam)) with (rho + 1)^2/rho - 1/lam."""
    lam = ledger.lam
    lhs = sum((Fraction(1, k - lam) for k in design.sizes), Fraction(0))
    rho = ledger.rho
    rhs = (rho + 1) ** 2 / rho - Fraction(1, lam)
    return SumIdentity(lhs, rhs)


@dataclass(frozen=True)
class BlockProfile:
    size: int
    t: int
    tau1: int
    tau2: int
    cls: BlockClass


def block_profile(ledger: ParameterLedger, design: SetSystem, block_index: int) -> BlockProfile:
    block = design[block_index]
    cls, t = block_class(ledger, block)
    tau1 = len(block & ledger.E1)
    tau2 = len(block & ledger.E2)
    lam, c, d = ledger.lam, ledger.c, ledger.d
    where = f"block {block_index}"
    if tau1 != lam - t * d:
        raise IdentityViolation("tau1_form", f"{where}: tau1 = {tau1}, lam - t*d = {lam - t * d}")
    if tau2 != lam + t * c:
        raise IdentityViolation("tau2_form", f"{where}: tau2 = {tau2}, lam + t*c = {lam + t * c}")
    if tau1 + tau2 != len(block) or len(block) != 2 * lam + t * ledger.a:
        raise IdentityViolation("size_form", where)
    if (ledger.r1 - 1) * tau1 + (ledger.r2 - 1) * tau2 != lam * (ledger.v - 1):
        raise IdentityViolation("two_way_count", where)
    ordered = {
        BlockClass.AVERAGE: tau1 == tau2 == lam,
        BlockClass.SMALL: tau1 > lam > tau2,
        BlockClass.LARGE: tau2 > lam > tau1,
    }[cls]
    if not ordered:
        raise IdentityViolation("tau_ordering", f"{where}: {cls.value} with tau = ({tau1}, {tau2})")
    return BlockProfile(len(block), t, tau1, tau2, cls)


def evaluate_quadratic(v: int, lam: int, k: int, alpha: int) -> int:
    """The two-block-size quadratic in the count ``alpha`` of size-``k`` blocks."""
    if k == 2 * lam:
        raise ParameterError("quadratic degenerates when k = 2*lambda")
    s = k - 2 * lam
    return alpha * alpha * s * s - alpha * s * (v + s * (v + 1)) + (k - lam) * v * (v + 1 - 4 * lam)


@dataclass
class TwoSizeAnalysis:
    """Report for a Ryser design whose block sizes are ``{k, 2*lam}``.

    ``pattern`` is False when the sizes do not have that shape; the remaining
    numeric fields are then ``None``.
    """

    v: int
    lam: int
    size_counts: dict[int, int]
    pattern: bool
    k: int | None = None
    alpha: int | None = None
    beta: int | None = None
    count_sum: bool | None = None
    product_relation: bool | None = None
    r1r2: int | None = None
    product_rhs: int | None = None
    p_alpha: int | None = None
    p_one: int | None = None
    p_v: int | None = None
    p_v_closed_form: int | None = None
    symmetric_relation: bool | None = None
    interior_roots: list[int] = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        """Counting identities hold and the size-``k`` block is unique."""
        return bool(
            self.pattern
            and self.count_sum
            and self.product_relation
            and self.alpha == 1
            and self.p_alpha == 0
            and self.p_one == 0
        )


def two_block_size_analysis(design: SetSystem) -> TwoSizeAnalysis:
    kind = _require_ryser(design)
    v, lam = design.v, kind.lam
    counts = dict(sorted(Counter(design.sizes).items()))
    rep = TwoSizeAnalysis(v, lam, counts, pattern=False)
    if len(counts) != 2 or 2 * lam not in counts:
        return rep
    (k,) = [s for s in counts if s != 2 * lam]
    alpha, beta = counts[k], counts[2 * lam]
    rep.pattern = True
    rep.k, rep.alpha, rep.beta = k, alpha, beta
    rep.count_sum = alpha + beta == v
    rep.r1r2 = kind.r1 * kind.r2
    rep.product_rhs = (k - lam) * alpha + lam * (beta + 1)
    rep.product_relation = rep.r1r2 == rep.product_rhs
    rep.p_alpha = evaluate_quadratic(v, lam, k, alpha)
    rep.p_one = evaluate_quadratic(v, lam, k, 1)
    rep.p_v = evaluate_quadratic(v, lam, k, v)
    rep.p_v_closed_form = v * (-k * (k - 1) + lam * (v - 1))
    rep.symmetric_relation = k * (k - 1) == lam * (v - 1)
    rep.interior_roots = [x for x in range(2, v) if evaluate_quadratic(v, lam, k, x) == 0]
    return rep
