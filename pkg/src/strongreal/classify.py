"""Classification of strongly real conjugacy classes.

An element is real when it is conjugate to its inverse, and strongly real
when some involution conjugates it to its inverse.  For odd q the answer is
complete: a real class of U(n, F_q) is strongly real exactly when every even
part of the partitions at t-1 and t+1 has even multiplicity (equivalently,
the class meets an embedded orthogonal group).  For even q only partial
criteria are known, so the classifier is three-valued there and reports
Unknown outside the decided region.

Every non-Unknown verdict carries a stable rule tag so it can be audited:
"reality", "MainThm", "Real2", "notstrong2-1", "notstrong2-2", "SpCor".
"""

from __future__ import annotations

from dataclasses import dataclass

from .classdata import (
    ClassDatum,
    Partition,
    SymplecticClassDatum,
    is_real,
    partition,
    t_minus_one,
    t_plus_one,
    unipotent_datum,
)
from .fields import PrimePower

STRONGLY_REAL = "StronglyReal"
NOT_STRONGLY_REAL = "NotStronglyReal"
UNKNOWN = "Unknown"

RULE_REALITY = "reality"
RULE_MAIN = "MainThm"
RULE_TWO = "TwoLemma"
RULE_REAL2 = "Real2"
RULE_NS2_1 = "notstrong2-1"
RULE_NS2_2 = "notstrong2-2"
RULE_SPCOR = "SpCor"

RULES = (
    RULE_MAIN,
    RULE_TWO,
    RULE_REAL2,
    RULE_NS2_1,
    RULE_NS2_2,
    RULE_SPCOR,
    RULE_REALITY,
)


@dataclass(frozen=True)
class Verdict:
    status: str
    rule: str | None = None
    witness_hint: dict | None = None

    def __post_init__(self):
        if self.status not in (STRONGLY_REAL, NOT_STRONGLY_REAL, UNKNOWN):
            raise ValueError(f"bad status {self.status!r}")
        if self.status != UNKNOWN and not self.rule:
            raise ValueError("decided verdicts must cite a rule")

    @property
    def decided(self) -> bool:
        return self.status != UNKNOWN

    def to_json(self):
        return {"status": self.status, "rule": self.rule, "witness": self.witness_hint}

    def __repr__(self):
        extra = f", rule={self.rule}" if self.rule else ""
        return f"Verdict({self.status}{extra})"


def _even_part_odd_mult(mu: Partition):
    """Smallest even part with odd multiplicity, or None."""
    bad = [p for p, m in mu.multiplicities().items() if p % 2 == 0 and m % 2 == 1]
    return min(bad) if bad else None


def orthogonal_embeddable(d: ClassDatum) -> bool:
    """Real, and every even part at t-1 and t+1 has even multiplicity (q odd).

    These are exactly the classes meeting an embedded orthogonal group.
    """
    if d.q.p == 2:
        raise ValueError("orthogonal embedding criterion requires odd q")
    if not is_real(d):
        return False
    for f in (t_minus_one(d.q), t_plus_one(d.q)):
        if _even_part_odd_mult(d.partition_at(f)) is not None:
            return False
    return True


def symplectic_embeddable_even_q(d: ClassDatum) -> bool:
    """Real, and every part 2m+1 (m >= 1) at t-1 has even multiplicity.

    For even q and even n these are the classes meeting an embedded
    symplectic group.  Strong reality follows but the converse fails.
    """
    if d.q.p != 2:
        raise ValueError("symplectic embedding criterion requires even q")
    if d.n % 2:
        raise ValueError("symplectic embedding criterion requires even dimension")
    if not is_real(d):
        return False
    mu = d.partition_at(t_minus_one(d.q))
    return all(m % 2 == 0 for p, m in mu.multiplicities().items() if p % 2 == 1 and p >= 3)


def _real2_applies(mu: Partition) -> int:
    """0 if neither sufficient condition holds, else 1 or 2 for the branch.

    Branch 1: every odd part >= 3 has even multiplicity.
    Branch 2: part 1 is present and every odd part >= 5 has even multiplicity.
    """
    mults = mu.multiplicities()
    if all(m % 2 == 0 for p, m in mults.items() if p % 2 == 1 and p >= 3):
        return 1
    if mults.get(1, 0) >= 1 and all(
        m % 2 == 0 for p, m in mults.items() if p % 2 == 1 and p >= 5
    ):
        return 2
    return 0


def _notstrong2_applies(mu: Partition) -> int:
    """0 if neither negative condition holds, else 1 or 2 for the case.

    Case 1: the number of odd parts is odd and k - l >= 3, where k is the
    smallest odd part and l the largest even part (0 if none).
    Case 2: exactly one odd part k >= 3, with k - l = 1 and the largest even
    part l of multiplicity one.
    """
    odd_parts = [p for p in mu.parts if p % 2 == 1]
    even_parts = [p for p in mu.parts if p % 2 == 0]
    l = max(even_parts) if even_parts else 0
    if len(odd_parts) % 2 == 1:
        k = min(odd_parts)
        if k - l >= 3:
            return 1
    if len(odd_parts) == 1 and odd_parts[0] >= 3:
        k = odd_parts[0]
        if k - l == 1 and mu.mult(l) == 1:
            return 2
    return 0


def strongly_real(d: ClassDatum) -> Verdict:
    """Classify a class datum.

    Reality is necessary for any q.  For odd q the criterion is complete:
    strongly real iff orthogonally embeddable.  For even q the question
    reduces to the partition mu at t-1 and is answered by sufficient
    conditions on either side, with Unknown in between.
    """
    if not is_real(d):
        return Verdict(NOT_STRONGLY_REAL, RULE_REALITY)
    if d.q.p != 2:
        worst = None
        for f in (t_minus_one(d.q), t_plus_one(d.q)):
            bad = _even_part_odd_mult(d.partition_at(f))
            if bad is not None and (worst is None or bad < worst[1]):
                label = "t-1" if f == t_minus_one(d.q) else "t+1"
                worst = (label, bad, d.partition_at(f).mult(bad))
        if worst is None:
            return Verdict(STRONGLY_REAL, RULE_MAIN)
        return Verdict(
            NOT_STRONGLY_REAL,
            RULE_MAIN,
            {"poly": worst[0], "even_part": worst[1], "multiplicity": worst[2]},
        )
    # even q: strong reality is decided by the t-1 block alone
    mu = d.partition_at(t_minus_one(d.q))
    branch = _real2_applies(mu)
    if branch:
        return Verdict(STRONGLY_REAL, RULE_REAL2, {"branch": branch})
    case = _notstrong2_applies(mu)
    if case == 1:
        odd = [p for p in mu.parts if p % 2 == 1]
        evens = [p for p in mu.parts if p % 2 == 0]
        return Verdict(
            NOT_STRONGLY_REAL,
            RULE_NS2_1,
            {
                "odd_part_count": len(odd),
                "smallest_odd": min(odd),
                "largest_even": max(evens) if evens else 0,
            },
        )
    if case == 2:
        odd = [p for p in mu.parts if p % 2 == 1][0]
        return Verdict(
            NOT_STRONGLY_REAL,
            RULE_NS2_2,
            {"odd_part": odd, "largest_even": odd - 1},
        )
    return Verdict(UNKNOWN)


def unipotent_strongly_real(q: PrimePower, mu) -> Verdict:
    """Verdict for the unipotent class of the given type."""
    mu = mu if isinstance(mu, Partition) else partition(mu)
    return strongly_real(unipotent_datum(q, mu))


def reduce_sharp(mu: Partition, l: int) -> Partition:
    """Subtract 2 from every part >= l and drop the resulting zeros.

    Requires 2 <= l <= max part with the part l present.  Strong reality of
    unipotent classes descends along this reduction, which shrinks n by
    2 * (number of parts >= l).
    """
    if l < 2:
        raise ValueError("l must be at least 2")
    if mu.mult(l) == 0:
        raise ValueError(f"partition has no part equal to {l}")
    new_parts = []
    for p in mu.parts:
        if p >= l:
            if p - 2 > 0:
                new_parts.append(p - 2)
        else:
            new_parts.append(p)
    return partition(new_parts)


def sp_strongly_real(d: SymplecticClassDatum) -> Verdict:
    """Negative criterion for symplectic classes, q odd.

    NotStronglyReal when some even part value has odd multiplicity in the
    underlying partition at t-1 or t+1; no positive criterion is available,
    so everything else is Unknown.
    """
    for label, sp in (("t-1", d.signed_plus), ("t+1", d.signed_minus)):
        bad = _even_part_odd_mult(sp.base)
        if bad is not None:
            return Verdict(
                NOT_STRONGLY_REAL,
                RULE_SPCOR,
                {
                    "poly": label,
                    "even_part": bad,
                    "multiplicity": sp.base.mult(bad),
                },
            )
    return Verdict(UNKNOWN)
