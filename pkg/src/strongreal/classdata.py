"""Combinatorial labels for conjugacy classes of unitary and symplectic groups.

A class of U(n, F_q) is a partition-valued function on U-irreducible
polynomials whose weighted support size is n; elements of the class have
elementary divisors f^(part) for each part of the partition attached to f.
Symplectic classes (q odd) additionally carry a sign on every even part value
of the partitions at t-1 and t+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DatumError, NegationUndefinedError
from .fields import PrimePower, make_context
from .upoly import (
    MonicPoly,
    UIrreducible,
    factor_into_u_irreducibles,
    monic_poly,
    poly_from_json,
    poly_mul,
    poly_one,
    tilde,
    u_irreducible_lookup,
)


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def max_part(self) -> int:
        return self.parts[0] if self.parts else 0

    def mult(self, i: int) -> int:
        """Multiplicity of the part i."""
        return sum(1 for p in self.parts if p == i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


def partition(parts) -> Partition:
    return Partition(tuple(sorted((int(p) for p in parts), reverse=True)))


EMPTY = Partition(())


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, largest-first lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(t) for t in gen(n, n))


def commutant_dim(mu: Partition) -> int:
    """Sum over part pairs of min(part_i, part_j).

    This is the dimension of the algebra of matrices commuting with a
    nilpotent of Jordan type mu.
    """
    parts = mu.parts
    return sum(min(a, b) for a in parts for b in parts)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassDatum:
    """Partition-valued label of a conjugacy class of U(n, F_q).

    blocks maps U-irreducibles in the support to nonempty partitions, kept
    sorted by (degree, coefficients) so equality is structural.
    """

    q: PrimePower
    blocks: tuple[tuple[UIrreducible, Partition], ...]

    @property
    def n(self) -> int:
        return sum(f.degree * mu.size for f, mu in self.blocks)

    def partition_at(self, f: UIrreducible) -> Partition:
        for g, mu in self.blocks:
            if g == f:
                return mu
        return EMPTY

    def support(self):
        return tuple(f for f, _ in self.blocks)

    def to_json(self):
        return {
            "q": self.q.to_json(),
            "n": self.n,
            "blocks": [
                {"poly": f.poly.to_json(), "partition": list(mu.parts)}
                for f, mu in self.blocks
            ],
        }

    def __repr__(self):
        inner = ", ".join(f"{f.poly.coeffs}:{mu.parts}" for f, mu in self.blocks)
        return f"ClassDatum(q={self.q.q}, {{{inner}}})"


def class_datum(q: PrimePower, assignments) -> ClassDatum:
    """Build a datum from {UIrreducible: Partition}; drops empty partitions."""
    items = assignments.items() if isinstance(assignments, dict) else assignments
    blocks = []
    seen = set()
    for f, mu in items:
        if not isinstance(f, UIrreducible):
            raise DatumError("block keys must be U-irreducible polynomials")
        if not isinstance(mu, Partition):
            mu = partition(mu)
        if mu.size == 0:
            continue
        if f.poly.coeffs in seen:
            raise DatumError("duplicate U-irreducible block")
        seen.add(f.poly.coeffs)
        blocks.append((f, mu))
    blocks.sort(key=lambda fm: fm[0].sort_key())
    return ClassDatum(q, tuple(blocks))


def make_class_datum(q: PrimePower, elementary_divisors, expected_n=None) -> ClassDatum:
    """Datum from a list of (MonicPoly base, exponent) elementary divisors.

    Each base polynomial must itself be U-irreducible; exponents of the same
    base are collected into the partition.
    """
    grouped: dict = {}
    for base, exponent in elementary_divisors:
        if exponent < 1:
            raise DatumError("exponents must be at least 1")
        if isinstance(base, UIrreducible):
            uirr = base
        else:
            uirr = u_irreducible_lookup(q, base)
            if uirr is None:
                raise DatumError(
                    f"base polynomial {base.coeffs} is not U-irreducible"
                )
        grouped.setdefault(uirr, []).append(exponent)
    datum = class_datum(q, {f: partition(exps) for f, exps in grouped.items()})
    if expected_n is not None and datum.n != expected_n:
        raise DatumError(f"degree mismatch: datum has n={datum.n}, expected {expected_n}")
    return datum


def t_minus_one(q: PrimePower) -> UIrreducible:
    ctx = make_context(q, 2)
    out = u_irreducible_lookup(q, monic_poly(ctx, (ctx.neg(1),)))
    assert out is not None
    return out


def t_plus_one(q: PrimePower) -> UIrreducible:
    ctx = make_context(q, 2)
    out = u_irreducible_lookup(q, monic_poly(ctx, (1,)))
    assert out is not None
    return out


def unipotent_datum(q: PrimePower, mu) -> ClassDatum:
    mu = mu if isinstance(mu, Partition) else partition(mu)
    if mu.size == 0:
        return ClassDatum(q, ())
    return class_datum(q, {t_minus_one(q): mu})


def negative_unipotent_datum(q: PrimePower, mu) -> ClassDatum:
    mu = mu if isinstance(mu, Partition) else partition(mu)
    if mu.size == 0:
        return ClassDatum(q, ())
    return class_datum(q, {t_plus_one(q): mu})


def is_real(d: ClassDatum) -> bool:
    """True iff the partition at f equals the partition at tilde(f) for all f."""
    for f, mu in d.blocks:
        if d.partition_at(tilde(f)) != mu:
            return False
    return True


def star_decompose(d: ClassDatum) -> list[ClassDatum]:
    """Split a real datum into its t-1 part, t+1 part, and tilde pairs."""
    if not is_real(d):
        raise DatumError("star decomposition requires a real datum")
    one_blocks = {t_minus_one(d.q), t_plus_one(d.q)}
    pieces = []
    done = set()
    for f, mu in d.blocks:
        if f in one_blocks:
            pieces.append(class_datum(d.q, {f: mu}))
            continue
        if f.poly.coeffs in done:
            continue
        ft = tilde(f)
        done.add(f.poly.coeffs)
        done.add(ft.poly.coeffs)
        if ft == f:
            pieces.append(class_datum(d.q, {f: mu}))
        else:
            pieces.append(class_datum(d.q, {f: mu, ft: mu}))
    return pieces


def negate_uirr(f: UIrreducible) -> UIrreducible:
    """The U-irreducible whose roots are the negated roots of f (q odd)."""
    ctx = f.ctx
    # (-1)^d f(-t): coefficient of t^i picks up (-1)^(d-i)
    d = f.degree
    coeffs = tuple(
        c if (d - i) % 2 == 0 else ctx.neg(c) for i, c in enumerate(f.poly.coeffs)
    )
    out = u_irreducible_lookup(ctx.pp, MonicPoly(ctx, coeffs))
    assert out is not None, "negation permutes U-irreducibles for odd q"
    return out


def negate(d: ClassDatum) -> ClassDatum:
    """The datum of -g for g in the class of d; errors in characteristic 2."""
    if d.q.p == 2:
        raise NegationUndefinedError(
            "negation does not permute classes in characteristic 2 (t+1 = t-1)"
        )
    return class_datum(d.q, {negate_uirr(f): mu for f, mu in d.blocks})


def u_sequence(d: ClassDatum) -> list[MonicPoly]:
    """u_i = prod over f of f^(multiplicity of part i), for i = 1..max part."""
    ctx = make_context(d.q, 2)
    top = max((mu.max_part for _, mu in d.blocks), default=0)
    out = []
    for i in range(1, top + 1):
        u = poly_one(ctx)
        for f, mu in d.blocks:
            for _ in range(mu.mult(i)):
                u = poly_mul(u, f.poly)
        out.append(u)
    return out


def from_u_sequence(q: PrimePower, seq) -> ClassDatum:
    """Rebuild the datum from (u_1, u_2, ...) by factoring each u_i."""
    collected: dict = {}
    for i, u in enumerate(seq, start=1):
        if u.degree == 0:
            continue
        for f, mult in factor_into_u_irreducibles(u):
            collected.setdefault(f, []).extend([i] * mult)
    return class_datum(q, {f: partition(parts) for f, parts in collected.items()})


def datum_from_json(obj) -> ClassDatum:
    q = PrimePower(obj["q"]["p"], obj["q"].get("e", 1))
    ctx = make_context(q, 2)
    divisors = []
    for block in obj["blocks"]:
        base = poly_from_json(ctx, block["poly"])
        for part in block["partition"]:
            divisors.append((base, int(part)))
    datum = make_class_datum(q, divisors, expected_n=obj.get("n"))
    return datum


# ---------------------------------------------------------------------------
# symplectic labels (q odd)


@dataclass(frozen=True)
class SignedPartition:
    """Partition with odd parts of even multiplicity and signed even parts.

    signs lists (even part value, +1 or -1), one entry per even part value
    present in the base partition.
    """

    base: Partition
    signs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        mults = self.base.multiplicities()
        for part, m in mults.items():
            if part % 2 == 1 and m % 2 == 1:
                raise DatumError(
                    f"odd part {part} has odd multiplicity {m} in a signed partition"
                )
        even_values = {part for part in mults if part % 2 == 0}
        sign_domain = {part for part, _ in self.signs}
        if sign_domain != even_values:
            raise DatumError("signs must cover exactly the even part values")
        if any(s not in (1, -1) for _, s in self.signs):
            raise DatumError("signs must be +1 or -1")
        if tuple(sorted(self.signs, reverse=True)) != self.signs:
            raise DatumError("signs must be sorted by part, descending")

    @property
    def size(self) -> int:
        return self.base.size

    def sign_of(self, part: int) -> int:
        for p, s in self.signs:
            if p == part:
                return s
        raise KeyError(part)

    def even_value_count(self) -> int:
        return len(self.signs)

    def to_json(self):
        return {
            "partition": list(self.base.parts),
            "signs": {str(p): ("+" if s == 1 else "-") for p, s in self.signs},
        }

    def __repr__(self):
        return f"SignedPartition({self.base.parts}, signs={dict(self.signs)})"


EMPTY_SIGNED = SignedPartition(EMPTY, ())


def signed_partition(parts, signs=None) -> SignedPartition:
    base = partition(parts)
    if signs is None:
        signs = {}
    sign_items = tuple(
        sorted(((int(p), int(s)) for p, s in dict(signs).items()), reverse=True)
    )
    return SignedPartition(base, sign_items)


def enumerate_signed_partitions(weight: int) -> tuple[SignedPartition, ...]:
    """All symplectic signed partitions of the given weight."""
    out = []
    for base in partitions_of(weight):
        mults = base.multiplicities()
        if any(p % 2 and m % 2 for p, m in mults.items()):
            continue
        evens = sorted((p for p in mults if p % 2 == 0), reverse=True)
        for mask in range(1 << len(evens)):
            signs = tuple(
                (p, 1 if mask >> i & 1 == 0 else -1) for i, p in enumerate(evens)
            )
            out.append(SignedPartition(base, signs))
    return tuple(out)


@dataclass(frozen=True)
class SymplecticClassDatum:
    """Label of a conjugacy class of Sp(2n, F_q), q odd.

    Non t+-1 blocks pair each f with tilde(f) carrying equal partitions;
    the t-1 and t+1 blocks are symplectic signed partitions.
    """

    q: PrimePower
    blocks: tuple[tuple[UIrreducible, Partition], ...]
    signed_plus: SignedPartition
    signed_minus: SignedPartition

    def __post_init__(self):
        if self.q.p == 2:
            raise DatumError("symplectic data here require odd q")
        ones = {t_minus_one(self.q), t_plus_one(self.q)}
        lookup = dict(self.blocks)
        for f, mu in self.blocks:
            if f in ones:
                raise DatumError("t+-1 belongs in the signed components")
            if mu.size == 0:
                raise DatumError("empty partition stored in a block")
            if lookup.get(tilde(f)) != mu:
                raise DatumError("blocks must satisfy mu(f) = mu(tilde f)")
        if self.n2 % 2:
            raise DatumError("total degree of a symplectic datum must be even")

    @property
    def n2(self) -> int:
        return (
            self.signed_plus.size
            + self.signed_minus.size
            + sum(f.degree * mu.size for f, mu in self.blocks)
        )

    def to_json(self):
        return {
            "q": self.q.to_json(),
            "n2": self.n2,
            "blocks": [
                {"poly": f.poly.to_json(), "partition": list(mu.parts)}
                for f, mu in self.blocks
            ],
            "t_minus_1": self.signed_plus.to_json(),
            "t_plus_1": self.signed_minus.to_json(),
        }


def symplectic_datum(
    q: PrimePower,
    blocks=None,
    signed_plus: SignedPartition = EMPTY_SIGNED,
    signed_minus: SignedPartition = EMPTY_SIGNED,
) -> SymplecticClassDatum:
    items = []
    if blocks:
        pairs = blocks.items() if isinstance(blocks, dict) else blocks
        for f, mu in pairs:
            mu = mu if isinstance(mu, Partition) else partition(mu)
            if mu.size:
                items.append((f, mu))
    items.sort(key=lambda fm: fm[0].sort_key())
    return SymplecticClassDatum(q, tuple(items), signed_plus, signed_minus)


def sp_splitting_count(d: SymplecticClassDatum) -> int:
    """2^(k1+k2) where k1, k2 count signed even part values at t-1, t+1."""
    return 1 << (d.signed_plus.even_value_count() + d.signed_minus.even_value_count())


def sp_datum_from_json(obj) -> SymplecticClassDatum:
    q = PrimePower(obj["q"]["p"], obj["q"].get("e", 1))
    ctx = make_context(q, 2)
    blocks = {}
    for block in obj.get("blocks", []):
        base = poly_from_json(ctx, block["poly"])
        uirr = u_irreducible_lookup(q, base)
        if uirr is None:
            raise DatumError(f"base polynomial {base.coeffs} is not U-irreducible")
        blocks[uirr] = partition(block["partition"])

    def read_signed(key):
        sub = obj.get(key)
        if not sub:
            return EMPTY_SIGNED
        signs = {
            int(p): (1 if s == "+" else -1) for p, s in sub.get("signs", {}).items()
        }
        return signed_partition(sub["partition"], signs)

    return symplectic_datum(
        q, blocks, read_signed("t_minus_1"), read_signed("t_plus_1")
    )
