"""Ground truth by brute force over explicit matrix groups.

Materializes small unitary groups U(n, F_q) as sets of matrices over GF(q^2),
extracts class data from matrices, decides reality and strong reality by
exhaustive search, and reconciles everything against the classify module.

Search budgets are explicit; exceeding one raises, it never silently turns
into a verdict.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass

from . import classify
from .classdata import (
    ClassDatum,
    class_datum,
    is_real as datum_is_real,
    partition,
)
from .counting import enumerate_class_data
from .errors import (
    BudgetExceededError,
    GroupClosureError,
    RealizationError,
)
from .fields import GFTable, PrimePower, make_context, prime_power, table_for
from .linalg import (
    Matrix,
    charpoly,
    conj_transpose,
    identity,
    is_hermitian,
    is_unitary,
    mat_det,
    mat_inv,
    mat_mul,
    mat_rank,
    nullspace,
    transpose,
)
from .upoly import MonicPoly, factor_into_u_irreducibles


@dataclass(frozen=True)
class Budgets:
    """Hard caps for the search strategies."""

    entry_scan: int = 10**8        # cap on q^(2 n^2) for entrywise filtering
    group_order: int = 2 * 10**6   # cap on materialized group order
    reversing_scan: int = 10**7    # cap on reversing-space candidates
    realize_scan: int = 200_000    # cap on invariant-form search candidates

    @staticmethod
    def from_env() -> "Budgets":
        """Default budgets; STRONGREAL_BUDGET, if set, caps all of them."""
        raw = os.environ.get("STRONGREAL_BUDGET")
        if not raw:
            return Budgets()
        return Budgets.uniform(int(raw))

    @staticmethod
    def uniform(value: int) -> "Budgets":
        return Budgets(
            entry_scan=value,
            group_order=value,
            reversing_scan=value,
            realize_scan=value,
        )


DEFAULT_BUDGETS = Budgets()


def unitary_order(n: int, q: int) -> int:
    """q^(n(n-1)/2) * prod over i of (q^i - (-1)^i)."""
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q**i - (-1) ** i
    return out


@dataclass(frozen=True)
class HermitianForm:
    """Invertible matrix J with conj-transpose(J) = J."""

    q: PrimePower
    gram: Matrix

    def __post_init__(self):
        F = table_for(self.q)
        if not is_hermitian(F, self.gram):
            raise ValueError("gram matrix is not Hermitian")
        if mat_det(F, self.gram) == 0:
            raise ValueError("gram matrix is singular")

    @property
    def n(self) -> int:
        return len(self.gram)

    def to_json(self):
        ctx = make_context(self.q, 2)
        return {
            "q": self.q.to_json(),
            "gram": [[list(ctx.to_coords(a)) for a in row] for row in self.gram],
        }


def identity_form(n: int, q: PrimePower) -> HermitianForm:
    return HermitianForm(q, identity(n))


def anti_diagonal(n: int) -> Matrix:
    return tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))


def _block_diag(*blocks) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * offset + tuple(r) + (0,) * (n - offset - len(r)))
        offset += len(b)
    return tuple(rows)


def standard_forms(n: int, q: PrimePower) -> list[HermitianForm]:
    """Identity plus the block forms used by the explicit constructions.

    Includes N_2r + I_m for 2r <= n, N_3 + 1 at n = 4, N_3 + N_2 at n = 5,
    and the full antidiagonal N_n when 3 divides n.
    """
    grams = [identity(n)]
    for r in range(1, n // 2 + 1):
        blocks = [anti_diagonal(2 * r)]
        if n - 2 * r:
            blocks.append(identity(n - 2 * r))
        grams.append(_block_diag(*blocks))
    if n == 4:
        grams.append(_block_diag(anti_diagonal(3), identity(1)))
    if n == 5:
        grams.append(_block_diag(anti_diagonal(3), anti_diagonal(2)))
    if n % 3 == 0:
        grams.append(anti_diagonal(n))
    seen = set()
    out = []
    for g in grams:
        if g not in seen:
            seen.add(g)
            out.append(HermitianForm(q, g))
    return out


# ---------------------------------------------------------------------------
# group enumeration


@dataclass
class GroupEnumeration:
    """A fully materialized unitary group for a fixed form."""

    form: HermitianForm
    elements: tuple
    generators: tuple
    strategy: str

    def __post_init__(self):
        self._set = frozenset(self.elements)
        self._involutions = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    def involutions(self):
        if self._involutions is None:
            F = table_for(self.form.q)
            eye = identity(self.form.n)
            self._involutions = tuple(
                s for s in self.elements if mat_mul(F, s, s) == eye
            )
        return self._involutions


def _hermitian_dot(F: GFTable, u, J, v):
    """u* J v for column vectors."""
    add, mul, conj = F.add, F.mul, F.conj
    n = len(u)
    acc = 0
    for k in range(n):
        uk = conj[u[k]]
        if not uk:
            continue
        row = J[k]
        inner = 0
        for l in range(n):
            if row[l] and v[l]:
                inner = add[inner][mul[row[l]][v[l]]]
        acc = add[acc][mul[uk][inner]]
    return acc


def _entrywise_elements(F: GFTable, n: int, J: Matrix):
    """All matrices with g* J g = J, built column by column with pruning."""
    vectors = list(itertools.product(range(F.size), repeat=n))
    out = []
    cols: list = []

    def rec(j):
        if j == n:
            out.append(tuple(zip(*cols)))
            return
        for v in vectors:
            if _hermitian_dot(F, v, J, v) != J[j][j]:
                continue
            ok = True
            for i in range(j):
                if _hermitian_dot(F, cols[i], J, v) != J[i][j]:
                    ok = False
                    break
            if ok:
                cols.append(v)
                rec(j + 1)
                cols.pop()

    rec(0)
    return sorted(out)


def _closure(F: GFTable, start, gens):
    """Right-multiplication closure of start under gens."""
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(F, x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _greedy_generators(F: GFTable, elements):
    """Small deterministic generating set by greedy accumulation."""
    target = len(elements)
    n = len(elements[0])
    gens: list = []
    have = {identity(n)}
    for g in elements:
        if g in have:
            continue
        gens.append(g)
        have = _closure(F, have | {g}, gens)
        if len(have) == target:
            break
    assert len(have) == target
    return tuple(gens)


def _embed_block(n: int, block: Matrix, pos: int) -> Matrix:
    """block at rows/cols [pos, pos+len), identity elsewhere."""
    m = len(block)
    rows = []
    for i in range(n):
        if pos <= i < pos + m:
            row = [0] * n
            for j in range(m):
                row[pos + j] = block[i - pos][j]
        else:
            row = [1 if j == i else 0 for j in range(n)]
        rows.append(tuple(row))
    return tuple(rows)


def _closure_seeds(F: GFTable, n: int, u2_elements):
    """The seed set: embedded U(2) blocks, unitary diagonals, scaled permutations."""
    seeds = set()
    for pos in range(n - 1):
        for m2 in u2_elements:
            seeds.add(_embed_block(n, m2, pos))
    for diag in itertools.product(F.norm_one, repeat=n):
        seeds.add(tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))
    for perm in itertools.permutations(range(n)):
        for scalars in itertools.product(F.norm_one, repeat=n):
            seeds.add(
                tuple(
                    tuple(scalars[i] if j == perm[i] else 0 for j in range(n))
                    for i in range(n)
                )
            )
    return seeds


def _closure_elements(F: GFTable, n: int, q: PrimePower, budgets: Budgets):
    predicted = unitary_order(n, q.q)
    if predicted > budgets.group_order:
        raise BudgetExceededError(
            f"predicted order {predicted} exceeds the group budget {budgets.group_order}"
        )
    u2 = _entrywise_elements(F, 2, identity(2))
    u2_gens = _greedy_generators(F, u2)
    gens = [_embed_block(n, g, pos) for pos in range(n - 1) for g in u2_gens]
    elements = _closure(F, {identity(n)}, gens)
    if len(elements) != predicted and n > 2 and q.q ** 18 <= budgets.entry_scan:
        # q = 2 is special: U(2, F_2) is monomial, so 2x2 blocks only reach
        # the monomial subgroup; embedded 3x3 blocks repair that
        u3 = _entrywise_elements(F, 3, identity(3))
        u3_gens = _greedy_generators(F, u3)
        extra = [_embed_block(n, g, pos) for pos in range(n - 2) for g in u3_gens]
        gens = gens + extra
        elements = _closure(F, elements | set(extra), gens)
    if len(elements) != predicted:
        # last resort: close over the whole seed set
        seeds = _closure_seeds(F, n, u2)
        elements = _closure(F, elements | seeds, sorted(seeds))
        gens = sorted(seeds)
    if len(elements) != predicted:
        raise GroupClosureError(
            f"closure reached {len(elements)} elements, expected {predicted}"
        )
    # the baseline seed set must sit inside the closure
    for seed in _closure_seeds(F, n, u2):
        if seed not in elements:
            raise GroupClosureError("seed matrix escaped the closure")
    return sorted(elements), tuple(gens)


def enumerate_group(
    n: int,
    q,
    form: HermitianForm | None = None,
    strategy: str = "auto",
    budgets: Budgets = DEFAULT_BUDGETS,
) -> GroupEnumeration:
    """Materialize U(n, F_q) for the given form.

    entrywise filters all candidate matrices (bounded by q^(2 n^2)); closure
    grows the group from embedded U(2) generators and verifies the order
    formula.  Non-identity forms are reached by transporting the identity
    form group through a congruence.
    """
    pp = q if isinstance(q, PrimePower) else prime_power(q)
    F = table_for(pp)
    if form is None:
        form = identity_form(n, pp)
    if form.gram != identity(n):
        base = enumerate_group(n, pp, None, strategy, budgets)
        r = congruence_to_identity(F, form.gram)
        rinv = mat_inv(F, r)
        elements = sorted(mat_mul(F, mat_mul(F, r, g), rinv) for g in base.elements)
        gens = tuple(mat_mul(F, mat_mul(F, r, g), rinv) for g in base.generators)
        out = GroupEnumeration(form, tuple(elements), gens, base.strategy + "+transport")
        assert out.order == base.order
        return out

    entry_cost = pp.q ** (2 * n * n)
    predicted = unitary_order(n, pp.q)
    if strategy == "auto":
        if entry_cost <= 10**6:
            strategy = "entrywise"
        elif predicted <= budgets.group_order:
            strategy = "closure"
        elif entry_cost <= budgets.entry_scan:
            strategy = "entrywise"
        else:
            raise BudgetExceededError(
                f"U({n}, F_{pp.q}) is out of reach: entry scan {entry_cost}, order {predicted}"
            )
    if strategy == "entrywise":
        if entry_cost > budgets.entry_scan:
            raise BudgetExceededError(
                f"entrywise scan size {entry_cost} exceeds budget {budgets.entry_scan}"
            )
        elements = _entrywise_elements(F, n, form.gram)
        gens = _greedy_generators(F, elements)
    elif strategy == "closure":
        elements, gens = _closure_elements(F, n, pp, budgets)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if len(elements) != predicted:
        raise GroupClosureError(
            f"enumerated order {len(elements)} contradicts the formula {predicted}"
        )
    return GroupEnumeration(form, tuple(elements), tuple(gens), strategy)


# ---------------------------------------------------------------------------
# matrices <-> class data


def extract_class_datum(g: Matrix, q) -> ClassDatum:
    """Datum of g: factor the characteristic polynomial, read partitions
    from nullity jumps of powers of each factor evaluated at g."""
    pp = q if isinstance(q, PrimePower) else prime_power(q)
    F = table_for(pp)
    ctx2 = make_context(pp, 2)
    n = len(g)
    chi = MonicPoly(ctx2, charpoly(F, g))
    factors = factor_into_u_irreducibles(chi)
    blocks = {}
    for f, total in factors:
        d = f.degree
        if total == 1:
            blocks[f] = partition([1])
            continue
        fg = _poly_at_matrix(F, f.poly, g)
        ranks = []
        power = fg
        while True:
            ranks.append(n - mat_rank(F, power))
            if ranks[-1] == d * total:
                break
            power = mat_mul(F, power, fg)
        r = [0] + ranks
        r.append(r[-1])
        parts = []
        for j in range(1, len(r) - 1):
            mj = 2 * r[j] - r[j - 1] - r[j + 1]
            assert mj % d == 0 and mj >= 0
            parts.extend([j] * (mj // d))
        blocks[f] = partition(parts)
    datum = class_datum(pp, blocks)
    assert datum.n == n
    return datum


def _poly_at_matrix(F: GFTable, f, g: Matrix) -> Matrix:
    """Evaluate a monic polynomial at a matrix (Horner)."""
    n = len(g)
    coeffs = f.full() if isinstance(f, MonicPoly) else f
    acc = tuple(tuple(coeffs[-1] if i == j else 0 for j in range(n)) for i in range(n))
    add = F.add
    for c in reversed(coeffs[:-1]):
        acc = mat_mul(F, acc, g)
        if c:
            acc = tuple(
                tuple(add[acc[i][j]][c] if i == j else acc[i][j] for j in range(n))
                for i in range(n)
            )
    return acc


def _companion(F: GFTable, full_coeffs) -> Matrix:
    """Companion matrix of a monic polynomial with the given full coefficients."""
    D = len(full_coeffs) - 1
    neg = F.neg
    rows = []
    for i in range(D):
        row = [0] * D
        if i >= 1:
            row[i - 1] = 1
        row[D - 1] = neg[full_coeffs[i]]
        rows.append(tuple(row))
    return tuple(rows)


def _jordan_style_matrix(F: GFTable, d: ClassDatum) -> Matrix:
    from .upoly import poly_one, poly_mul

    blocks = []
    ctx2 = make_context(d.q, 2)
    for f, mu in d.blocks:
        for part in mu.parts:
            power = poly_one(ctx2)
            for _ in range(part):
                power = poly_mul(power, f.poly)
            blocks.append(_companion(F, power.full()))
    return _block_diag(*blocks) if blocks else ()


# ---------------------------------------------------------------------------
# invariant Hermitian forms and congruences


def _prime_table(pp: PrimePower) -> GFTable:
    return table_for(PrimePower(pp.p, 1), 1)


def _invariant_hermitian_basis(pp: PrimePower, g0: Matrix):
    """GF(p)-basis of Hermitian X with g0* X g0 = X."""
    F = table_for(pp)
    Fp = _prime_table(pp)
    ctx2 = make_context(pp, 2)
    d2 = ctx2.deg
    p = pp.p
    n = len(g0)
    nvars = n * n * d2

    basis_packed = [ctx2.from_coords(tuple(1 if t == j else 0 for t in range(d2))) for j in range(d2)]

    def mult_block(s):
        """d2 x d2 GF(p) matrix of y -> s*y in coordinates."""
        cols = [ctx2.to_coords(ctx2.mul(s, b)) for b in basis_packed]
        return [[cols[j][i] for j in range(d2)] for i in range(d2)]

    conj_cols = [ctx2.to_coords(ctx2.conj(b)) for b in basis_packed]
    conj_block = [[conj_cols[j][i] for j in range(d2)] for i in range(d2)]

    A = conj_transpose(F, g0)
    rows = []

    def var(k, l, j):
        return (k * n + l) * d2 + j

    # invariance: sum over k,l of A[r][k] B[l][c] X[k][l] = X[r][c]
    for r in range(n):
        for c in range(n):
            block_rows = [[0] * nvars for _ in range(d2)]
            for k in range(n):
                ark = A[r][k]
                if not ark:
                    continue
                for l in range(n):
                    s = F.mul[ark][g0[l][c]]
                    if not s:
                        continue
                    mb = mult_block(s)
                    for i in range(d2):
                        row = block_rows[i]
                        for j in range(d2):
                            if mb[i][j]:
                                v = var(k, l, j)
                                row[v] = (row[v] + mb[i][j]) % p
            for i in range(d2):
                v = var(r, c, i)
                block_rows[i][v] = (block_rows[i][v] - 1) % p
            rows.extend(block_rows)
    # hermitian symmetry: X[r][c] = conj(X[c][r])
    for r in range(n):
        for c in range(n):
            for i in range(d2):
                row = [0] * nvars
                row[var(r, c, i)] = (row[var(r, c, i)] + 1) % p
                for j in range(d2):
                    if conj_block[i][j]:
                        v = var(c, r, j)
                        row[v] = (row[v] - conj_block[i][j]) % p
                rows.append(row)
    kernel = nullspace(Fp, rows)
    mats = []
    for vec in kernel:
        entries = []
        for k in range(n):
            row = []
            for l in range(n):
                coords = tuple(vec[var(k, l, j)] for j in range(d2))
                row.append(ctx2.from_coords(coords))
            entries.append(tuple(row))
        mats.append(tuple(entries))
    return mats


def _first_nondegenerate(F: GFTable, basis, p: int, budget: int) -> Matrix:
    """Deterministic scan of the GF(p)-span for an invertible member."""
    m = len(basis)
    if m == 0:
        raise RealizationError("invariant form space is zero")
    n = len(basis[0])
    add, mul = F.add, F.mul
    count = min(p**m, budget + 1)
    for counter in range(1, count):
        digits = []
        x = counter
        for _ in range(m):
            digits.append(x % p)
            x //= p
        acc = [[0] * n for _ in range(n)]
        for i, c in enumerate(digits):
            if not c:
                continue
            B = basis[i]
            for r in range(n):
                row = acc[r]
                Br = B[r]
                for s in range(n):
                    if Br[s]:
                        row[s] = add[row[s]][mul[c][Br[s]]]
        X = tuple(tuple(r) for r in acc)
        if mat_det(F, X) != 0:
            return X
    raise RealizationError(
        f"no nondegenerate invariant form within {budget} candidates"
    )


def congruence_to_identity(F: GFTable, X: Matrix) -> Matrix:
    """R with R* X R = I, by Hermitian Gram-Schmidt with norm scaling."""
    n = len(X)
    add, mul, neg, conj, inv = F.add, F.mul, F.neg, F.conj, F.inv
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]

    def dot(u, v):
        return _hermitian_dot(F, u, X, v)

    for i in range(n):
        if dot(basis[i], basis[i]) == 0:
            fixed = False
            for j in range(i + 1, n):
                if fixed:
                    break
                for lam in range(1, F.size):
                    cand = tuple(
                        add[basis[i][t]][mul[lam][basis[j][t]]] for t in range(n)
                    )
                    if dot(cand, cand) != 0:
                        basis[i] = cand
                        fixed = True
                        break
            if not fixed:
                raise RealizationError("form is degenerate on the remaining space")
        norm = dot(basis[i], basis[i])
        # norm lies in the fixed field of conjugation; scale it away
        scale = next(
            b for b in range(1, F.size) if mul[b][conj[b]] == norm
        )
        sinv = inv[scale]
        basis[i] = tuple(mul[sinv][t] for t in basis[i])
        for j in range(i + 1, n):
            c = dot(basis[i], basis[j])
            if c:
                nc = neg[c]
                basis[j] = tuple(
                    add[basis[j][t]][mul[nc][basis[i][t]]] for t in range(n)
                )
    return transpose(tuple(basis))


def realize_class(
    d: ClassDatum,
    form: HermitianForm | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Matrix:
    """A matrix in the class of d, unitary for the given form.

    Builds the companion block matrix, solves for an invariant nondegenerate
    Hermitian form X, and conjugates by a congruence taking the target form
    to X.  The result is verified: right form, right datum.
    """
    pp = d.q
    F = table_for(pp)
    n = d.n
    if n == 0:
        raise RealizationError("cannot realize the empty datum")
    if form is None:
        form = identity_form(n, pp)
    if form.n != n:
        raise RealizationError("form dimension does not match the datum")
    g0 = _jordan_style_matrix(F, d)
    basis = _invariant_hermitian_basis(pp, g0)
    X = _first_nondegenerate(F, basis, pp.p, budgets.realize_scan)
    qmat = congruence_to_identity(F, X)
    rmat = congruence_to_identity(F, form.gram)
    pmat = mat_mul(F, rmat, mat_inv(F, qmat))
    g = mat_mul(F, mat_mul(F, pmat, g0), mat_inv(F, pmat))
    if not is_unitary(F, g, form.gram):
        raise RealizationError("realized matrix failed the unitarity check")
    if extract_class_datum(g, pp) != d:
        raise RealizationError("realized matrix has the wrong class datum")
    return g


# ---------------------------------------------------------------------------
# explicit representatives used by the positive/negative constructions


def explicit_representative(kind: str, q, r: int = 1, m: int = 0):
    """The displayed matrix for a named construction, with its form.

    kinds: two_one(r, m) for odd q; three_one, three_two, three_r(r) for even q.
    Parameters are chosen deterministically (first suitable in scan order).
    """
    pp = q if isinstance(q, PrimePower) else prime_power(q)
    F = table_for(pp)
    if kind == "two_one":
        if pp.p == 2:
            raise ValueError("two_one requires odd q")
        if r < 1 or r % 2 == 0:
            raise ValueError("two_one requires odd r >= 1")
        a = next(x for x in F.trace_zero if x)
        n = 2 * r + m
        gram = _block_diag(anti_diagonal(2 * r), identity(m)) if m else anti_diagonal(2 * r)
        rows = []
        for i in range(n):
            row = [0] * n
            row[i] = 1
            if i < r:
                row[i + r] = a
            rows.append(tuple(row))
        g = tuple(rows)
    elif kind in ("three_one", "three_two", "three_r"):
        if pp.p != 2:
            raise ValueError(f"{kind} requires even q")
        a = 1
        aa = F.mul[a][F.conj[a]]
        b = next(x for x in range(F.size) if F.add[x][F.conj[x]] == aa)
        ab = F.conj[a]
        if kind == "three_one":
            gram = _block_diag(anti_diagonal(3), identity(1))
            g = (
                (1, a, b, 0),
                (0, 1, ab, 0),
                (0, 0, 1, 0),
                (0, 0, 0, 1),
            )
        elif kind == "three_two":
            gram = _block_diag(anti_diagonal(3), anti_diagonal(2))
            g = (
                (1, a, b, 0, 0),
                (0, 1, ab, 0, 0),
                (0, 0, 1, 0, 0),
                (0, 0, 0, 1, 1),
                (0, 0, 0, 0, 1),
            )
        else:
            if r < 1 or r % 2 == 0:
                raise ValueError("three_r requires odd r")
            n = 3 * r
            gram = anti_diagonal(n)
            rows = []
            for i in range(n):
                row = [0] * n
                row[i] = 1
                if i < r:
                    row[i + r] = a
                    row[i + 2 * r] = b
                elif i < 2 * r:
                    row[i + r] = ab
                rows.append(tuple(row))
            g = tuple(rows)
    else:
        raise ValueError(f"unknown representative kind {kind!r}")
    form = HermitianForm(pp, gram)
    if not is_unitary(F, g, form.gram):
        raise AssertionError("representative must satisfy the unitarity equation")
    return g, form


def three_one_involution(q) -> Matrix:
    """The explicit reversing involution for the type (3,1) representative.

    Built from the first root beta of t^2 + t + 1 in GF(q^2) and alpha =
    beta * a with the same a used by explicit_representative('three_one').
    """
    pp = q if isinstance(q, PrimePower) else prime_power(q)
    if pp.p != 2:
        raise ValueError("three_one requires even q")
    F = table_for(pp)
    beta = next(
        x
        for x in range(F.size)
        if F.add[F.add[F.mul[x][x]][x]][1] == 0
    )
    a = 1
    alpha = F.mul[beta][a]
    ac = F.conj[alpha]
    return (
        (1, alpha, 0, alpha),
        (0, 1, ac, 0),
        (0, 0, 1, 0),
        (0, 0, ac, 1),
    )


# ---------------------------------------------------------------------------
# reality and strong reality search


def reversing_space(F: GFTable, g: Matrix):
    """Basis of {h : h g = g^(-1) h} over GF(q^2)."""
    n = len(g)
    ginv = mat_inv(F, g)
    add, mul, neg = F.add, F.mul, F.neg
    rows = []
    for r in range(n):
        for c in range(n):
            row = [0] * (n * n)
            for k in range(n):
                v = g[k][c]
                if v:
                    idx = r * n + k
                    row[idx] = add[row[idx]][v]
                w = ginv[r][k]
                if w:
                    idx = k * n + c
                    row[idx] = add[row[idx]][neg[w]]
            rows.append(row)
    kernel = nullspace(F, rows)
    return [tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(n)) for vec in kernel]


def _flat(mat: Matrix):
    return tuple(x for row in mat for x in row)


def _scan_reversing_space(
    F: GFTable,
    basis,
    n: int,
    gram: Matrix,
    want,
    collect: bool,
    budget: int,
):
    """Exhaustive scan of the reversing space.

    want = "involution": unitary h with h^2 = 1 (strong reality witnesses);
    want = "unitary": any unitary h (reality witnesses).  Early-exits on the
    first hit unless collect is set.
    """
    m = len(basis)
    if m == 0:
        return []
    size = F.size
    total = size**m
    if total > budget:
        raise BudgetExceededError(
            f"reversing-space scan of {total} candidates exceeds budget {budget}"
        )
    add, mul = F.add, F.mul
    scaled = [
        [_flat(tuple(tuple(mul[c][x] for x in row) for row in B)) for c in range(size)]
        for B in basis
    ]
    L = n * n

    def involution_ok(h):
        for rr in range(n):
            base = rr * n
            for cc in range(n):
                acc = 0
                for k in range(n):
                    a = h[base + k]
                    if a:
                        b = h[k * n + cc]
                        if b:
                            acc = add[acc][mul[a][b]]
                if acc != (1 if rr == cc else 0):
                    return False
        return True

    def unitary_ok(h):
        hm = tuple(tuple(h[i * n + j] for j in range(n)) for i in range(n))
        return is_unitary(F, hm, gram)

    found = []

    def rec(i, partial):
        if found and not collect:
            return
        if i == 0:
            row = scaled[0]
            for v in range(size):
                sb = row[v]
                h = [add[partial[k]][sb[k]] for k in range(L)]
                if want == "involution":
                    if involution_ok(h) and unitary_ok(h):
                        hm = tuple(tuple(h[a * n + b] for b in range(n)) for a in range(n))
                        found.append(hm)
                        if not collect:
                            return
                else:
                    if any(h) and unitary_ok(h):
                        hm = tuple(tuple(h[a * n + b] for b in range(n)) for a in range(n))
                        found.append(hm)
                        if not collect:
                            return
            return
        row = scaled[i]
        for v in range(size):
            sb = row[v]
            rec(i - 1, [add[partial[k]][sb[k]] for k in range(L)])
            if found and not collect:
                return

    rec(m - 1, [0] * L)
    return found


def strong_reality_witnesses(
    g: Matrix,
    form: HermitianForm,
    group: GroupEnumeration | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
):
    """Every unitary involution s with s g s = g^(-1)."""
    F = table_for(form.q)
    if group is not None:
        ginv = mat_inv(F, g)
        return [
            s
            for s in group.involutions()
            if mat_mul(F, mat_mul(F, s, g), s) == ginv
        ]
    basis = reversing_space(F, g)
    return _scan_reversing_space(
        F, basis, len(g), form.gram, "involution", True, budgets.reversing_scan
    )


def is_strongly_real_oracle(
    g: Matrix,
    form: HermitianForm,
    group: GroupEnumeration | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    """Search verdict: does some unitary involution reverse g?

    With a materialized group, scans its involutions; otherwise scans the
    reversing space.  Raises BudgetExceededError instead of guessing.
    """
    F = table_for(form.q)
    if group is not None:
        ginv = mat_inv(F, g)
        return any(
            mat_mul(F, mat_mul(F, s, g), s) == ginv for s in group.involutions()
        )
    basis = reversing_space(F, g)
    found = _scan_reversing_space(
        F, basis, len(g), form.gram, "involution", False, budgets.reversing_scan
    )
    return bool(found)


def is_real_oracle(
    g: Matrix,
    form: HermitianForm,
    group: GroupEnumeration | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    """Search verdict: is g conjugate to its inverse within the group?"""
    F = table_for(form.q)
    if group is not None:
        ginv = mat_inv(F, g)
        return any(
            mat_mul(F, h, g) == mat_mul(F, ginv, h) for h in group.elements
        )
    basis = reversing_space(F, g)
    found = _scan_reversing_space(
        F, basis, len(g), form.gram, "unitary", False, budgets.reversing_scan
    )
    return bool(found)


# ---------------------------------------------------------------------------
# reconciliation


@dataclass(frozen=True)
class ClassRecord:
    datum: ClassDatum
    oracle_real: bool | None  # None when every strategy ran out of budget
    oracle_strongly_real: bool | None
    verdict: classify.Verdict
    classifier_real: bool

    @property
    def agree(self) -> bool:
        """False only when a decided verdict contradicts the oracle."""
        if self.oracle_strongly_real is None or not self.verdict.decided:
            return True
        return (self.verdict.status == classify.STRONGLY_REAL) == self.oracle_strongly_real

    @property
    def real_agree(self) -> bool:
        if self.oracle_real is None:
            return True
        return self.oracle_real == self.classifier_real

    @property
    def undecided(self) -> bool:
        return self.oracle_strongly_real is None or self.oracle_real is None

    def to_json(self):
        return {
            "datum": self.datum.to_json(),
            "is_real": self.oracle_real,
            "is_strongly_real": self.oracle_strongly_real,
            "verdict": self.verdict.to_json(),
            "agree": self.agree and self.real_agree,
        }


@dataclass(frozen=True)
class OracleReport:
    n: int
    q: PrimePower
    strategy: str
    group_order: int | None
    records: tuple[ClassRecord, ...]
    elapsed_ms: int
    budgets: Budgets

    @property
    def disagreements(self):
        return [r for r in self.records if not (r.agree and r.real_agree)]

    @property
    def undecided(self):
        return [r for r in self.records if r.undecided]

    def to_json(self, include_timing: bool = True):
        out = {
            "n": self.n,
            "q": self.q.to_json(),
            "strategy": self.strategy,
            "group_order": self.group_order,
            "class_count": len(self.records),
            "disagreements": len(self.disagreements),
            "undecided": len(self.undecided),
            "records": [r.to_json() for r in self.records],
            "budget": {
                "entry_scan": self.budgets.entry_scan,
                "group_order": self.budgets.group_order,
                "reversing_scan": self.budgets.reversing_scan,
            },
        }
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _conjugation_orbits(F: GFTable, group: GroupEnumeration):
    """Partition of the group into conjugacy orbits, by generator BFS."""
    n = group.form.n
    gens = group.generators if n > 1 else ()
    pairs = [(h, mat_inv(F, h)) for h in gens]
    orbit_id: dict = {}
    reps = []
    for g in group.elements:
        if g in orbit_id:
            continue
        oid = len(reps)
        reps.append(g)
        orbit_id[g] = oid
        frontier = [g]
        while frontier:
            nxt = []
            for x in frontier:
                for h, hinv in pairs:
                    y = mat_mul(F, mat_mul(F, h, x), hinv)
                    if y not in orbit_id:
                        orbit_id[y] = oid
                        nxt.append(y)
            frontier = nxt
    return reps, orbit_id


def reconcile(n: int, q, budgets: Budgets | None = None) -> OracleReport:
    """One record per class: oracle reality and strong reality against the
    classifier.  Budget exhaustion is recorded per class, never skipped."""
    if budgets is None:
        budgets = Budgets.from_env()
    pp = q if isinstance(q, PrimePower) else prime_power(q)
    F = table_for(pp)
    started = time.perf_counter()
    form = identity_form(n, pp)
    try:
        group = enumerate_group(n, pp, form, "auto", budgets)
    except BudgetExceededError:
        group = None

    records = []
    if group is not None:
        reps, orbit_id = _conjugation_orbits(F, group)
        assert len(orbit_id) == group.order
        involutions = group.involutions()
        for rep in reps:
            datum = extract_class_datum(rep, pp)
            ginv = mat_inv(F, rep)
            oracle_real = orbit_id[ginv] == orbit_id[rep]
            oracle_sr = any(
                mat_mul(F, mat_mul(F, s, rep), s) == ginv for s in involutions
            )
            records.append(
                ClassRecord(
                    datum,
                    oracle_real,
                    oracle_sr,
                    classify.strongly_real(datum),
                    datum_is_real(datum),
                )
            )
        strategy = group.strategy
        group_order = group.order
    else:
        strategy = "representatives"
        group_order = None
        for datum in enumerate_class_data(n, pp, "all"):
            try:
                g = realize_class(datum, form, budgets)
            except RealizationError:
                # budget too small to even realize: fully undecided record
                records.append(
                    ClassRecord(
                        datum,
                        None,
                        None,
                        classify.strongly_real(datum),
                        datum_is_real(datum),
                    )
                )
                continue
            try:
                oracle_sr = is_strongly_real_oracle(g, form, None, budgets)
            except BudgetExceededError:
                oracle_sr = None
            try:
                oracle_real = is_real_oracle(g, form, None, budgets)
            except BudgetExceededError:
                oracle_real = None
            records.append(
                ClassRecord(
                    datum,
                    oracle_real,
                    oracle_sr,
                    classify.strongly_real(datum),
                    datum_is_real(datum),
                )
            )
    records.sort(key=lambda r: [(f.sort_key(), mu.parts) for f, mu in r.datum.blocks])
    elapsed = int((time.perf_counter() - started) * 1000)
    return OracleReport(
        n, pp, strategy, group_order, tuple(records), elapsed, budgets
    )
