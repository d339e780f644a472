"""Characteristic-equation coefficients and the dimension-D reduction
identity for completely symmetric products of spin matrices.

The identity, in monic normalization, reads

    {S_{i_1} ... S_{i_D}}
        + sum_p b_p ( sum over 2p-subsets A of positions
                      delta(indices in A) * {S over the other positions} ) = 0

with b_p = 2^p p! a_p, where the a_p are the coefficients of the
characteristic equation S^D + sum_p a_p S^{D-2p} = 0.
"""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Literal, Sequence

from .scalar import Scalar, frac_str
from .spinrep import Matrix, SpinRep
from .symalg import IndexMultiset, SymSession, all_multisets, gen_delta

Witness = tuple[int, int, Scalar]
Failure = tuple[tuple[int, ...], Witness]


class DiscoveryError(ArithmeticError):
    """The coefficient solve was inconsistent or underdetermined."""


@dataclass(frozen=True)
class CharCoeffs:
    """Coefficients a_1..a_floor(D/2) of the monic characteristic equation."""

    dim: int
    a: tuple[Fraction, ...]


def _squared_eigenvalues(dim: int) -> list[Fraction]:
    """Distinct nonzero squared eigenvalues of a dimension-D spin matrix."""
    if dim % 2:  # integer spin, largest eigenvalue n
        n = (dim - 1) // 2
        return [Fraction(q * q) for q in range(1, n + 1)]
    n = dim // 2 - 1  # half-integral, largest eigenvalue n + 1/2
    return [Fraction((2 * q + 1) ** 2, 4) for q in range(n + 1)]


def char_coeffs(dim: int) -> CharCoeffs:
    """Expand the product form of the characteristic equation.

    Integer spin:      S (S^2 - 1)(S^2 - 4) ... (S^2 - n^2) = 0
    half-integral:     (S^2 - 1/4)(S^2 - 9/4) ... (S^2 - (2n+1)^2/4) = 0
    """
    if dim < 2:
        raise ValueError("no nontrivial identity below dimension 2")
    coeffs = [Fraction(1)]  # polynomial in y = S^2, highest power first
    for e in _squared_eigenvalues(dim):
        nxt = coeffs + [Fraction(0)]
        for j in range(1, len(nxt)):
            nxt[j] -= e * coeffs[j - 1]
        coeffs = nxt
    return CharCoeffs(dim=dim, a=tuple(coeffs[1:]))


def power_sum(r: int, n: int) -> Fraction:
    """Sum of q^r for q = 0..n, via the binomial-recursion ladder."""
    if r < 0 or n < 0:
        raise ValueError("power_sum needs nonnegative arguments")
    return _power_sum(r, n)


@lru_cache(maxsize=None)
def _power_sum(r: int, n: int) -> Fraction:
    if r == 0:
        return Fraction(n + 1)
    acc = Fraction((n + 1) ** (r + 1))
    for p in range(r):
        acc -= comb(r + 1, p) * _power_sum(p, n)
    return acc / (r + 1)


def a1_closed(dim: int) -> Fraction:
    """a_1 from the power sums of the eigenvalues."""
    if dim < 2:
        raise ValueError("a_1 requires dimension >= 2")
    if dim % 2:
        n = (dim - 1) // 2
        return -power_sum(2, n)
    n = dim // 2 - 1
    return -(power_sum(2, n) + power_sum(1, n) + Fraction(1, 4) * power_sum(0, n))


def an_closed(dim: int) -> Fraction:
    """Coefficient of the lowest (linear) term for odd dimension."""
    if dim < 3 or dim % 2 == 0:
        raise ValueError("a_n requires odd dimension >= 3")
    n = (dim - 1) // 2
    return Fraction((-1) ** n * factorial(n) ** 2)


def an1_closed(dim: int) -> Fraction:
    """Constant coefficient for even dimension.

    The magnitude is ((2n+1)!! / 2^(n+1))^2; the sign alternates with the
    number of quadratic factors, (-1)^(n+1).
    """
    if dim < 2 or dim % 2:
        raise ValueError("a_{n+1} requires even dimension >= 2")
    n = dim // 2 - 1
    dfac = 1
    for k in range(1, 2 * n + 2, 2):
        dfac *= k
    return (-1) ** (n + 1) * Fraction(dfac, 2 ** (n + 1)) ** 2


def a2_closed(dim: int) -> Fraction:
    """a_2 for integer spin: (Sigma_2(n))^2 - sum_q q^2 Sigma_2(q)."""
    if dim % 2 == 0:
        raise ValueError("this a_2 closed form applies to integer spin only")
    n = (dim - 1) // 2
    if n < 2:
        raise ValueError("a_2 requires n >= 2 (dimension >= 5)")
    s2 = power_sum(2, n)
    return s2 * s2 - sum(
        (Fraction(q * q) * power_sum(2, q) for q in range(n + 1)), Fraction(0)
    )


def b_coeffs(dim: int) -> list[Fraction]:
    """Identity coefficients b_p = 2^p p! a_p."""
    return [
        (2**p) * factorial(p) * a
        for p, a in enumerate(char_coeffs(dim).a, start=1)
    ]


def max_multipole_order(dim: int) -> int:
    """Highest multipole a spin-(D-1)/2 particle supports: rank D-1.

    Rank-D symmetric couplings collapse to lower ones via the reduction
    identity, and no identity of lower degree exists.
    """
    if dim < 1:
        raise ValueError("dimension must be a positive integer")
    return dim - 1


def _level_subsets(dim: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(
        tuple(itertools.combinations(range(dim), 2 * p))
        for p in range(1, dim // 2 + 1)
    )


@dataclass(frozen=True)
class Identity:
    """The reduction identity for one dimension, monic normalization.

    ``subsets[p-1]`` lists every choice of 2p (0-based) index positions
    routed into the generalized delta at level p; the remaining positions
    stay in the symmetric product.
    """

    dim: int
    b: tuple[Fraction, ...]
    subsets: tuple[tuple[tuple[int, ...], ...], ...]

    def residual(self, session: SymSession, idx: Sequence[int]) -> Matrix:
        """Exact value of the identity's left side on one index tuple;
        the zero matrix iff the identity holds there."""
        idx = tuple(idx)
        if len(idx) != self.dim:
            raise ValueError(f"expected {self.dim} indices, got {len(idx)}")
        total = session.sym(IndexMultiset.from_tuple(idx))
        positions = set(range(self.dim))
        for b_p, level in zip(self.b, self.subsets):
            weights: dict[IndexMultiset, int] = {}
            for subset in level:
                d = gen_delta([idx[q] for q in subset])
                if d:
                    rest = IndexMultiset.from_tuple(
                        idx[q] for q in positions.difference(subset)
                    )
                    weights[rest] = weights.get(rest, 0) + d
            for rest, w in weights.items():
                total = total + session.sym(rest).scale(Scalar.of(b_p * w))
        return total


def build_identity(dim: int) -> Identity:
    """Synthesize the dimension-D identity from the characteristic equation."""
    return Identity(dim=dim, b=tuple(b_coeffs(dim)), subsets=_level_subsets(dim))


def discover_identity(rep: SpinRep) -> Identity:
    """Recover the identity coefficients from the representation alone.

    Sets up  {S_{i_1}..S_{i_D}} + sum_p c_p (delta patterns) = 0  over the
    spanning family of all sorted index multisets and solves for the c_p by
    exact elimination over the rationals (each matrix entry splits into its
    rational coordinates on the {sqrt(m), i sqrt(m)} basis).  This is the
    independent check that the b_p really are 2^p p! a_p.
    """
    dim = rep.dim
    if dim < 2:
        raise ValueError("no identity to discover below dimension 2")
    k = dim // 2
    subsets = _level_subsets(dim)
    session = SymSession(rep)
    positions = set(range(dim))

    # pivots[j] = reduced row with leading 1 in column j (plus rhs).
    pivots: dict[int, list[Fraction]] = {}
    for ms in all_multisets(dim):
        idx = ms.letters()
        target = session.sym(ms)
        pattern_mats: list[Matrix] = []
        for level in subsets:
            weights: dict[IndexMultiset, int] = {}
            for subset in level:
                d = gen_delta([idx[q] for q in subset])
                if d:
                    rest = IndexMultiset.from_tuple(
                        idx[q] for q in positions.difference(subset)
                    )
                    weights[rest] = weights.get(rest, 0) + d
            mat = Matrix.zero(dim)
            for rest, w in weights.items():
                mat = mat + session.sym(rest).scale(Scalar.of(w))
            pattern_mats.append(mat)
        for r in range(dim):
            for c in range(dim):
                keys = set(target.rows[r][c].components())
                cols = [m.rows[r][c].components() for m in pattern_mats]
                for col in cols:
                    keys.update(col)
                rhs_all = target.rows[r][c].components()
                for key in keys:
                    row = [col.get(key, Fraction(0)) for col in cols]
                    row.append(-rhs_all.get(key, Fraction(0)))
                    _eliminate(row, pivots, k)
    if len(pivots) < k:
        raise DiscoveryError("identity coefficients are not uniquely determined")
    solution = _back_substitute(pivots, k)
    return Identity(dim=dim, b=tuple(solution), subsets=subsets)


def _eliminate(row: list[Fraction], pivots: dict[int, list[Fraction]], k: int) -> None:
    for j in range(k):
        if row[j] and j in pivots:
            f = row[j]
            prow = pivots[j]
            for t in range(j, k + 1):
                row[t] -= f * prow[t]
    lead = next((j for j in range(k) if row[j]), None)
    if lead is None:
        if row[k]:
            raise DiscoveryError("no coefficients satisfy the identity pattern")
        return
    inv = Fraction(1) / row[lead]
    pivots[lead] = [x * inv for x in row]


def _back_substitute(pivots: dict[int, list[Fraction]], k: int) -> list[Fraction]:
    values = [Fraction(0)] * k
    for j in sorted(pivots, reverse=True):
        row = pivots[j]
        acc = row[k]
        for t in range(j + 1, k):
            acc -= row[t] * values[t]
        values[j] = acc
    return values


# ---------------------------------------------------------------------------
# Verification


@dataclass
class VerificationReport:
    """Outcome of checking one identity against one representation."""

    dim: int
    rep_dim: int
    mode: Literal["exhaustive", "sampled"]
    tuples_checked: int
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        # elapsed stays off the wire so seeded reports are byte-for-byte
        # reproducible; it remains available on the object itself.
        return {
            "dim": self.dim,
            "rep_dim": self.rep_dim,
            "mode": self.mode,
            "tuples_checked": self.tuples_checked,
            "failures": [
                {"tuple": list(t), "entry": [r, c], "value": str(v)}
                for t, (r, c, v) in self.failures
            ],
            "ok": self.ok,
        }


def _witness_by_multiset(
    rep: SpinRep, ident: Identity, keys: Sequence[IndexMultiset]
) -> dict[IndexMultiset, Witness | None]:
    session = SymSession(rep)
    out: dict[IndexMultiset, Witness | None] = {}
    for ms in keys:
        out[ms] = ident.residual(session, ms.letters()).first_nonzero_entry()
    return out


def verify_identity(
    rep: SpinRep,
    ident: Identity,
    mode: Literal["exhaustive", "sampled"] | None = None,
    count: int | None = None,
    seed: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Evaluate the identity's left side over index tuples and report every
    tuple where it fails to vanish.

    The left side depends only on the multiset of the tuple, so each
    distinct multiset is evaluated once (on its sorted representative) and
    the verdict is shared by all tuples mapping to it.  Cross-dimension
    checks (ident.dim != rep.dim) are allowed and useful.  A failing
    identity yields a report, never an exception.

    When mode is omitted: exhaustive through dimension 7, above that a
    1000-tuple sample (an explicit seed is then mandatory).
    """
    t0 = time.perf_counter()
    d = ident.dim
    if mode is None:
        mode = "exhaustive" if d <= 7 else "sampled"
        if mode == "sampled" and count is None:
            count = 1000
    if mode == "sampled":
        if count is None or seed is None:
            raise ValueError("sampled mode requires count and seed")
        rng = random.Random(seed)
        sampled = [
            tuple(rng.randint(1, 3) for _ in range(d)) for _ in range(count)
        ]
        tuples = sorted(set(sampled))
        checked = count
    elif mode == "exhaustive":
        tuples = None  # generated lazily below
        checked = 3**d
    else:
        raise ValueError(f"unknown mode {mode!r}")

    if tuples is None:
        keys = all_multisets(d)
    else:
        keys = sorted(
            {IndexMultiset.from_tuple(t) for t in tuples},
            key=lambda m: m.counts,
        )

    if jobs > 1 and len(keys) > 1:
        chunks = [keys[w::jobs] for w in range(jobs)]
        chunks = [c for c in chunks if c]
        verdicts: dict[IndexMultiset, Witness | None] = {}
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for part in pool.map(
                _witness_by_multiset,
                itertools.repeat(rep),
                itertools.repeat(ident),
                chunks,
            ):
                verdicts.update(part)
    else:
        verdicts = _witness_by_multiset(rep, ident, keys)

    failures: list[Failure] = []
    for tup in tuples if tuples is not None else itertools.product((1, 2, 3), repeat=d):
        witness = verdicts[IndexMultiset.from_tuple(tup)]
        if witness is not None:
            failures.append((tup, witness))

    return VerificationReport(
        dim=d,
        rep_dim=rep.dim,
        mode=mode,
        tuples_checked=checked,
        failures=failures,
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# Emission


def _integral_factor(ident: Identity) -> int:
    """Least common denominator of the b_p: the smallest positive rescaling
    that makes every displayed coefficient an integer."""
    lcm = 1
    for b in ident.b:
        lcm = lcm * b.denominator // gcd(lcm, b.denominator)
    return lcm


def identity_to_json(
    ident: Identity, normalization: Literal["monic", "integral"] = "monic"
) -> dict:
    """Identity as a JSON-ready dict; positions are 1-based.

    Level p = 0 carries the coefficient of the full symmetric product
    (1 when monic, the common denominator of the b_p when integral).
    """
    factor = 1 if normalization == "monic" else _integral_factor(ident)
    levels = [
        {"p": 0, "coefficient": str(Fraction(factor)), "subsets": [[]]}
    ]
    for p, (b, level) in enumerate(zip(ident.b, ident.subsets), start=1):
        levels.append(
            {
                "p": p,
                "coefficient": str(b * factor),
                "subsets": [[q + 1 for q in subset] for subset in level],
            }
        )
    return {"dim": ident.dim, "normalization": normalization, "levels": levels}


_INDEX_LETTERS = "ijklmnopq"


def _index_names(dim: int) -> list[str]:
    if dim <= len(_INDEX_LETTERS):
        return list(_INDEX_LETTERS[:dim])
    return [f"i_{{{q}}}" for q in range(1, dim + 1)]


def _latex_term(names: list[str], subset: tuple[int, ...], dim: int) -> str:
    inside = [names[q] for q in range(dim) if q not in subset]
    delta = "\\delta_{" + " ".join(names[q] for q in subset) + "}"
    if not inside:
        return delta + " \\mathbbm{1}"
    if len(inside) == 1:
        return f"S_{{{inside[0]}}} " + delta
    sym = "\\{ " + " ".join(f"S_{{{n}}}" for n in inside) + " \\}"
    return sym + " " + delta


def identity_to_latex(
    ident: Identity,
    normalization: Literal["monic", "integral"] = "monic",
    expand: bool = False,
) -> str:
    """LaTeX in the layout of the worked examples: braces for symmetric
    products, generalized deltas, and either every similar term spelled out
    (expand=True) or collapsed to "(k more similar terms)"."""
    dim = ident.dim
    names = _index_names(dim)
    factor = 1 if normalization == "monic" else _integral_factor(ident)

    lead = "" if factor == 1 else f"{factor} "
    pieces = [lead + "\\{ " + " ".join(f"S_{{{n}}}" for n in names) + " \\}"]
    for b, level in zip(ident.b, ident.subsets):
        coeff = b * factor
        sign = " - " if coeff < 0 else " + "
        mag = abs(coeff)
        coeff_str = "" if mag == 1 else frac_str(mag, latex=True) + " "
        # Trailing-position deltas first, matching the displayed general form
        # { S_{i_1} .. S_{i_{D-2p}} } delta_{i_{D-2p+1} .. i_D}.
        terms = [_latex_term(names, subset, dim) for subset in reversed(level)]
        if len(terms) == 1:
            body = terms[0]
        elif expand:
            body = "\\Big( " + " + ".join(terms) + " \\Big)"
        else:
            more = f"\\mbox{{({len(terms) - 1} more similar terms)}}"
            body = "\\Big( " + terms[0] + " + " + more + " \\Big)"
        pieces.append(sign + coeff_str + body)
    return "".join(pieces) + " = 0"
