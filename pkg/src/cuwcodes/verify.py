"""Exact verification of design structure, decodability and representations.

Everything here is a yes/no question about integer matrix identities, so
checks use exact equality and report witnesses by flat weight index
(`weights[k]`, 0-based) or by monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal, Mapping, Sequence

from .algebra import GroupSpec, SignedMonomial, enumerate_group, mono_mul
from .designs import LinearDesign, normalize_partition
from .gaussian import GaussianMatrix
from .report import CheckCollector, VerificationReport


def max_rate(g: int) -> Fraction:
    """Largest achievable rate (complex symbols per channel use) of a
    g-group decodable design with unitary weights: g / 2^(floor((g-1)/2)+1).
    Independent of lambda."""
    if g < 1:
        raise ValueError("g must be positive")
    return Fraction(g, 2 ** ((g - 1) // 2 + 1))


def min_nt(g: int, lam: int) -> int:
    """Smallest antenna count achieving max_rate(g) with lambda real
    variables per group: lambda * 2^floor((g-1)/2)."""
    if g < 1:
        raise ValueError("g must be positive")
    if lam < 1 or lam & (lam - 1):
        raise ValueError("lambda must be a power of two")
    return lam * 2 ** ((g - 1) // 2)


@dataclass(frozen=True)
class RateResult:
    """Rate bookkeeping for one design next to the theoretical ceiling."""

    k: int
    nt: int
    rate: Fraction
    max_rate: Fraction

    @classmethod
    def for_design(cls, d: LinearDesign) -> "RateResult":
        return cls(k=d.k, nt=d.nt, rate=d.rate, max_rate=max_rate(d.g))

    @property
    def achieves_max(self) -> bool:
        return self.rate == self.max_rate


def verify_cuw(d: LinearDesign, verbose: bool = False) -> VerificationReport:
    """Check the defining conditions of a multigroup-decodable unitary
    weight design.

    Checks: every weight is unitary; weights[0] is the identity; the rest
    of the first row pairwise anticommutes and squares to -I; the first
    column squares to +I and commutes with the whole first row and first
    column; every interior weight obeys the fill rule
    weights[j*lam + i] = weights[i] @ weights[j*lam].
    """
    lam, g = d.lam, d.g
    eye = GaussianMatrix.identity(d.nt)

    unitary = CheckCollector("unitary", verbose)
    for idx, w in enumerate(d.weights):
        if not w.is_unitary():
            unitary.fail(f"weights[{idx}] is not unitary")
            if unitary.done:
                break

    leading = CheckCollector("leading_identity", verbose)
    if d.weights[0] != eye:
        leading.fail("weights[0] is not the identity")

    row_idx = [j * lam for j in range(1, g)]
    first_row = CheckCollector("first_row_family", verbose)
    for idx in row_idx:
        if first_row.done:
            break
        w = d.weights[idx]
        if w @ w != -eye:
            first_row.fail(f"weights[{idx}] squared is not -I")
    for ia, ib in combinations(row_idx, 2):
        if first_row.done:
            break
        a, b = d.weights[ia], d.weights[ib]
        if a @ b != -(b @ a):
            first_row.fail(f"weights[{ia}] and weights[{ib}] do not anticommute")

    col_idx = list(range(1, lam))
    first_col = CheckCollector("first_column_relations", verbose)
    for idx in col_idx:
        if first_col.done:
            break
        c = d.weights[idx]
        if c @ c != eye:
            first_col.fail(f"weights[{idx}] squared is not +I")
            continue
        for other in row_idx + [j for j in col_idx if j != idx]:
            if c @ d.weights[other] != d.weights[other] @ c:
                first_col.fail(f"weights[{idx}] and weights[{other}] do not commute")
                if first_col.done:
                    break

    fill = CheckCollector("fill_rule", verbose)
    for j in range(g):
        if fill.done:
            break
        head = d.weights[j * lam]
        for i in range(lam):
            if d.weights[j * lam + i] != d.weights[i] @ head:
                fill.fail(
                    f"weights[{j * lam + i}] != weights[{i}] @ weights[{j * lam}]"
                )
                if fill.done:
                    break

    return VerificationReport(
        (
            unitary.as_check(),
            leading.as_check(),
            first_row.as_check(),
            first_col.as_check(),
            fill.as_check(),
        )
    )


def verify_partition_decodable(
    d: LinearDesign,
    partition: Sequence[Sequence[int]] | None = None,
    verbose: bool = False,
) -> VerificationReport:
    """Check that the maximum-likelihood metric separates over the partition:
    for every pair of variables in different groups,
    A_i^H A_j + A_j^H A_i = 0 exactly.

    Uses the design's own partition when none is given.  A malformed
    partition (overlap, gap, bad index) raises ValueError.
    """
    groups = (
        d.partition if partition is None else normalize_partition(partition, d.k)
    )
    quasi = CheckCollector("cross_group_quasi_orthogonal", verbose)
    zero = GaussianMatrix.zeros(d.nt, d.nt)
    for ga, gb in combinations(range(len(groups)), 2):
        if quasi.done:
            break
        for i in groups[ga]:
            if quasi.done:
                break
            ai = d.weights[i].conj_transpose()
            for j in groups[gb]:
                aj = d.weights[j]
                if ai @ aj + aj.conj_transpose() @ d.weights[i] != zero:
                    quasi.fail(
                        f"weights[{i}] (group {ga}) and weights[{j}] (group {gb}) "
                        "are not quasi-orthogonal"
                    )
                    if quasi.done:
                        break
    return VerificationReport((quasi.as_check(),))


RepScope = Literal["design", "group"]


def design_support(spec: GroupSpec) -> list[SignedMonomial]:
    """Positive monomials realized as weight matrices by the constructions:
    gamma degree at most one, any delta monomial."""
    singles = [0] + [1 << p for p in range(spec.n)]
    return [
        SignedMonomial(1, gm, dm) for dm in range(2**spec.a) for gm in singles
    ]


def verify_unique_decodability(
    spec: GroupSpec,
    rep: Mapping[SignedMonomial, GaussianMatrix],
    scope: RepScope = "design",
    verbose: bool = False,
) -> VerificationReport:
    """Check that a matrix representation of the signed monomial group
    yields uniquely decodable weights.

    Checks: (representation) rep is a homomorphism with rep(-1) = -rep(1),
    verified on all generator multiplications; (nontrivial) rep(x) is not
    +/-I for any x != +/-1 -- over the design support by default, or over
    the whole group with scope="group"; (delta_distinct) no two distinct
    delta monomials have images equal up to sign.

    The whole-group scope is strictly stronger than unique decodability
    needs: at minimal dimension with an odd gamma count, the full ascending
    gamma product is central with square +1 and is forced to +/-I, even
    though no weight matrix realizes it.  Raises ValueError when `rep` does
    not cover the whole group.
    """
    elements = enumerate_group(spec)
    missing = [s for s in elements if s not in rep]
    if missing:
        raise ValueError(f"representation map is missing {len(missing)} elements, e.g. {missing[0]}")

    one = SignedMonomial.one()
    dim = rep[one].rows
    eye = GaussianMatrix.identity(dim)

    hom = CheckCollector("representation", verbose)
    if rep[one] != eye:
        hom.fail("rep(1) is not the identity")
    if rep[SignedMonomial.minus_one()] != -eye:
        hom.fail("rep(-1) != -rep(1): representation is degenerate")
    generators = (
        [SignedMonomial.gamma(k) for k in range(1, spec.n + 1)]
        + [SignedMonomial.delta(k) for k in range(1, spec.a + 1)]
        + [SignedMonomial.minus_one()]
    )
    for gen in generators:
        if hom.done:
            break
        rg = rep[gen]
        for x in elements:
            if rep[mono_mul(gen, x, spec)] != rg @ rep[x]:
                hom.fail(f"rep(({gen})*({x})) != rep({gen}) @ rep({x})")
                if hom.done:
                    break

    if scope == "design":
        candidates = [s for s in design_support(spec) if s != one]
    elif scope == "group":
        candidates = [s for s in elements if s.gamma_mask or s.delta_mask]
    else:
        raise ValueError(f"unknown scope {scope!r}")
    nontrivial = CheckCollector("nontrivial", verbose)
    for s in candidates:
        if nontrivial.done:
            break
        m = rep[s]
        if m == eye or m == -eye:
            nontrivial.fail(f"rep({s}) is +/-I")

    delta_distinct = CheckCollector("delta_distinct", verbose)
    delta_monos = [SignedMonomial(1, 0, dm) for dm in range(2**spec.a)]
    for x, y in combinations(delta_monos, 2):
        if delta_distinct.done:
            break
        if rep[x] == rep[y] or rep[x] == -rep[y]:
            delta_distinct.fail(f"rep({x}) = +/-rep({y})")

    return VerificationReport(
        (hom.as_check(), nontrivial.as_check(), delta_distinct.as_check())
    )
