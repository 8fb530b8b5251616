"""Linear designs with unitary weight matrices, and the constructions that
produce multigroup ML-decodable ones.

A design is S(x) = sum_k x_k A_k with K = g*lambda real variables and
N_t x N_t unitary weights A_k.  Weights are kept in a flat tuple laid out
as a lambda x g array in column-major order: flat index j*lambda + i holds
the entry in row i (within the first column's coset) and column j, so the
first column occupies indices 0..lambda-1 and column j starts at j*lambda.
The defining structure: A_0 = I, the rest of the first row is an
anticommuting family squaring to -I, the first column squares to +I and
commutes with everything in the first row and column, and every other
weight is (first column entry) @ (first row entry).

Three constructions are provided: blockdiag (delta generators as diagonal
sign matrices, the minimal-dimension route), tensor (same gamma factors
with a choice of diagonal or swap-permutation delta factors), and abba
(block matrices whose L x L pattern is the XOR table of (Z/2)^a, each block
carrying one slot of complex variables).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from .algebra import GroupSpec, SignedMonomial, enumerate_group
from .gamma import gamma_family, verify_hr_family
from .gaussian import GaussianInt, GaussianMatrix, kron

_I = GaussianInt(0, 1)

DeltaStyle = Literal["diagonal", "regular"]


def _is_power_of_two(v: int) -> bool:
    return v >= 1 and (v & (v - 1)) == 0


@dataclass(frozen=True)
class LinearDesign:
    """A linear dispersion code S(x) = sum_k x_k weights[k].

    `partition` groups the flat variable indices (0-based) into the decoding
    groups; the default is the column partition {j*lam .. j*lam+lam-1}.
    `meta` records provenance (construction name and parameters) and is
    ignored by equality.
    """

    nt: int
    lam: int
    g: int
    weights: tuple[GaussianMatrix, ...]
    partition: tuple[tuple[int, ...], ...]
    meta: Mapping[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.nt < 1:
            raise ValueError("nt must be positive")
        if not _is_power_of_two(self.lam):
            raise ValueError("lambda must be a power of two")
        if self.g < 1:
            raise ValueError("g must be positive")
        if len(self.weights) != self.g * self.lam:
            raise ValueError(
                f"expected {self.g * self.lam} weight matrices, got {len(self.weights)}"
            )
        for idx, w in enumerate(self.weights):
            if w.shape != (self.nt, self.nt):
                raise ValueError(f"weights[{idx}] is not {self.nt}x{self.nt}")
        _validate_partition(self.partition, self.k)

    @property
    def k(self) -> int:
        """Number of real variables."""
        return self.g * self.lam

    @property
    def rate(self) -> Fraction:
        """Complex symbols per channel use, K / (2 N_t)."""
        return Fraction(self.k, 2 * self.nt)

    def flat_index(self, i: int, j: int) -> int:
        """Flat position of array entry (row i, column j), both 0-based."""
        if not (0 <= i < self.lam and 0 <= j < self.g):
            raise IndexError("array position out of range")
        return j * self.lam + i

    def first_row(self) -> tuple[GaussianMatrix, ...]:
        return tuple(self.weights[j * self.lam] for j in range(self.g))

    def first_column(self) -> tuple[GaussianMatrix, ...]:
        return tuple(self.weights[i] for i in range(self.lam))


def column_partition(g: int, lam: int) -> tuple[tuple[int, ...], ...]:
    """One decoding group per column: {0..lam-1}, {lam..2lam-1}, ..."""
    return tuple(
        tuple(range(j * lam, (j + 1) * lam)) for j in range(g)
    )


def _validate_partition(partition: Sequence[Sequence[int]], k: int) -> None:
    seen: set[int] = set()
    for group in partition:
        if not group:
            raise ValueError("partition groups must be non-empty")
        for idx in group:
            if not (0 <= idx < k):
                raise ValueError(f"partition index {idx} outside 0..{k - 1}")
            if idx in seen:
                raise ValueError(f"partition index {idx} appears twice")
            seen.add(idx)
    if len(seen) != k:
        missing = sorted(set(range(k)) - seen)
        raise ValueError(f"partition does not cover indices {missing}")


def normalize_partition(partition: Sequence[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    """Validate a 0-based partition of range(k) and freeze it."""
    frozen = tuple(tuple(int(i) for i in group) for group in partition)
    _validate_partition(frozen, k)
    return frozen


@dataclass(frozen=True)
class SlotDesign:
    """A size x size complex-orthogonal slot: weights[0] = I and the rest an
    anticommuting family squaring to -I, one weight per real variable."""

    name: str
    size: int
    weights: tuple[GaussianMatrix, ...]

    @classmethod
    def scalar(cls) -> "SlotDesign":
        """One complex variable per slot: weights {1, i}."""
        return cls(
            "scalar",
            1,
            (
                GaussianMatrix.identity(1),
                GaussianMatrix.from_rows([[_I]]),
            ),
        )

    @classmethod
    def alamouti(cls) -> "SlotDesign":
        """Two complex variables per slot, [[x1, -x2*], [x2, x1*]] layout."""
        return cls(
            "alamouti",
            2,
            (
                GaussianMatrix.identity(2),
                GaussianMatrix.diag([_I, -_I]),
                GaussianMatrix.from_rows([[0, -1], [1, 0]]),
                GaussianMatrix.from_rows([[0, _I], [_I, 0]]),
            ),
        )

    @classmethod
    def custom(cls, weights: Sequence[GaussianMatrix], name: str = "custom") -> "SlotDesign":
        """Any orthogonal slot: leading identity plus a verified family."""
        weights = tuple(weights)
        if not weights:
            raise ValueError("slot needs at least one weight")
        size = weights[0].rows
        if any(w.shape != (size, size) for w in weights):
            raise ValueError("slot weights must be square and equally sized")
        if not weights[0].is_identity():
            raise ValueError("slot weights must start with the identity")
        report = verify_hr_family(weights[1:])
        if not report.passed:
            witnesses = [c.witness for c in report.failures()]
            raise ValueError(f"slot weights fail the orthogonality relations: {witnesses}")
        return cls(name, size, weights)


def assemble_array(
    first_row: Sequence[GaussianMatrix],
    first_col: Sequence[GaussianMatrix],
    meta: Mapping[str, object] | None = None,
) -> LinearDesign:
    """Fill the weight array from its first row and first column.

    Entry (i, j) is first_col[i] @ first_row[j]; both sequences must start
    with the identity and share one dimension.  The returned design carries
    the default column partition.
    """
    if not first_row or not first_col:
        raise ValueError("first row and first column must be non-empty")
    nt = first_row[0].rows
    for m in list(first_row) + list(first_col):
        if m.shape != (nt, nt):
            raise ValueError("row and column matrices must all be nt x nt")
    if not first_row[0].is_identity() or not first_col[0].is_identity():
        raise ValueError("first row and first column must start with the identity")
    g = len(first_row)
    lam = len(first_col)
    if not _is_power_of_two(lam):
        raise ValueError("lambda (first column length) must be a power of two")
    weights = tuple(
        first_col[i] @ first_row[j] for j in range(g) for i in range(lam)
    )
    return LinearDesign(
        nt=nt,
        lam=lam,
        g=g,
        weights=weights,
        partition=column_partition(g, lam),
        meta=dict(meta or {}),
    )


# --- delta-generator matrix factors ---------------------------------------

def _delta_factor(k: int, a: int, style: DeltaStyle) -> GaussianMatrix:
    """lambda x lambda image of delta_k: a diagonal sign flip or a swap."""
    if not (1 <= k <= a):
        raise ValueError("delta index out of range")
    core = (
        GaussianMatrix.diag([1, -1])
        if style == "diagonal"
        else GaussianMatrix.from_rows([[0, 1], [1, 0]])
    )
    out = kron(GaussianMatrix.identity(2 ** (k - 1)), core)
    return kron(out, GaussianMatrix.identity(2 ** (a - k)))


def delta_products(a: int, style: DeltaStyle) -> list[GaussianMatrix]:
    """Images of all delta monomials, indexed by mask 0..2^a-1."""
    out = [GaussianMatrix.identity(2**a)]
    factors = [_delta_factor(k, a, style) for k in range(1, a + 1)]
    for mask in range(1, 2**a):
        low = (mask & -mask).bit_length() - 1
        out.append(factors[low] @ out[mask ^ (1 << low)])
    return out


def gamma_products(n: int) -> tuple[int, list[GaussianMatrix]]:
    """(dimension, images of all gamma monomials indexed by mask).

    Image of a mask is the ascending product of the minimal family's
    members, so it matches the normal order of SignedMonomial."""
    fam = gamma_family(n)
    out = [GaussianMatrix.identity(fam.dim)]
    for mask in range(1, 2**n):
        low = (mask & -mask).bit_length() - 1
        out.append(fam.matrices[low] @ out[mask ^ (1 << low)])
    return fam.dim, out


# --- constructions --------------------------------------------------------

def blockdiag_construction(g: int, lam: int) -> LinearDesign:
    """Maximal-rate design on lambda * 2^floor((g-1)/2) antennas.

    First row: identity plus the minimal anticommuting family, each member
    tensored up to act identically on every delta block.  First column:
    diagonal sign matrices, the images of the delta monomials.
    """
    if g < 1:
        raise ValueError("g must be positive")
    if not _is_power_of_two(lam):
        raise ValueError("lambda must be a power of two")
    a = lam.bit_length() - 1
    fam = gamma_family(g - 1)
    m = fam.dim
    eye_lam = GaussianMatrix.identity(lam)
    eye_m = GaussianMatrix.identity(m)
    first_row = [GaussianMatrix.identity(lam * m)]
    first_row += [kron(eye_lam, gm) for gm in fam.matrices]
    first_col = [kron(d, eye_m) for d in delta_products(a, "diagonal")]
    return assemble_array(
        first_row,
        first_col,
        meta={"construction": "blockdiag", "g": g, "lambda": lam},
    )


def tensor_construction(g: int, lam: int, delta_style: DeltaStyle = "diagonal") -> LinearDesign:
    """Tensor-factor construction: gamma part as in blockdiag, delta part
    either diagonal sign matrices (identical weight set to blockdiag) or
    swap permutations of the blocks ("regular")."""
    if g < 1:
        raise ValueError("g must be positive")
    if not _is_power_of_two(lam):
        raise ValueError("lambda must be a power of two")
    if delta_style not in ("diagonal", "regular"):
        raise ValueError(f"unknown delta style {delta_style!r}")
    a = lam.bit_length() - 1
    fam = gamma_family(g - 1)
    m = fam.dim
    eye_lam = GaussianMatrix.identity(lam)
    eye_m = GaussianMatrix.identity(m)
    first_row = [GaussianMatrix.identity(lam * m)]
    first_row += [kron(eye_lam, gm) for gm in fam.matrices]
    first_col = [kron(d, eye_m) for d in delta_products(a, delta_style)]
    return assemble_array(
        first_row,
        first_col,
        meta={"construction": "tensor", "g": g, "lambda": lam, "delta_style": delta_style},
    )


def abba_block_pattern(a: int) -> tuple[tuple[int, ...], ...]:
    """L x L index pattern with L = 2^a: entry (s, t) = s XOR t, the variable
    set carried by that block.  Symmetric with identity indices on the
    diagonal; every index appears once per row and column."""
    if a < 1:
        raise ValueError("a must be positive")
    size = 2**a
    return tuple(tuple(s ^ t for t in range(size)) for s in range(size))


def abba_construction(slot: SlotDesign, a: int) -> LinearDesign:
    """Block design: pattern blocks are XOR permutations, each carrying one
    slot of variables.

    First column: XOR block-permutations tensored with the slot identity.
    First row: slot weights acting identically in every block.  N_t =
    2^a * slot.size, g = number of slot weights, lambda = 2^a.
    """
    if a < 1:
        raise ValueError("a must be positive")
    size = 2**a
    eye_blocks = GaussianMatrix.identity(size)
    eye_slot = GaussianMatrix.identity(slot.size)
    first_row = [kron(eye_blocks, w) for w in slot.weights]
    first_col = [kron(p, eye_slot) for p in delta_products(a, "regular")]
    return assemble_array(
        first_row,
        first_col,
        meta={"construction": "abba", "slot": slot.name, "a": a},
    )


# --- group representations ------------------------------------------------

def blockdiag_representation(spec: GroupSpec) -> dict[SignedMonomial, GaussianMatrix]:
    """The reducible degree lambda * 2^floor(n/2) representation underlying
    blockdiag_construction: gamma monomials act by the minimal family in
    every block, delta monomials by diagonal sign patterns."""
    m, gams = gamma_products(spec.n)
    dels = delta_products(spec.a, "diagonal")
    rep: dict[SignedMonomial, GaussianMatrix] = {}
    for s in enumerate_group(spec):
        mat = kron(dels[s.delta_mask], gams[s.gamma_mask])
        rep[s] = mat if s.sign > 0 else -mat
    return rep


def irreducible_representation(
    spec: GroupSpec, character_mask: int | None = None
) -> dict[SignedMonomial, GaussianMatrix]:
    """An irreducible representation: minimal gamma family tensored with a
    one-dimensional character of the delta subgroup (delta_k acts by -1
    exactly when bit k-1 of character_mask is set; default all bits)."""
    if character_mask is None:
        character_mask = 2**spec.a - 1
    if not (0 <= character_mask < 2**spec.a):
        raise ValueError("character mask out of range")
    m, gams = gamma_products(spec.n)
    rep: dict[SignedMonomial, GaussianMatrix] = {}
    for s in enumerate_group(spec):
        sign = s.sign * (-1 if (character_mask & s.delta_mask).bit_count() & 1 else 1)
        mat = gams[s.gamma_mask]
        rep[s] = mat if sign > 0 else -mat
    return rep


def with_partition(d: LinearDesign, partition: Sequence[Sequence[int]]) -> LinearDesign:
    """Same design with a different decoding partition (0-based, validated)."""
    return replace(d, partition=normalize_partition(partition, d.k))
