"""Sign-tracked monomial arithmetic for an extended Clifford algebra.

The algebra has n generators gamma_1..gamma_n that pairwise anticommute and
square to -1, and a generators delta_1..delta_a that square to +1 and commute
with everything.  A basis monomial is an ordered product of distinct
generators; with signs attached, the monomials form a finite group of order
2^(n+a+1).  Monomials are encoded as bitmasks (bit k-1 set means generator k
present), so products and inverses are a handful of bit operations plus a
transposition count for the sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .report import CheckCollector, VerificationReport


@dataclass(frozen=True, slots=True)
class GroupSpec:
    """Generator counts: n anticommuting (square -1), a commuting (square +1)."""

    n: int
    a: int

    def __post_init__(self):
        if self.n < 0 or self.a < 0:
            raise ValueError("generator counts must be non-negative")

    @property
    def lam(self) -> int:
        """Number of delta monomials, 2**a (the lambda of a code built on this)."""
        return 2**self.a

    @property
    def g(self) -> int:
        """Group count of a code built on this algebra: one per gamma, plus one."""
        return self.n + 1

    @property
    def order(self) -> int:
        """Size of the signed monomial group, 2**(n+a+1)."""
        return 2 ** (self.n + self.a + 1)


@dataclass(frozen=True, slots=True)
class SignedMonomial:
    """sign * (ascending product of gammas) * (ascending product of deltas)."""

    sign: int
    gamma_mask: int
    delta_mask: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.gamma_mask < 0 or self.delta_mask < 0:
            raise ValueError("masks must be non-negative")

    @classmethod
    def one(cls) -> "SignedMonomial":
        return cls(1, 0, 0)

    @classmethod
    def minus_one(cls) -> "SignedMonomial":
        return cls(-1, 0, 0)

    @classmethod
    def gamma(cls, k: int) -> "SignedMonomial":
        """The single generator gamma_k, k >= 1."""
        if k < 1:
            raise ValueError("generator index is 1-based")
        return cls(1, 1 << (k - 1), 0)

    @classmethod
    def delta(cls, k: int) -> "SignedMonomial":
        """The single generator delta_k, k >= 1."""
        if k < 1:
            raise ValueError("generator index is 1-based")
        return cls(1, 0, 1 << (k - 1))

    @property
    def gamma_degree(self) -> int:
        return self.gamma_mask.bit_count()

    def __neg__(self) -> "SignedMonomial":
        return SignedMonomial(-self.sign, self.gamma_mask, self.delta_mask)

    def __str__(self) -> str:
        parts = []
        for k in range(self.gamma_mask.bit_length()):
            if self.gamma_mask >> k & 1:
                parts.append(f"g{k + 1}")
        for k in range(self.delta_mask.bit_length()):
            if self.delta_mask >> k & 1:
                parts.append(f"d{k + 1}")
        body = "*".join(parts) if parts else "1"
        return body if self.sign > 0 else f"-{body}"


def _check_member(x: SignedMonomial, spec: GroupSpec) -> None:
    if x.gamma_mask >> spec.n or x.delta_mask >> spec.a:
        raise ValueError(f"monomial {x} uses generators outside n={spec.n}, a={spec.a}")


def mono_mul(x: SignedMonomial, y: SignedMonomial, spec: GroupSpec) -> SignedMonomial:
    """Product of two signed monomials, in normal (ascending) order.

    Deltas commute with everything and square to +1, so they contribute no
    sign.  For the gammas, each generator of y is walked left past the
    members of x above it (one transposition each, factor -1), and each
    generator shared by x and y collapses via gamma^2 = -1.
    """
    _check_member(x, spec)
    _check_member(y, spec)
    t = 0
    yg = y.gamma_mask
    while yg:
        low = yg & -yg
        t += (x.gamma_mask >> low.bit_length()).bit_count()
        yg ^= low
    c = (x.gamma_mask & y.gamma_mask).bit_count()
    sign = x.sign * y.sign * (-1 if (t + c) & 1 else 1)
    return SignedMonomial(sign, x.gamma_mask ^ y.gamma_mask, x.delta_mask ^ y.delta_mask)


def inverse(x: SignedMonomial, spec: GroupSpec) -> SignedMonomial:
    """Group inverse: the monomial itself, negated when ceil(m/2) is odd
    for m gamma factors (reversing m generators costs m(m-1)/2 swaps and
    each repeated gamma contributes a -1)."""
    _check_member(x, spec)
    m = x.gamma_mask.bit_count()
    if ((m + 1) // 2) & 1:
        return -x
    return x


def enumerate_group(spec: GroupSpec) -> list[SignedMonomial]:
    """All 2^(n+a+1) signed monomials in canonical order: positive elements
    first, then negatives, each block ordered by (delta_mask, gamma_mask)."""
    return [
        SignedMonomial(sign, gm, dm)
        for sign in (1, -1)
        for dm in range(2**spec.a)
        for gm in range(2**spec.n)
    ]


MonoMul = Callable[[SignedMonomial, SignedMonomial, GroupSpec], SignedMonomial]


def verify_group_structure(
    spec: GroupSpec,
    mult: MonoMul = mono_mul,
    verbose: bool = False,
) -> VerificationReport:
    """Exhaustively check that the signed monomials form the expected group.

    Checks: (closure) every product of members is a member and the empty
    monomial is a two-sided unit; (inverses) inverse() is a two-sided
    inverse under mult; (factorization) each element splits uniquely as a
    signed gamma monomial times a positive delta monomial; (commutation)
    those two factors commute.  `mult` is injectable so a deliberately
    broken product rule can be shown to produce witnesses.
    """
    elements = enumerate_group(spec)
    members = set(elements)
    one = SignedMonomial.one()

    closure = CheckCollector("closure", verbose)
    for x in elements:
        if closure.done:
            break
        if mult(one, x, spec) != x or mult(x, one, spec) != x:
            closure.fail(f"unit law fails at {x}")
            continue
        for y in elements:
            p = mult(x, y, spec)
            if p not in members:
                closure.fail(f"({x})*({y}) = {p} left the group")
                if closure.done:
                    break

    inverses = CheckCollector("inverses", verbose)
    for x in elements:
        if inverses.done:
            break
        inv = inverse(x, spec)
        if mult(x, inv, spec) != one or mult(inv, x, spec) != one:
            inverses.fail(f"inverse({x}) = {inv} is not a two-sided inverse")

    # Unique factorization: the |G_mu| * |G_delta| products must be pairwise
    # distinct and land on the element carrying exactly those masks.
    factorization = CheckCollector("factorization", verbose)
    gamma_part = [
        SignedMonomial(sign, gm, 0) for sign in (1, -1) for gm in range(2**spec.n)
    ]
    delta_part = [SignedMonomial(1, 0, dm) for dm in range(2**spec.a)]
    seen: dict[SignedMonomial, tuple[SignedMonomial, SignedMonomial]] = {}
    for s1 in gamma_part:
        if factorization.done:
            break
        for s2 in delta_part:
            p = mult(s1, s2, spec)
            expected = SignedMonomial(s1.sign, s1.gamma_mask, s2.delta_mask)
            if p != expected:
                factorization.fail(f"({s1})*({s2}) = {p}, expected {expected}")
            elif p in seen:
                prev = seen[p]
                factorization.fail(
                    f"{p} factors as ({prev[0]})*({prev[1]}) and ({s1})*({s2})"
                )
            else:
                seen[p] = (s1, s2)
            if factorization.done:
                break

    commutation = CheckCollector("commutation", verbose)
    for s1 in gamma_part:
        if commutation.done:
            break
        for s2 in delta_part:
            if mult(s1, s2, spec) != mult(s2, s1, spec):
                commutation.fail(f"({s1}) and ({s2}) do not commute")
                if commutation.done:
                    break

    return VerificationReport(
        tuple(
            c.as_check()
            for c in (closure, inverses, factorization, commutation)
        )
    )


class AlgebraElement:
    """Rational linear combination of positive basis monomials.

    Coefficients are exact fractions keyed by (gamma_mask, delta_mask);
    a monomial's sign folds into its coefficient.  Supports the ring
    operations needed to cross-check identities symbolically.
    """

    __slots__ = ("spec", "_coeffs")

    def __init__(self, spec: GroupSpec, coeffs: Mapping[tuple[int, int], Fraction | int] | None = None):
        self.spec = spec
        clean: dict[tuple[int, int], Fraction] = {}
        for (gm, dm), v in (coeffs or {}).items():
            if gm >> spec.n or dm >> spec.a or gm < 0 or dm < 0:
                raise ValueError("coefficient key outside the algebra basis")
            f = Fraction(v)
            if f:
                clean[(gm, dm)] = f
        self._coeffs = clean

    @classmethod
    def zero(cls, spec: GroupSpec) -> "AlgebraElement":
        return cls(spec)

    @classmethod
    def one(cls, spec: GroupSpec) -> "AlgebraElement":
        return cls(spec, {(0, 0): Fraction(1)})

    @classmethod
    def from_monomial(cls, spec: GroupSpec, m: SignedMonomial, coeff: Fraction | int = 1) -> "AlgebraElement":
        _check_member(m, spec)
        return cls(spec, {(m.gamma_mask, m.delta_mask): Fraction(coeff) * m.sign})

    @property
    def coefficients(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.spec == other.spec and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.spec, frozenset(self._coeffs.items())))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.spec != other.spec:
            raise ValueError("algebra mismatch")
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return AlgebraElement(self.spec, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.spec, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement | Fraction | int") -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            return AlgebraElement(self.spec, {k: v * other for k, v in self._coeffs.items()})
        if self.spec != other.spec:
            raise ValueError("algebra mismatch")
        out: dict[tuple[int, int], Fraction] = {}
        for (gx, dx), vx in self._coeffs.items():
            mx = SignedMonomial(1, gx, dx)
            for (gy, dy), vy in other._coeffs.items():
                p = mono_mul(mx, SignedMonomial(1, gy, dy), self.spec)
                key = (p.gamma_mask, p.delta_mask)
                out[key] = out.get(key, Fraction(0)) + vx * vy * p.sign
        return AlgebraElement(self.spec, out)

    def __rmul__(self, other: "Fraction | int") -> "AlgebraElement":
        return self * other

    def __repr__(self) -> str:
        if not self._coeffs:
            return "AlgebraElement(0)"
        terms = []
        for (gm, dm), v in sorted(self._coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            terms.append(f"{v}*{SignedMonomial(1, gm, dm)}")
        return "AlgebraElement(" + " + ".join(terms) + ")"
