"""Anticommuting unitary matrix families.

gamma_family(n) returns n unitary matrices of dimension 2^floor(n/2) that
pairwise anticommute and square to -I, realizing the gamma generators at
the smallest possible dimension.  Construction is by doubling: from a
(2m+1)-member family in dimension d one gets a (2m+3)-member family in
dimension 2d via

    G_k  ->  [[G_k, 0], [0, -G_k]]          (existing members)
    new:     [[0, I], [-I, 0]]  and  [[0, iI], [iI, 0]]

starting from the single 1x1 member [[i]].  Every doubling step is
re-verified with exact arithmetic, so a returned family is correct by
construction, not by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .gaussian import GaussianInt, GaussianMatrix, kron
from .report import CheckCollector, VerificationReport

_I = GaussianInt(0, 1)

# 2x2 doubling blocks: diag(1,-1) splits existing members, the other two
# are the new anticommuting directions.
_SPLIT = GaussianMatrix.diag([1, -1])
_NEW_RE = GaussianMatrix.from_rows([[0, 1], [-1, 0]])
_NEW_IM = GaussianMatrix.from_rows([[0, _I], [_I, 0]])


@dataclass(frozen=True)
class GammaFamily:
    """n anticommuting unitaries of dimension 2^floor(n/2), squaring to -I."""

    n: int
    dim: int
    matrices: tuple[GaussianMatrix, ...]


def verify_hr_family(mats: Sequence[GaussianMatrix], verbose: bool = False) -> VerificationReport:
    """Check the Hurwitz-Radon relations for a family of matrices.

    Conditions, all exact: each member is unitary, each squares to -I, and
    every pair anticommutes.  Raises ValueError when the input is not a
    collection of square matrices of one common dimension (that is a
    malformed input, not a failed verification).
    """
    mats = list(mats)
    for m in mats:
        if m.rows != m.cols:
            raise ValueError("family members must be square")
    if mats and any(m.rows != mats[0].rows for m in mats):
        raise ValueError("family members must share one dimension")

    unitary = CheckCollector("unitary", verbose)
    squares = CheckCollector("squares_to_minus_identity", verbose)
    anticommute = CheckCollector("anticommute", verbose)

    for idx, m in enumerate(mats):
        if not m.is_unitary():
            unitary.fail(f"matrices[{idx}] is not unitary")
            if unitary.done:
                break
    if mats:
        minus_eye = -GaussianMatrix.identity(mats[0].rows)
        for idx, m in enumerate(mats):
            if m @ m != minus_eye:
                squares.fail(f"matrices[{idx}] squared is not -I")
                if squares.done:
                    break
    for i, j in combinations(range(len(mats)), 2):
        if mats[i] @ mats[j] != -(mats[j] @ mats[i]):
            anticommute.fail(f"matrices[{i}] and matrices[{j}] do not anticommute")
            if anticommute.done:
                break

    return VerificationReport(
        (unitary.as_check(), squares.as_check(), anticommute.as_check())
    )


def _double(mats: list[GaussianMatrix], dim: int) -> list[GaussianMatrix]:
    eye = GaussianMatrix.identity(dim)
    out = [kron(_SPLIT, m) for m in mats]
    out.append(kron(_NEW_RE, eye))
    out.append(kron(_NEW_IM, eye))
    return out


def gamma_family(n: int) -> GammaFamily:
    """Minimal-dimension anticommuting family with n members.

    Dimension is 2^floor(n/2); the doubling chain produces enough members
    and the result is truncated to the first n.  The relations are checked
    exactly after every doubling step.
    """
    if n < 0:
        raise ValueError("family size must be non-negative")
    mats = [GaussianMatrix.from_rows([[_I]])]
    dim = 1
    target = 2 ** (n // 2)
    while dim < target:
        mats = _double(mats, dim)
        dim *= 2
        report = verify_hr_family(mats)
        if not report.passed:
            raise AssertionError(
                f"doubling step to dimension {dim} broke the relations: "
                f"{[c.witness for c in report.failures()]}"
            )
    return GammaFamily(n, dim, tuple(mats[:n]))
