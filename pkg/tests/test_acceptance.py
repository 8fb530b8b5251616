"""End-to-end acceptance checks.

One test per claim, each printing a single summary line; run with
`pytest tests/test_acceptance.py -s` to see them as they complete.
"""

import json
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
from click.testing import CliRunner

from cuwcodes.algebra import GroupSpec, enumerate_group, verify_group_structure
from cuwcodes.cli import main
from cuwcodes.designs import (
    LinearDesign,
    SlotDesign,
    abba_block_pattern,
    abba_construction,
    blockdiag_construction,
    blockdiag_representation,
    irreducible_representation,
    tensor_construction,
)
from cuwcodes.simulate import evaluate_design, metric_split_check, run_monte_carlo
from cuwcodes.verify import (
    max_rate,
    min_nt,
    verify_cuw,
    verify_partition_decodable,
    verify_unique_decodability,
)

GRID_G = range(1, 9)
GRID_LAM = (2, 4, 8)


@contextmanager
def criterion(num: int, text: str, budget: float | None = None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed >= budget:
            raise AssertionError(f"took {elapsed:.2f}s, budget {budget:.0f}s")
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        status = "PASS" if ok else "FAIL"
        print(f"[criterion {num}] {status} {text} ({elapsed:.2f}s)")


def test_criterion_1_rate_formula_reproduction():
    with criterion(1, "rate table and construction grid match the closed-form rates", budget=5.0):
        result = CliRunner().invoke(main, ["rate-table", "--gmax", "8", "--json"])
        assert result.exit_code == 0, result.output
        rows = json.loads(result.output)["rows"]
        assert [r["g"] for r in rows] == list(GRID_G)
        for g, row in zip(GRID_G, rows):
            assert Fraction(row["max_rate"]) == Fraction(g, 2 ** ((g - 1) // 2 + 1))
        assert [r["max_rate"] for r in rows[1:6]] == ["1", "3/4", "1", "5/8", "3/4"]

        for g in GRID_G:
            for lam in GRID_LAM:
                d = blockdiag_construction(g, lam)
                assert d.nt == lam * 2 ** ((g - 1) // 2) <= 64
                assert d.rate == Fraction(g, 2 ** ((g - 1) // 2 + 1))
                assert d.rate == max_rate(g)
                assert d.nt == min_nt(g, lam)


def all_grid_designs() -> list[LinearDesign]:
    designs: list[LinearDesign] = []
    for g in GRID_G:
        for lam in GRID_LAM:
            designs.append(blockdiag_construction(g, lam))
            designs.append(tensor_construction(g, lam, delta_style="diagonal"))
            designs.append(tensor_construction(g, lam, delta_style="regular"))
    for slot in (SlotDesign.scalar(), SlotDesign.alamouti()):
        for a in (1, 2, 3):
            designs.append(abba_construction(slot, a))
    return designs


def test_criterion_2_cuw_condition_suite():
    with criterion(2, "every constructed design satisfies the unitary weight conditions", budget=10.0):
        designs = all_grid_designs()
        assert len(designs) == 78
        failed = [
            (d.meta.get("construction"), d.g, d.lam)
            for d in designs
            if not verify_cuw(d).passed
        ]
        assert failed == []


def realized_block_layout(slot_size: int, d: LinearDesign) -> tuple[tuple[int, ...], ...]:
    """Which first-column weight occupies block (s, t) of the design."""
    size = d.lam
    table = [[-1] * size for _ in range(size)]
    for i in range(size):
        w = d.weights[d.flat_index(i, 0)]
        for s in range(size):
            for t in range(size):
                if w.entry(s * slot_size, t * slot_size).re != 0:
                    table[s][t] = i
    return tuple(tuple(r) for r in table)


def test_criterion_3_abba_fixture():
    with criterion(3, "4-antenna layout [[A,B],[B,A]] and the a=2 block pattern are exact"):
        d = abba_construction(SlotDesign.alamouti(), 1)
        rng = np.random.default_rng(2026)
        x1, x2, x3, x4 = (complex(re, im) for re, im in rng.normal(size=(4, 2)))
        # flat variable order: x1I, x3I, x1Q, x3Q, x2I, x4I, x2Q, x4Q
        coeffs = [x1.real, x3.real, x1.imag, x3.imag, x2.real, x4.real, x2.imag, x4.imag]
        s = evaluate_design(d, coeffs)
        expected = np.array(
            [
                [x1, -np.conj(x2), x3, -np.conj(x4)],
                [x2, np.conj(x1), x4, np.conj(x3)],
                [x3, -np.conj(x4), x1, -np.conj(x2)],
                [x4, np.conj(x3), x2, np.conj(x1)],
            ]
        )
        assert np.array_equal(s, expected)

        xor_table = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
        assert abba_block_pattern(2) == xor_table
        realized = realized_block_layout(2, abba_construction(SlotDesign.alamouti(), 2))
        label = {realized[0][t]: t for t in range(4)}
        assert tuple(tuple(label[v] for v in row) for row in realized) == xor_table


def test_criterion_4_repartition_claim():
    with criterion(4, "4-antenna design: 4-group split passes, singletons fail, coarsening passes"):
        d = abba_construction(SlotDesign.alamouti(), 1)
        # flat variable order: x1I, x3I, x1Q, x3Q, x2I, x4I, x2Q, x4Q
        good = [[0, 1], [2, 3], [4, 5], [6, 7]]
        singletons = [[k] for k in range(8)]
        coarse = [[0, 1, 2, 3], [4, 5, 6, 7]]
        assert d.partition == ((0, 1), (2, 3), (4, 5), (6, 7))
        assert verify_partition_decodable(d, good).passed
        assert not verify_partition_decodable(d, singletons).passed
        assert verify_partition_decodable(d, coarse).passed
        # pairing {x1,x2 reals},{x3,x4 reals} mixes quadratures and fails
        assert not verify_partition_decodable(d, [[0, 2, 4, 6], [1, 3, 5, 7]]).passed


def test_criterion_5_decoder_equivalence():
    with criterion(5, "per-group ML equals exhaustive ML over 1000 trials per design", budget=60.0):
        cases = [
            blockdiag_construction(2, 2),
            blockdiag_construction(4, 2),
            abba_construction(SlotDesign.alamouti(), 1),
        ]
        for idx, d in enumerate(cases):
            [point] = run_monte_carlo(d, [10.0], trials=1000, seed=idx)
            assert point.trials == 1000
            assert point.agreement == 1.0
            assert metric_split_check(d, trials=1000, seed=idx) < 1e-9


def test_criterion_6_group_algebra():
    with criterion(6, "signed monomial groups check out exhaustively for n <= 4, a <= 3", budget=5.0):
        for n in range(5):
            for a in range(4):
                spec = GroupSpec(n, a)
                assert verify_group_structure(spec).passed
                assert len(enumerate_group(spec)) == 2 ** (n + a + 1)
                assert spec.order == 2 ** (n + a + 1)


def test_criterion_7_unique_decodability():
    with criterion(7, "block-diagonal representations decode uniquely; irreducible ones do not"):
        for g in GRID_G:
            for lam in GRID_LAM:
                spec = GroupSpec(n=g - 1, a=lam.bit_length() - 1)
                rep = blockdiag_representation(spec)
                assert verify_unique_decodability(spec, rep).passed, (g, lam)
        for g in GRID_G:
            spec = GroupSpec(n=g - 1, a=1)
            for mask in (0, 1):
                rep = irreducible_representation(spec, mask)
                assert not verify_unique_decodability(spec, rep).passed, (g, mask)
