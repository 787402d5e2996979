"""Acceptance gate: one timed check per shipped guarantee.

Each test prints a single pass/fail line; run with `pytest -v -s
tests/test_acceptance.py` to see them inline.  All comparisons are exact,
the time limits are the generous stated budgets.
"""

import subprocess
import sys
import time

import pytest

from foldkit.cartan import cartan_from_graph, classify, fold, gcm, stable_subset
from foldkit.characters import ch_a, verify_cor322
from foldkit.crystal import aut_action, fixed_census, fixed_census_table, generate
from foldkit.multiplicity import (
    all_vectors_up_to,
    freudenthal,
    freudenthal_full,
    weyl_dim,
)
from foldkit.quiver import parse_quiver, vertex_orbit_index
from foldkit.reps import property_suite

from conftest import A3_FLIP, A5_FLIP, CYCLE4_ROTATION, D4_TRIALITY, datum


def checked(label, budget, fn):
    start = time.time()
    try:
        fn()
    except BaseException:
        print(f"{label}: FAIL ({time.time() - start:.2f}s)")
        raise
    elapsed = time.time() - start
    print(f"{label}: PASS ({elapsed:.2f}s, budget {budget}s)")
    assert elapsed < budget, f"{label} exceeded its {budget}s budget"


def test_criterion_1_folding_fixtures():
    def body():
        cases = [
            (A3_FLIP, ((2, -1), (-2, 2)), "Finite", None),
            (D4_TRIALITY, ((2, -3), (-1, 2)), "Finite", None),
            (CYCLE4_ROTATION, ((2, -2), (-2, 2)), "Affine", (1, 1)),
            (A5_FLIP, ((2, -1, 0), (-1, 2, -1), (0, -2, 2)), "Finite", None),
        ]
        for text, matrix, kind, delta in cases:
            start = time.time()
            q = parse_quiver(text)
            c = fold(q.graph, q.automorphism)
            tc = classify(c)
            assert gcm(c).matrix == matrix
            assert tc.kind == kind
            if delta is not None:
                assert tc.delta == delta
            assert time.time() - start < 1.0
        a5 = gcm(fold(parse_quiver(A5_FLIP).graph,
                      parse_quiver(A5_FLIP).automorphism)).matrix
        assert a5 != tuple(zip(*a5)), "expected a non-symmetric Cartan matrix"

    checked("criterion 1 (folding fixtures)", 4, body)


def test_criterion_2_finite_type_oracle_agreement():
    def body():
        cases = [
            ([[2, -1], [-1, 2]], (1, 1), 8),
            ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], (0, 1, 0), 6),
            ([[4, -2], [-2, 2]], (0, 1), None),
            ([[2, -3], [-3, 6]], (1, 0), None),
        ]
        for form, lam, expected in cases:
            c = datum(form)
            w = weyl_dim(c, lam)
            total = sum(freudenthal_full(c, lam).entries.values())
            assert total == w
            if expected is not None:
                assert w == expected

    checked("criterion 2 (Freudenthal totals equal Weyl dimension)", 10, body)


def test_criterion_3_crystal_census_equals_freudenthal():
    def body():
        cases = [
            ([[2, -1], [-1, 2]], (1, 1), 6),
            ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], (0, 1, 0), 6),
            ([[4, -2], [-2, 2]], (0, 1), 6),
            ([[2]], (2,), 8),
        ]
        for form, lam, depth in cases:
            c = datum(form)
            g = generate(c, lam, depth)
            table = freudenthal(c, lam, depth)
            for nu in all_vectors_up_to(c.rank, depth):
                assert g.census(nu) == table.mult(nu), (form, lam, nu)

    checked("criterion 3 (crystal census equals Freudenthal)", 60, body)


def test_criterion_4_fixed_points_count_folded_multiplicities():
    def body():
        cases = [
            (A3_FLIP, (0, 1, 0), 6),
            (A3_FLIP, (1, 0, 1), 6),
            (D4_TRIALITY, (1, 0, 0, 0), 5),
        ]
        for text, lam, depth in cases:
            q = parse_quiver(text)
            c = cartan_from_graph(q.graph)
            folded = fold(q.graph, q.automorphism)
            lam_f = stable_subset(lam, q.automorphism)
            vorbs, _ = vertex_orbit_index(q.automorphism, q.graph)
            g = generate(c, lam, max(len(o) for o in vorbs) * depth)
            sigma = aut_action(g, q.automorphism.vperm)
            table = fixed_census_table(g, sigma)
            oracle = freudenthal(folded, lam_f, depth)
            for nt in all_vectors_up_to(folded.rank, depth):
                got = fixed_census(g, sigma, nt, orbit_list=vorbs, _table=table)
                assert got == oracle.mult(nt), (text.splitlines()[0], lam, nt)

    checked("criterion 4 (fixed-point counts equal folded multiplicities)", 120, body)


def test_criterion_5_basic_representation_multiplicities():
    def body():
        def partitions(n):
            def count(n, largest):
                if n == 0:
                    return 1
                return sum(count(n - k, k) for k in range(min(n, largest), 0, -1))
            return count(n, n)

        expected = [partitions(n) for n in range(11)]
        assert expected == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        table = freudenthal(datum([[2, -2], [-2, 2]]), (1, 0), 20)
        got = [table.mult((n, n)) for n in range(11)]
        assert got == expected

    checked("criterion 5 (basic representation partition multiplicities)", 30, body)


def test_criterion_6_twisted_trace_matches_normalized_character():
    def body():
        q = parse_quiver(CYCLE4_ROTATION)
        w = (1, 0, 1, 0)
        report_fast = verify_cor322(q, w, 8)
        assert report_fast.verified, report_fast.mismatch_exponent
        report_checked = verify_cor322(q, w, 8, with_crystal_check=True)
        assert report_checked.verified, report_checked.mismatch_exponent
        assert report_checked.twisted_trace == report_fast.twisted_trace
        assert ch_a(q, w, 8) == report_fast.twisted_trace

    checked("criterion 6 (twisted trace equals normalized character, depth 8)",
            300, body)


def test_criterion_7_representation_property_suite():
    def body():
        total = 0
        for text, trials in ((A3_FLIP, 700), (CYCLE4_ROTATION, 420)):
            q = parse_quiver(text)
            results = property_suite(q, seed=20240811, trials=trials, max_total_dim=6)
            for name, runs, ok, detail in results:
                assert ok, (name, detail)
                total += runs
        assert total >= 1000, total

    checked("criterion 7 (representation property suite, seed-pinned)", 30, body)


def test_criterion_8_reports_are_byte_identical(tmp_path):
    def body():
        files = {
            "a3.quiver": A3_FLIP,
            "a5.quiver": A5_FLIP,
            "d4.quiver": D4_TRIALITY,
            "cycle4.quiver": CYCLE4_ROTATION,
        }
        for name, text in files.items():
            (tmp_path / name).write_text(text)

        def p(name):
            return str(tmp_path / name)

        runs = [
            ["fold", "--quiver", p("a3.quiver")],
            ["fold", "--quiver", p("a5.quiver")],
            ["fold", "--quiver", p("d4.quiver")],
            ["fold", "--quiver", p("cycle4.quiver")],
            ["mult", "--quiver", p("cycle4.quiver"), "--lambda", "1,0",
             "--depth", "20"],
            ["roots", "--quiver", p("cycle4.quiver"), "--depth", "8"],
            ["crystal", "--quiver", p("a3.quiver"), "--lambda", "0,1,0",
             "--depth", "6"],
            ["fixed", "--quiver", p("a3.quiver"), "--lambda", "0,1,0",
             "--depth", "6"],
            ["fixed", "--quiver", p("d4.quiver"), "--lambda", "1,0,0,0",
             "--depth", "5"],
            ["char", "--quiver", p("cycle4.quiver"), "--lambda", "1,0",
             "--depth", "8"],
            ["chara", "--quiver", p("cycle4.quiver"), "--lambda", "1,0,1,0",
             "--depth", "8"],
            ["verify", "--quiver", p("cycle4.quiver"), "--lambda", "1,0,1,0",
             "--depth", "8"],
            ["repcheck", "--quiver", p("a3.quiver"), "--seed", "20240811",
             "--trials", "70"],
        ]
        for args in runs:
            outs = []
            for _ in range(2):
                proc = subprocess.run([sys.executable, "-m", "foldkit.cli"] + args,
                                      capture_output=True, text=True, check=False)
                assert proc.returncode == 0, (args, proc.stderr)
                outs.append(proc.stdout)
            assert outs[0] == outs[1], f"report bytes differ for {args}"

    checked("criterion 8 (byte-identical reports across runs)", 120, body)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
