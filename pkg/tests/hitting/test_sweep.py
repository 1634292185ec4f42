import io
import math
from unittest import TestCase, IsolatedAsyncioTestCase
from cubewalk import settings
from cubewalk.core import msgrouter, augmented_cube, hypercube
from cubewalk.core.types import BitString
from cubewalk.exceptions import TooFewRows, TooManyExtras
from cubewalk.hitting import (SweepRow, SweepReport, family_sweep, family_sweep_async, degree_sweep,
                              conjecture_check, one_shot_probability)

# n: (listed T, listed p, searched T, exact p at searched T)
HYPERCUBE_TABLE = {3: (3, 0.804, 3, 0.790123),
                   4: (6, 0.562, 4, 0.562500),
                   5: (7, 0.722, 7, 0.739875),
                   6: (10, 0.816, 10, 0.803183),
                   7: (11, 0.912, 11, 0.911324),
                   8: (12, 0.954, 12, 0.961439),
                   9: (13, 0.950, 13, 0.947701),
                   10: (14, 0.901, 14, 0.880755),
                   11: (17, 0.927, 17, 0.931736),
                   12: (18, 0.956, 18, 0.958554),
                   13: (19, 0.947, 19, 0.934123),
                   14: (22, 0.929, 22, 0.925795),
                   15: (23, 0.961, 23, 0.965999),
                   16: (24, 0.960, 24, 0.964354)}

AUGMENTED_TABLE = {3: (9, 0.812, 9, 0.833589),
                   4: (11, 0.993, 11, 0.990657),
                   5: (13, 0.953, 13, 0.954894),
                   6: (17, 0.928, 17, 0.918233),
                   7: (19, 0.919, 19, 0.914243),
                   8: (23, 0.969, 23, 0.965504),
                   9: (25, 0.926, 25, 0.923719),
                   10: (29, 0.955, 29, 0.959199),
                   11: (31, 0.919, 33, 0.939707),
                   12: (35, 0.954, 35, 0.964790),
                   13: (39, 0.958, 39, 0.963280),
                   14: (41, 0.962, 41, 0.962373),
                   15: (45, 0.977, 45, 0.975847),
                   16: (47, 0.961, 47, 0.955357)}

# listed probabilities were sampled from shots
LISTED_TOLERANCE = 0.025


def row(n: int, delta: int, T: int, p: float = 0.9) -> SweepRow:
    return SweepRow('test', n, delta, T, BitString.zero(n), p)


class SweepReportTestCase(TestCase):
    def test_fit(self):
        report = SweepReport('test', [row(2, 2, 3), row(4, 4, 6), row(6, 6, 9)])
        self.assertAlmostEqual(1.5, report.slope, places=12)
        self.assertAlmostEqual(0.0, report.intercept, places=12)
        self.assertEqual(0, report.parity_violations)
        self.assertEqual(3, len(report))

    def test_keeps_row_order(self):
        rows = [row(4, 4, 6), row(2, 2, 3), row(3, 3, 5)]
        self.assertEqual(rows, SweepReport('test', rows).rows)

    def test_parity_violations(self):
        report = SweepReport('test', [row(3, 3, 4), row(4, 4, 6), row(5, 5, 7), row(6, 6, 9)])
        self.assertEqual(2, report.parity_violations)

    def test_too_few_rows(self):
        with self.assertRaises(TooFewRows) as context:
            SweepReport('test', [row(3, 3, 3)])
        self.assertIn("at least 2 rows, got 1", str(context.exception))

        with self.assertRaises(TooFewRows) as context:
            conjecture_check(SweepReport('test', [row(3, 3, 3), row(4, 4, 6)]))
        self.assertIn("at least 3 rows, got 2", str(context.exception))

    def test_csv(self):
        report = SweepReport('test', [row(2, 2, 2, 1.0), row(3, 3, 3, 0.5), row(4, 4, 6, 0.25)])
        stream = io.StringIO()
        report.write_csv(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual('family,n,delta,T,target_bits,p', lines[0])
        self.assertEqual('test,2,2,2,00,1', lines[1])
        self.assertEqual('test,3,3,3,000,0.5', lines[2])
        self.assertTrue(lines[4].startswith('# slope='))
        self.assertTrue(lines[5].startswith('# intercept='))
        self.assertEqual('# parity_violations=0', lines[6])

    def test_plot_data(self):
        report = SweepReport('test', [row(2, 2, 2), row(3, 3, 3)])
        stream = io.StringIO()
        report.write_plot_data(stream)
        self.assertEqual("delta\tT\n2\t2\n3\t3\n", stream.getvalue())

    def test_conjecture_check(self):
        rows = [row(n, n, round(math.pi * n / 2)) for n in (4, 6, 8, 10)]
        verdict = conjecture_check(SweepReport('test', rows))
        self.assertLess(verdict.slope_error, 0.25)
        self.assertLessEqual(verdict.max_deviation, 0.5)
        self.assertEqual(4, verdict.rows)
        self.assertEqual({'slope', 'slope_error', 'max_deviation', 'parity_violations', 'rows'},
                         set(verdict.to_json()))


class FamilySweepTestCase(TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.hypercubes = family_sweep('hypercube', range(3, 17))
        cls.augmented = family_sweep('augmented', range(3, 17))

    def check_table(self, report, family, table):
        self.assertEqual(list(range(3, 17)), [r.n for r in report.rows])
        for r in report.rows:
            listed_T, listed_p, searched_T, exact_p = table[r.n]
            g = family(r.n)
            self.assertEqual(searched_T, r.T, f"n={r.n}")
            self.assertAlmostEqual(exact_p, r.p, places=5, msg=f"n={r.n}")
            self.assertEqual(g.delta, r.delta)
            if listed_T == r.T:
                p_listed_T = r.p
            else:
                p_listed_T = one_shot_probability(g, listed_T, BitString.zero(r.n), r.target)
            self.assertLessEqual(abs(p_listed_T - listed_p), LISTED_TOLERANCE, f"n={r.n}")

    def test_hypercube_table(self):
        self.check_table(self.hypercubes, hypercube, HYPERCUBE_TABLE)
        for r in self.hypercubes.rows:
            self.assertEqual('1' * r.n, str(r.target))

    def test_augmented_table(self):
        self.check_table(self.augmented, augmented_cube, AUGMENTED_TABLE)
        targets = [str(r.target) for r in self.augmented.rows]
        self.assertEqual(['011', '0100', '01011', '010100', '0101011'], targets[:5])
        for r in self.augmented.rows:
            self.assertEqual(2 * r.n - 1, r.delta)

    def test_hypercube_probability_trend(self):
        # p approaches 1 for large n, up to the noise of single rows
        p = {r.n: r.p for r in self.hypercubes.rows}
        for n in range(10, 17):
            self.assertGreaterEqual(p[n], p[10] - 0.02)
        late = sum(p[n] for n in range(13, 17)) / 4
        early = sum(p[n] for n in range(10, 13)) / 3
        self.assertGreaterEqual(late, early - 0.02)

    def test_conjecture(self):
        for report in (self.hypercubes, self.augmented):
            verdict = conjecture_check(report)
            self.assertLess(verdict.slope_error, 0.25, report.family)
            self.assertEqual(0, verdict.parity_violations, report.family)
        self.assertLessEqual(conjecture_check(self.augmented).max_deviation, 2.5)
        self.assertAlmostEqual(1.606593, self.hypercubes.slope, places=5)
        self.assertAlmostEqual(1.525275, self.augmented.slope, places=5)

    def test_workers_do_not_change_rows(self):
        one = family_sweep('hypercube', [5, 3, 4], workers=1)
        many = family_sweep('hypercube', [3, 4, 5], workers=3)
        self.assertEqual(one.rows, many.rows)
        self.assertEqual([3, 4, 5], [r.n for r in one.rows])

    def test_csv_is_deterministic(self):
        outputs = []
        for workers in (1, 2):
            stream = io.StringIO()
            family_sweep('augmented', [3, 4, 5], workers=workers).write_csv(stream)
            outputs.append(stream.getvalue())
        self.assertEqual(outputs[0], outputs[1])

    def test_complete_family(self):
        report = family_sweep('complete', [2, 3, 4])
        self.assertEqual([4, 4, 4], [r.T for r in report.rows])

    def test_errors(self):
        with self.assertRaises(ValueError) as context:
            family_sweep('hypercube', [])
        self.assertIn("at least one dimension", str(context.exception))
        with self.assertRaises(TooFewRows):
            family_sweep('hypercube', [3])
        with self.assertRaises(ValueError):
            family_sweep('moebius', [3, 4])


class DegreeSweepTestCase(TestCase):
    def tearDown(self) -> None:
        settings.reset_settings_to_default()

    def test_rows(self):
        report = degree_sweep(5, [3, 0, 1, 2], seed=3)
        self.assertEqual('random', report.family)
        self.assertEqual([0, 1, 2, 3], [r.extra for r in report.rows])
        self.assertEqual([5, 6, 7, 8], [r.delta for r in report.rows])
        for r in report.rows:
            self.assertGreater(r.p, 0)
            self.assertLessEqual(r.p, 1 + 1e-12)
        self.assertEqual(report.rows, degree_sweep(5, [0, 1, 2, 3], seed=3, workers=1).rows)

    def test_errors(self):
        with self.assertRaises(ValueError):
            degree_sweep(4, [])
        with self.assertRaises(TooManyExtras):
            degree_sweep(3, [1, 5])

    def test_worker_setting(self):
        settings.sweep.workers = 1
        report = degree_sweep(4, [0, 1])
        self.assertEqual(2, len(report))


class SweepEventsTestCase(IsolatedAsyncioTestCase):
    async def test_rows_are_announced(self):
        seen = []

        def on_row(r):
            seen.append(r)

        msgrouter.on_sweep_row += on_row
        try:
            report = await family_sweep_async('hypercube', [2, 3, 4], workers=2)
        finally:
            msgrouter.on_sweep_row -= on_row
        self.assertEqual(3, len(seen))
        self.assertEqual(sorted(r.n for r in seen), [r.n for r in report.rows])
        self.assertEqual(set(report.rows), set(seen))
