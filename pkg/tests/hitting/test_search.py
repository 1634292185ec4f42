import numpy as np
from unittest import TestCase
from cubewalk import settings
from cubewalk.core import hypercube, augmented_cube, complete_graph, target_vertex
from cubewalk.core.types import BitString
from cubewalk.exceptions import EmptyWindow, WidthMismatch
from cubewalk.hitting import one_shot_probability, default_window, find_hitting_time, probability_curve
from cubewalk.walk import CoinPadding, initial_state, evolve, position_distribution


def bits(text: str) -> BitString:
    return BitString.from_string(text)


class OneShotProbabilityTestCase(TestCase):
    def test_q3(self):
        g = hypercube(3)
        p = one_shot_probability(g, 3, BitString.zero(3), bits('111'))
        self.assertAlmostEqual(64 / 81, p, places=12)
        self.assertLessEqual(abs(p - 0.804), 0.02)

    def test_q3_long_time_peak(self):
        g = hypercube(3)
        p = one_shot_probability(g, 23, BitString.zero(3), bits('111'))
        self.assertGreaterEqual(p, 0.99)
        self.assertAlmostEqual(0.998933, p, places=5)

    def test_augmented_four(self):
        g = augmented_cube(4)
        p = one_shot_probability(g, 11, BitString.zero(4), bits('0100'))
        self.assertLessEqual(abs(p - 0.993), 0.02)

    def test_complete_graphs(self):
        for n in range(2, 9):
            g = complete_graph(n)
            self.assertGreaterEqual(one_shot_probability(g, 4, BitString.zero(n), target_vertex(g)), 0.999)

    def test_translation_invariance(self):
        g = augmented_cube(4)
        u = bits('0000')
        v = target_vertex(g)
        expected = one_shot_probability(g, 7, u, v)
        for w in range(1, 16):
            shift = BitString(w, 4)
            self.assertAlmostEqual(expected, one_shot_probability(g, 7, u ^ shift, v ^ shift), places=12)

    def test_width_checked(self):
        g = hypercube(3)
        with self.assertRaises(WidthMismatch) as context:
            one_shot_probability(g, 3, BitString.zero(3), bits('11'))
        self.assertIn("Target vertex 11 has width 2, expected 3", str(context.exception))


class FindHittingTimeTestCase(TestCase):
    def tearDown(self) -> None:
        settings.reset_settings_to_default()

    def test_default_window(self):
        self.assertEqual((1, 10), default_window(hypercube(3)))
        self.assertEqual((1, 16), default_window(augmented_cube(4)))
        settings.sweep.window_padding = 1
        self.assertEqual((1, 6), default_window(hypercube(3)))

    def test_q3(self):
        record = find_hitting_time(hypercube(3))
        self.assertEqual(3, record.T)
        self.assertAlmostEqual(64 / 81, record.p, places=12)
        self.assertEqual(bits('111'), record.target)
        self.assertEqual(BitString.zero(3), record.start)
        self.assertEqual((1, 10), record.window)
        self.assertEqual('reflect', record.padding)

    def test_q4_ties(self):
        # 4, 6 and 8 steps reach 1111 with exactly 9/16, the first one wins
        g = hypercube(4)
        record = find_hitting_time(g)
        self.assertEqual(4, record.T)
        self.assertAlmostEqual(0.5625, record.p, places=12)
        p6 = one_shot_probability(g, 6, BitString.zero(4), bits('1111'))
        self.assertAlmostEqual(record.p, p6, places=12)
        self.assertLessEqual(abs(p6 - 0.562), 0.02)

    def test_q8(self):
        record = find_hitting_time(hypercube(8))
        self.assertEqual(12, record.T)
        self.assertLessEqual(abs(record.p - 0.954), 0.02)

    def test_hypercube_peak_is_the_antipode(self):
        for n in range(2, 11):
            g = hypercube(n)
            record = find_hitting_time(g)
            dist = position_distribution(evolve(initial_state(g, BitString.zero(n)), record.T))
            self.assertEqual(BitString.from_string('1' * n), dist.argmax(), f"n={n} T={record.T}")
            self.assertAlmostEqual(record.p, dist[record.target], places=12)

    def test_augmented_four(self):
        record = find_hitting_time(augmented_cube(4))
        self.assertEqual(11, record.T)
        self.assertEqual(bits('0100'), record.target)
        self.assertLessEqual(abs(record.p - 0.993), 0.02)

    def test_window(self):
        g = hypercube(3)
        self.assertEqual(3, find_hitting_time(g, window=(1, 5)).T)
        record = find_hitting_time(g, window=(4, 10))
        self.assertEqual(7, record.T)
        self.assertAlmostEqual(0.590094, record.p, places=5)
        self.assertEqual(23, find_hitting_time(g, window=(20, 25)).T)

    def test_window_is_monotone(self):
        g = augmented_cube(3)
        best = 0.0
        for last in range(1, 16):
            record = find_hitting_time(g, window=(1, last))
            self.assertGreaterEqual(record.p, best)
            best = record.p

    def test_window_errors(self):
        with self.assertRaises(EmptyWindow) as context:
            find_hitting_time(hypercube(3), window=(5, 3))
        self.assertIn("Search window [5, 3] is empty", str(context.exception))

        with self.assertRaises(ValueError) as context:
            find_hitting_time(hypercube(3), window=(-1, 3))
        self.assertIn("negative step", str(context.exception))

    def test_zero_step_window(self):
        g = hypercube(2)
        record = find_hitting_time(g, target=BitString.zero(2), window=(0, 0))
        self.assertEqual(0, record.T)
        self.assertAlmostEqual(1.0, record.p, places=12)

    def test_complete_graphs(self):
        for n in range(2, 7):
            g = complete_graph(n)
            record = find_hitting_time(g, window=(1, 8))
            self.assertEqual(4, record.T)
            self.assertGreaterEqual(record.p, 0.999)
            self.assertEqual('loop', record.padding)
            self.assertEqual(BitString.zero(n), record.target)
        self.assertEqual(4, find_hitting_time(complete_graph(4)).T)

    def test_complete_graph_reflect_padding(self):
        record = find_hitting_time(complete_graph(3), padding=CoinPadding.REFLECT)
        self.assertEqual(11, record.T)
        self.assertAlmostEqual(0.999968, record.p, places=5)
        self.assertEqual('reflect', record.padding)

    def test_custom_vertices(self):
        g = hypercube(3)
        record = find_hitting_time(g, start=bits('111'), target=BitString.zero(3))
        self.assertEqual(3, record.T)
        self.assertAlmostEqual(64 / 81, record.p, places=12)

    def test_to_json(self):
        data = find_hitting_time(hypercube(3)).to_json()
        self.assertEqual('hypercube(3)', data['graph'])
        self.assertEqual(3, data['T'])
        self.assertEqual('000', data['start'])
        self.assertEqual('111', data['target'])
        self.assertEqual([1, 10], data['window'])
        self.assertEqual('reflect', data['padding'])


class ProbabilityCurveTestCase(TestCase):
    def test_q2(self):
        curve = probability_curve(hypercube(2), 4)
        np.testing.assert_allclose([0, 0, 1, 0, 0], curve, atol=1e-12)

    def test_q3_peaks(self):
        curve = probability_curve(hypercube(3), 25)
        self.assertEqual(26, len(curve))
        self.assertEqual(23, int(np.argmax(curve)))
        self.assertAlmostEqual(64 / 81, curve[3], places=12)

    def test_negative(self):
        with self.assertRaises(ValueError):
            probability_curve(hypercube(2), -1)
