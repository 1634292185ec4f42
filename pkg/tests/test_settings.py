import os
import tempfile
from unittest import TestCase, mock
from cubewalk import settings, Settings


class SettingsTestCase(TestCase):
    def tearDown(self) -> None:
        settings.reset_settings_to_default()

    def test_defaults(self):
        self.assertEqual(30, settings.limits.max_wires)
        self.assertEqual(1e-10, settings.tolerances.equivalence)
        self.assertEqual(5, settings['sweep'].window_padding)

    def test_from_text(self):
        text = "# overrides\nlimits.max_wires=12\n\nsweep.workers = 3  # comment\ntolerances.norm=1e-8\n"
        s = Settings.from_text(text)
        self.assertEqual(12, s.limits.max_wires)
        self.assertEqual(26, s.limits.executor_wires)
        self.assertEqual(3, s.sweep.workers)
        self.assertEqual(1e-8, s.tolerances.norm)
        # module level settings are untouched
        self.assertEqual(30, settings.limits.max_wires)

    def test_register_text_new_section(self):
        settings.register_text("extra.flag=yes\nextra.name=hello")
        self.assertTrue(settings.extra.flag)
        self.assertEqual('hello', settings.extra.get('name'))
        self.assertIsNone(settings.extra.get('missing'))

    def test_register_text_invalid(self):
        with self.assertRaises(ValueError) as context:
            settings.register_text("limits.max_wires=4\nmax_wires=3")
        self.assertIn("Invalid settings line 2", str(context.exception))

        with self.assertRaises(ValueError) as context:
            settings.register_text("limits.max_wires")
        self.assertIn("expected 'section.key=value'", str(context.exception))

    def test_reset(self):
        settings.limits.max_wires = 4
        settings.reset_settings_to_default()
        self.assertEqual(30, settings.limits.max_wires)

    def test_worker_count_explicit(self):
        settings.sweep.workers = 2
        with mock.patch.dict(os.environ, {'CUBEWALK_THREADS': '7'}):
            self.assertEqual(2, settings.worker_count)

    def test_worker_count_environment(self):
        with mock.patch('os.cpu_count', return_value=8):
            with mock.patch.dict(os.environ, {'CUBEWALK_THREADS': '3'}):
                self.assertEqual(3, settings.worker_count)
            with mock.patch.dict(os.environ, {'CUBEWALK_THREADS': '64'}):
                self.assertEqual(8, settings.worker_count)
            with mock.patch.dict(os.environ, {'CUBEWALK_THREADS': 'many'}):
                self.assertEqual(8, settings.worker_count)

    def test_register_merges_sections(self):
        settings.register({'limits': {'max_wires': 8}, 'plot': {'dpi': 300}})
        self.assertEqual(8, settings.limits.max_wires)
        self.assertEqual(26, settings.limits.executor_wires)
        self.assertEqual(300, settings.plot.dpi)
        self.assertEqual(1e-12, settings.tolerances.tie)

    def test_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'settings.json')
            with open(path, 'w') as f:
                f.write('{"sweep": {"workers": 4}, "tolerances": {"equivalence": 1e-8}}')
            s = Settings.from_file(path)
        self.assertEqual(4, s.sweep.workers)
        self.assertEqual(5, s.sweep.window_padding)
        self.assertEqual(1e-8, s.tolerances.equivalence)
        self.assertEqual(30, s.limits.max_wires)
        self.assertEqual(4, s.worker_count)
