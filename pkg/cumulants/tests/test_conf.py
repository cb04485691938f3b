from django.core.exceptions import ImproperlyConfigured, ValidationError
from django.test import SimpleTestCase, override_settings

from cumulants.conf import Config, get_config


class ConfigTests(SimpleTestCase):
    @override_settings(FREEHAAR={})
    def test_defaults(self):
        config = get_config()
        self.assertEqual(config, Config())
        self.assertEqual(config.enumeration_limit, 14)
        self.assertEqual(config.oracle_n_values, (1, 2, 3))
        self.assertEqual(config.workers, 1)

    @override_settings(FREEHAAR={'ENUMERATION_LIMIT': 10, 'ORACLE_N_VALUES': [2, 4], 'WORKERS': '3'})
    def test_settings_are_read(self):
        config = get_config()
        self.assertEqual(config.enumeration_limit, 10)
        self.assertEqual(config.oracle_n_values, (2, 4))
        self.assertEqual(config.workers, 3)

    @override_settings(FREEHAAR={'ENUMERATION_LIMIT': 10})
    def test_overrides_win_and_none_keeps(self):
        self.assertEqual(get_config(enumeration_limit=6).enumeration_limit, 6)
        self.assertEqual(get_config(enumeration_limit=None).enumeration_limit, 10)

    @override_settings(FREEHAAR={'WORKERS': 'auto'})
    def test_auto_workers(self):
        self.assertGreaterEqual(get_config().workers, 1)

    @override_settings(FREEHAAR={'ENUMERATION_LIMIT': 0})
    def test_invalid_settings(self):
        with self.assertRaises(ImproperlyConfigured):
            get_config()

    def test_invalid_overrides(self):
        with self.assertRaises(ValidationError):
            get_config(output_format='xml')
        with self.assertRaises(ValidationError):
            get_config(worker_count=0)
        with self.assertRaises(ValidationError):
            get_config(oracle_n_values=())
