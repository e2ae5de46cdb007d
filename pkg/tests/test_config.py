import json
import os
import tempfile
import unittest

from questionembeddings.config import DEFAULT_CONFIG, Config
from questionembeddings.errors import ConfigFileError, MissingFile


class ConfigTestCase(unittest.TestCase):

    def setUp(self):
        self.config = Config({
            'embedding': {
                'method': 'entropy',
                'dim': 200,
            },
            'compare': ['tfidf'],
            'seed': 42,
        })

    def test_get_method(self):
        self.assertEqual(self.config.get('embedding.dim'), 200)
        self.assertEqual(self.config.get('compare'), ['tfidf'])
        self.assertEqual(self.config.get('seed'), 42)
        self.assertEqual(self.config.get('embedding.window', 2), 2)
        self.assertEqual(self.config.get('seed.value', 'x'), 'x')

    def test_merge_method(self):
        self.config.merge({'seed': 7})
        self.assertEqual(self.config.get('seed'), 7)

    def test_deep_merge(self):
        self.config.merge({'embedding': {'dim': 20}})
        self.assertEqual(self.config.get('embedding.dim'), 20)
        self.assertEqual(self.config.get('embedding.method'), 'entropy')

    def test_defaults_are_copied(self):
        Config.defaults().merge({'embedding': {'dim': 3}})
        self.assertEqual(DEFAULT_CONFIG['embedding']['dim'], 200)
        self.assertEqual(Config.defaults().get('folds.k'), 5)


class ConfigFileTestCase(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmp.name, 'config.json')

    def tearDown(self):
        self.tmp.cleanup()

    def test_overrides_defaults(self):
        with open(self.path, 'w') as fp:
            json.dump({'folds': {'k': 10}}, fp)
        config = Config.from_file(self.path)
        self.assertEqual(config.get('folds.k'), 10)
        self.assertEqual(config.get('folds.seed'), 42)

    def test_invalid_json(self):
        with open(self.path, 'w') as fp:
            fp.write('[1, 2')
        with self.assertRaises(ConfigFileError):
            Config.from_file(self.path)

    def test_not_an_object(self):
        with open(self.path, 'w') as fp:
            fp.write('[1, 2]')
        with self.assertRaises(ConfigFileError):
            Config.from_file(self.path)

    def test_missing(self):
        with self.assertRaises(MissingFile):
            Config.from_file(self.path)


if __name__ == '__main__':
    unittest.main()
