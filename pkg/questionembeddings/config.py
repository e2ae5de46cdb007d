import copy
import json
from pathlib import Path

from .errors import ConfigFileError, MissingFile

DEFAULT_CONFIG = {
    'data': {
        'path': None,
        'format': 'tsv',
    },
    'preprocess': {
        'stopwords': None,
        'custom_stopwords': None,
        'rules': None,
        'keep_digits': False,
        'script': None,
        'normalizer': 'lower',
    },
    'embedding': {
        'method': 'entropy',
        'dim': 200,
        'window': 2,
        'fill': -0.0001,
        'averaging': 'set',
        'vectors': None,
    },
    'folds': {
        'k': 5,
        'seed': 42,
        'stratified': False,
        'workers': 1,
    },
    'classifier': {
        'l2': 1e-4,
        'lr': 0.1,
        'max_epochs': 1000,
        'tol': 1e-6,
    },
    'output': {
        'dir': 'reports',
        'console': True,
    },
    'compare': [],
}


class Config:
    def __init__(self, config: dict):
        self.config = config

    def get(self, path, default=None):
        value = self.config
        for key in path.split('.'):
            try:
                value = value.get(key, {})
            except AttributeError:
                return default
        if value == {} and default is not None:
            return default
        return value

    def merge(self, config):
        _deep_merge(self.config, config)
        return self

    @classmethod
    def defaults(cls):
        return cls(copy.deepcopy(DEFAULT_CONFIG))

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        if not path.exists():
            raise MissingFile(path=str(path))
        with path.open('r', encoding='utf-8') as fp:
            try:
                overrides = json.load(fp)
            except json.JSONDecodeError as e:
                raise ConfigFileError(path=str(path), reason=str(e)) from e
        if not isinstance(overrides, dict):
            raise ConfigFileError(path=str(path), reason='top level is not an object')
        return cls.defaults().merge(overrides)


def _deep_merge(target, source):
    for key, value in source.items():
        if isinstance(value, dict) and isinstance(target.get(key), dict):
            _deep_merge(target[key], value)
        else:
            target[key] = value
    return target
