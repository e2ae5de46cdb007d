"""
Question text preprocessing: rule substitution, tokenization, token filters
and a pluggable normalizer, plus the vocabulary built from the result.
"""

import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    CorruptModel,
    DuplicateWord,
    EmptyVocabulary,
    InvalidOption,
    MissingFile,
)
from .rules import TOKEN_RE, SubstitutionRule, apply_substitution_rules

NORMALIZERS: Dict[str, Callable[[str], str]] = {}


def register_normalizer(name):
    def decorator(fn):
        NORMALIZERS[name] = fn
        return fn
    return decorator


@register_normalizer('lower')
def lower(token):
    return token.lower()


@register_normalizer('casefold')
def casefold(token):
    return token.casefold()


@register_normalizer('identity')
def identity(token):
    return token


def get_normalizer(name):
    try:
        return NORMALIZERS[name]
    except KeyError:
        raise InvalidOption(
            option='normalizer', value=name,
            reason=f'expected one of {sorted(NORMALIZERS)}',
        ) from None


# unicodedata name prefixes accepted as --script values
SCRIPTS = frozenset({
    'arabic', 'armenian', 'bengali', 'cjk', 'cyrillic', 'devanagari', 'georgian',
    'greek', 'hangul', 'hebrew', 'hiragana', 'katakana', 'latin', 'thai',
})


def _lowered(words: Iterable[str]) -> FrozenSet[str]:
    return frozenset(w.lower() for w in words)


@dataclass(frozen=True)
class PreprocessConfig:
    rules: Tuple[SubstitutionRule, ...] = ()
    stopwords: FrozenSet[str] = frozenset()
    custom_stopwords: FrozenSet[str] = frozenset()
    drop_digit_tokens: bool = True
    drop_foreign_script_tokens: bool = False
    script: Optional[str] = None
    normalizer: str = 'lower'

    def __post_init__(self):
        object.__setattr__(self, 'rules', tuple(self.rules))
        object.__setattr__(self, 'stopwords', _lowered(self.stopwords))
        object.__setattr__(self, 'custom_stopwords', _lowered(self.custom_stopwords))
        get_normalizer(self.normalizer)
        if self.drop_foreign_script_tokens and not self.script:
            raise InvalidOption(
                option='script', value=self.script,
                reason='a script name is required to drop foreign-script tokens',
            )
        if self.script is not None and self.script.lower() not in SCRIPTS:
            raise InvalidOption(
                option='script', value=self.script, reason=f'expected one of {sorted(SCRIPTS)}',
            )

    @classmethod
    def identity(cls):
        return cls(drop_digit_tokens=False)

    def to_dict(self):
        return {
            'rules': [[r.pattern, r.replacement] for r in self.rules],
            'stopwords': sorted(self.stopwords),
            'custom_stopwords': sorted(self.custom_stopwords),
            'drop_digit_tokens': self.drop_digit_tokens,
            'drop_foreign_script_tokens': self.drop_foreign_script_tokens,
            'script': self.script,
            'normalizer': self.normalizer,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            rules=tuple(SubstitutionRule(p, r) for p, r in d.get('rules', [])),
            stopwords=frozenset(d.get('stopwords', [])),
            custom_stopwords=frozenset(d.get('custom_stopwords', [])),
            drop_digit_tokens=bool(d.get('drop_digit_tokens', True)),
            drop_foreign_script_tokens=bool(d.get('drop_foreign_script_tokens', False)),
            script=d.get('script'),
            normalizer=d.get('normalizer', 'lower'),
        )


def save_preprocess_config(path, config: PreprocessConfig):
    with Path(path).open('w', encoding='utf-8') as fp:
        json.dump(config.to_dict(), fp, ensure_ascii=False, indent=4)


def load_preprocess_config(path) -> PreprocessConfig:
    path = Path(path)
    if not path.exists():
        raise MissingFile(path=str(path))
    with path.open('r', encoding='utf-8') as fp:
        try:
            return PreprocessConfig.from_dict(json.load(fp))
        except (json.JSONDecodeError, AttributeError, TypeError, ValueError) as e:
            raise CorruptModel(path=str(path), reason=str(e)) from e


def load_stopwords(path) -> FrozenSet[str]:
    """One token per line; text after ``#`` is a comment."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(path=str(path))
    words = set()
    with path.open('r', encoding='utf-8') as fp:
        for line in fp:
            word = line.split('#', 1)[0].strip()
            if word:
                words.add(word.lower())
    return frozenset(words)


def tokenize(text: str) -> List[str]:
    return TOKEN_RE.findall(text)


def _is_foreign(token, script):
    prefix = script.upper()
    for ch in token:
        if ch.isalpha() and not unicodedata.name(ch, '').startswith(prefix):
            return True
    return False


def _keep(word, config: PreprocessConfig):
    key = word.lower()
    if key in config.stopwords or key in config.custom_stopwords:
        return False
    if config.drop_digit_tokens and any(ch.isdigit() for ch in word):
        return False
    if config.drop_foreign_script_tokens and _is_foreign(word, config.script):
        return False
    return True


def preprocess_question(text: str, config: PreprocessConfig) -> List[str]:
    normalize = get_normalizer(config.normalizer)
    tokens = []
    for token in tokenize(apply_substitution_rules(text, config.rules)):
        # normalizing may introduce non-word characters (e.g. a combining dot)
        for word in tokenize(normalize(token)):
            if _keep(word, config):
                tokens.append(word)
    return tokens


def preprocess_corpus(texts: Sequence[str], config: PreprocessConfig) -> List[List[str]]:
    return [preprocess_question(t, config) for t in texts]


@dataclass(frozen=True)
class Vocabulary:
    words: Tuple[str, ...]
    index: Dict[str, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'words', tuple(self.words))
        index = {}
        for i, w in enumerate(self.words):
            if w in index:
                raise DuplicateWord(word=w, line=i + 1, path='<vocabulary>')
            index[w] = i
        object.__setattr__(self, 'index', index)

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.index

    def word(self, i):
        return self.words[i]


def build_vocabulary(token_lists: Iterable[Sequence[str]]) -> Vocabulary:
    distinct = set()
    for tokens in token_lists:
        distinct.update(tokens)
    if not distinct:
        raise EmptyVocabulary()
    return Vocabulary(tuple(sorted(distinct)))
