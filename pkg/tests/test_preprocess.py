import itertools
import os
import random
import re
import tempfile
import unittest

from questionembeddings.errors import EmptyVocabulary, InvalidOption, InvalidRule
from questionembeddings.preprocess import (
    PreprocessConfig,
    build_vocabulary,
    load_preprocess_config,
    load_stopwords,
    preprocess_question,
    register_normalizer,
    save_preprocess_config,
    tokenize,
)
from questionembeddings.rules import (
    SubstitutionRule,
    apply_substitution_rules,
    load_rules,
)

from . import data_path


def rule_oracle(text, rules):
    """Enumerate every match of every rule, then let longer patterns claim first."""
    candidates = []
    for order, rule in enumerate(rules):
        literal = rule.pattern.lower()
        for start in range(len(text)):
            if text.lower().startswith(literal, start):
                end = start + len(literal)
                before = text[start - 1] if start else ' '
                after = text[end] if end < len(text) else ' '
                if not before.isalnum() and not after.isalnum():
                    candidates.append((-len(rule.pattern), order, start, end, rule.replacement))
    taken = []
    for _, _, start, end, replacement in sorted(candidates, key=lambda c: (c[0], c[1], c[2])):
        if all(end <= s or start >= e for s, e, _ in taken):
            taken.append((start, end, replacement))
    out, cursor = '', 0
    for start, end, replacement in sorted(taken):
        out += text[cursor:start] + replacement
        cursor = end
    return out + text[cursor:]


class SubstitutionTestCase(unittest.TestCase):

    def test_empty_rule_set(self):
        self.assertEqual(apply_substitution_rules('open doors day', []), 'open doors day')

    def test_single_literal(self):
        rules = [SubstitutionRule('saturday', 'WEEKDAY')]
        self.assertEqual(apply_substitution_rules('submit on saturday', rules), 'submit on WEEKDAY')

    def test_longest_pattern_wins(self):
        rules = [SubstitutionRule('doors', 'DOORS'), SubstitutionRule('open doors day', 'OPENDAY')]
        self.assertEqual(apply_substitution_rules('when is open doors day', rules), 'when is OPENDAY')

    def test_single_pass(self):
        rules = [SubstitutionRule('a', 'b'), SubstitutionRule('b', 'c')]
        self.assertEqual(apply_substitution_rules('a b', rules), 'b c')

    def test_whole_words_only(self):
        rules = [SubstitutionRule('day', 'DAY')]
        self.assertEqual(apply_substitution_rules('sunday day', rules), 'sunday DAY')

    def test_wildcard(self):
        rules = [SubstitutionRule('hostel*', 'HOSTEL')]
        self.assertEqual(apply_substitution_rules('hostels and hostel', rules), 'HOSTEL and HOSTEL')

    def test_replacement_must_be_token(self):
        with self.assertRaises(InvalidRule):
            SubstitutionRule('open day', 'OPEN DAY')

    def test_against_oracle(self):
        rng = random.Random(3)
        vocabulary = ['open', 'doors', 'day', 'submit', 'on', 'saturday']
        phrases = [' '.join(p) for n in (1, 2, 3) for p in itertools.permutations(vocabulary[:4], n)]
        for _ in range(200):
            patterns = rng.sample(phrases, rng.randint(1, 6))
            rules = [SubstitutionRule(p, 'R{}'.format(i)) for i, p in enumerate(patterns)]
            text = ' '.join(rng.choice(vocabulary) for _ in range(rng.randint(0, 10)))
            self.assertEqual(apply_substitution_rules(text, rules), rule_oracle(text, rules))

    def test_load_rules(self):
        rules = load_rules(data_path('rules.tsv'))
        self.assertEqual(rules[0], SubstitutionRule('saturday', 'WEEKDAY'))
        self.assertEqual(len(rules), 4)


class TokenizeTestCase(unittest.TestCase):

    def test_punctuation(self):
        self.assertEqual(tokenize('Hello, world!'), ['Hello', 'world'])

    def test_empty(self):
        self.assertEqual(tokenize(''), [])

    def test_cyrillic_and_digits(self):
        self.assertEqual(tokenize('можно ли 123'), ['можно', 'ли', '123'])

    def test_against_character_classes(self):
        rng = random.Random(11)
        alphabet = 'abcXYZжЖё019 ,.!?-_\t\n'
        for _ in range(300):
            text = ''.join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
            expected, current = [], ''
            for ch in text:
                if ch.isalnum():
                    current += ch
                elif current:
                    expected.append(current)
                    current = ''
            if current:
                expected.append(current)
            self.assertEqual(tokenize(text), expected)


class PreprocessQuestionTestCase(unittest.TestCase):

    def test_only_stopwords(self):
        config = PreprocessConfig(stopwords={'is', 'the', 'a'})
        self.assertEqual(preprocess_question('Is the a', config), [])

    def test_digits_and_foreign_script(self):
        config = PreprocessConfig(drop_foreign_script_tokens=True, script='cyrillic')
        self.assertEqual(
            preprocess_question('подать 123 abc документы', config),
            ['подать', 'документы'],
        )

    def test_identity_config(self):
        text = 'When is Open Doors day 2024?'
        self.assertEqual(
            preprocess_question(text, PreprocessConfig.identity()),
            [t.lower() for t in tokenize(text)],
        )

    def test_custom_stopwords_checked_lowercase(self):
        config = PreprocessConfig(custom_stopwords={'Hostel'})
        self.assertEqual(preprocess_question('HOSTEL price', config), ['price'])

    def test_rules_then_filters(self):
        config = PreprocessConfig(
            rules=tuple(load_rules(data_path('rules.tsv'))),
            stopwords=load_stopwords(data_path('stopwords.txt')),
        )
        self.assertEqual(
            preprocess_question('Is it possible to submit documents on Saturday?', config),
            ['possible', 'submit', 'documents', 'weekday'],
        )

    def test_idempotent(self):
        config = PreprocessConfig(
            rules=tuple(load_rules(data_path('rules.tsv'))),
            stopwords=load_stopwords(data_path('stopwords.txt')),
        )
        with open(data_path('questions.tsv'), encoding='utf-8') as fp:
            texts = [line.split('\t')[0] for line in fp.read().splitlines()[1:]]
        for text in texts:
            once = preprocess_question(text, config)
            self.assertEqual(preprocess_question(' '.join(once), config), once)
            for token in once:
                self.assertFalse(any(ch.isspace() or ch.isdigit() for ch in token))

    def test_idempotent_when_lowercasing_adds_marks(self):
        config = PreprocessConfig()
        once = preprocess_question('İstanbul hostel', config)
        self.assertEqual(once, ['i', 'stanbul', 'hostel'])
        self.assertEqual(preprocess_question(' '.join(once), config), once)

    def test_unknown_script(self):
        with self.assertRaises(InvalidOption):
            PreprocessConfig(drop_foreign_script_tokens=True, script='cyrilic')
        self.assertEqual(PreprocessConfig(script='Cyrillic').script, 'Cyrillic')

    def test_pluggable_normalizer(self):
        @register_normalizer('strip-s')
        def strip_s(token):
            return re.sub('s$', '', token.lower())

        config = PreprocessConfig(normalizer='strip-s')
        self.assertEqual(preprocess_question('Hostels documents', config), ['hostel', 'document'])

    def test_unknown_normalizer(self):
        with self.assertRaises(InvalidOption):
            PreprocessConfig(normalizer='stemmer-that-does-not-exist')

    def test_config_round_trip(self):
        config = PreprocessConfig(
            rules=tuple(load_rules(data_path('rules.tsv'))),
            stopwords={'The', 'и'},
            custom_stopwords={'hostel'},
            drop_foreign_script_tokens=True,
            script='cyrillic',
        )
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'preprocess.json')
            save_preprocess_config(path, config)
            self.assertEqual(load_preprocess_config(path), config)
        self.assertIn('the', config.stopwords)

    def test_stopword_file_comments(self):
        words = load_stopwords(data_path('stopwords.txt'))
        self.assertIn('i', words)
        self.assertNotIn('# english function words', words)


class VocabularyTestCase(unittest.TestCase):

    def test_union_sorted(self):
        vocab = build_vocabulary([['a', 'b'], ['b', 'c']])
        self.assertEqual(vocab.index, {'a': 0, 'b': 1, 'c': 2})

    def test_dedup(self):
        self.assertEqual(build_vocabulary([['a', 'a', 'a']]).index, {'a': 0})

    def test_all_empty(self):
        with self.assertRaises(EmptyVocabulary):
            build_vocabulary([[], []])

    def test_bijection(self):
        vocab = build_vocabulary([['ж', 'b', 'A'], ['é', 'z']])
        self.assertEqual(list(vocab.words), sorted(vocab.words))
        for i in range(len(vocab)):
            self.assertEqual(vocab.index[vocab.word(i)], i)


if __name__ == '__main__':
    unittest.main()
