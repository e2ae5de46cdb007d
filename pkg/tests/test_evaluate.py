import os
import random
import tempfile
import unittest

from questionembeddings.classify import Hyperparams, predict_batch, train_ovr_logreg
from questionembeddings.corpus import PLAIN, STRATIFIED, Corpus, class_distribution, split_folds
from questionembeddings.embed import embed_questions, fit_embedding
from questionembeddings.errors import LengthMismatch, UnknownLabel, ValueOutOfRange
from questionembeddings.evaluate import (
    ClassScore,
    EvalReport,
    classification_report,
    compare_methods,
    cross_validate,
    f1_score,
)
from questionembeddings.preprocess import PreprocessConfig, build_vocabulary, preprocess_corpus
from questionembeddings.report import (
    AVERAGE,
    FOOTER,
    MACRO,
    render_comparison,
    render_distribution,
    render_report,
    report_frame,
    write_report_tsv,
)

from . import LABELS, keyword_corpus

TABLE_F1 = dict(zip(LABELS, (0.77, 0.62, 0.73, 0.24, 0.74, 0.91)))
TABLE_SUPPORT = dict(zip(LABELS, (200, 250, 370, 80, 200, 200)))


def report_oracle(y_true, y_pred, label):
    tp = sum(1 for t, p in zip(y_true, y_pred) if t == label and p == label)
    predicted = sum(1 for p in y_pred if p == label)
    actual = sum(1 for t in y_true if t == label)
    precision = tp / predicted if predicted else 0.0
    recall = tp / actual if actual else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1, actual


class F1ScoreTestCase(unittest.TestCase):

    def test_examples(self):
        for p in (0.0, 0.1, 0.5, 0.93, 1.0):
            self.assertAlmostEqual(f1_score(p, p), p, places=12)
        self.assertAlmostEqual(f1_score(0.5, 1.0), 2 / 3, places=12)
        self.assertEqual(f1_score(0.0, 0.0), 0.0)

    def test_out_of_range(self):
        with self.assertRaises(ValueOutOfRange):
            f1_score(1.2, 0.5)
        with self.assertRaises(ValueOutOfRange):
            f1_score(0.5, -0.1)


class ClassificationReportTestCase(unittest.TestCase):

    def test_perfect(self):
        y = ['A', 'B', 'C', 'A']
        report = classification_report(y, y, ['A', 'B', 'C'])
        self.assertEqual([s.f1 for s in report.classes], [1.0, 1.0, 1.0])
        self.assertEqual((report.macro_f1, report.weighted_f1), (1.0, 1.0))

    def test_two_classes(self):
        report = classification_report(['A', 'A', 'B', 'B'], ['A', 'B', 'B', 'B'], ['A', 'B'])
        a, b = report['A'], report['B']
        self.assertEqual((a.precision, a.recall), (1.0, 0.5))
        self.assertAlmostEqual(a.f1, 0.667, places=3)
        self.assertAlmostEqual(b.precision, 0.667, places=3)
        self.assertEqual(b.recall, 1.0)
        self.assertAlmostEqual(b.f1, 0.8, places=12)
        self.assertAlmostEqual(report.macro_f1, 0.733, places=3)
        self.assertAlmostEqual(report.weighted_f1, 0.733, places=3)
        self.assertEqual(report.total, 4)

    def test_against_oracle(self):
        rng = random.Random(1)
        classes = list('ABCDEFGH')
        for _ in range(1000):
            n = rng.randint(1, 200)
            y_true = [rng.choice(classes) for _ in range(n)]
            y_pred = [rng.choice(classes) for _ in range(n)]
            report = classification_report(y_true, y_pred, classes)
            for score in report.classes:
                precision, recall, f1, support = report_oracle(y_true, y_pred, score.label)
                self.assertAlmostEqual(score.precision, precision, places=12)
                self.assertAlmostEqual(score.recall, recall, places=12)
                self.assertAlmostEqual(score.f1, f1, places=12)
                self.assertEqual(score.support, support)
                self.assertLessEqual(min(precision, recall) - 1e-12, score.f1)
                self.assertLessEqual(score.f1, max(precision, recall) + 1e-12)
            self.assertEqual(report.total, n)

    def test_table_average_is_support_weighted(self):
        scores = [ClassScore(c, 0.0, 0.0, TABLE_F1[c], TABLE_SUPPORT[c]) for c in LABELS]
        report = EvalReport.from_class_scores(scores)
        self.assertAlmostEqual(report.macro_f1, 0.668, delta=0.001)
        self.assertAlmostEqual(report.weighted_f1, 0.72, delta=0.01)
        self.assertAlmostEqual(report.weighted_f1, 0.7141, places=4)

    def test_errors(self):
        with self.assertRaises(LengthMismatch):
            classification_report(['A'], ['A', 'B'], ['A', 'B'])
        with self.assertRaises(UnknownLabel):
            classification_report(['A'], ['Z'], ['A', 'B'])
        with self.assertRaises(KeyError):
            classification_report(['A'], ['A'], ['A'])['B']


class CrossValidateTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        texts, labels = keyword_corpus()
        cls.corpus = Corpus.from_records(texts, labels)
        cls.config = PreprocessConfig()

    def test_keyword_corpus(self):
        result = cross_validate(self.corpus, self.config, 'entropy', dim=20, k=5)
        self.assertEqual(len(result.folds), 5)
        self.assertEqual(result.dims, (20,) * 5)
        self.assertEqual(result.pooled.total, 200)
        self.assertGreaterEqual(result.pooled.weighted_f1, 0.9)
        self.assertEqual(result.fingerprint['method'], 'entropy')

    def test_permuted_labels_are_near_chance(self):
        labels = self.corpus.targets
        random.Random(8).shuffle(labels)
        corpus = Corpus.from_records(self.corpus.texts, labels)
        result = cross_validate(corpus, self.config, 'entropy', dim=20, k=5)
        self.assertLessEqual(result.pooled.weighted_f1, 0.30)

    def test_row_order_stability(self):
        order = list(range(len(self.corpus)))
        random.Random(6).shuffle(order)
        permuted = Corpus.from_records(
            [self.corpus.texts[i] for i in order], [self.corpus.targets[i] for i in order],
        )
        a = cross_validate(self.corpus, self.config, 'entropy', dim=20, k=5)
        b = cross_validate(permuted, self.config, 'entropy', dim=20, k=5)
        self.assertLess(abs(a.pooled.weighted_f1 - b.pooled.weighted_f1), 0.05)

    def test_deterministic_and_parallel(self):
        a = cross_validate(self.corpus, self.config, 'tfidf', k=4, seed=3)
        b = cross_validate(self.corpus, self.config, 'tfidf', k=4, seed=3, workers=4)
        self.assertEqual(a.predictions, b.predictions)
        self.assertEqual(a.pooled, b.pooled)

    def test_stratified(self):
        result = cross_validate(self.corpus, self.config, 'tfidf', k=5, strategy=STRATIFIED)
        self.assertEqual(result.fingerprint['strategy'], STRATIFIED)
        self.assertEqual(result.pooled.total, 200)

    def test_leave_one_out_matches_manual_loop(self):
        texts, labels = keyword_corpus(n=10, labels=('A', 'B'))
        corpus = Corpus.from_records(texts, labels)
        result = cross_validate(corpus, self.config, 'entropy', dim=3, k=10, seed=42)

        token_lists = preprocess_corpus(corpus.texts, self.config)
        plan = split_folds(10, corpus.targets, 10, 42, PLAIN)
        expected = [None] * 10
        for fold in range(10):
            train = plan.train_indices(fold)
            tokens = [token_lists[i] for i in train]
            model = fit_embedding('entropy', tokens, build_vocabulary(tokens), 3, seed=42 + fold)
            X, _ = embed_questions(model, tokens)
            classifier = train_ovr_logreg(
                X, [labels[i] for i in train], Hyperparams(seed=42 + fold), classes=corpus.labels,
            )
            [test] = plan.test_indices(fold)
            X_test, _ = embed_questions(model, [token_lists[test]])
            expected[test] = predict_batch(classifier, X_test)[0][0]
        self.assertEqual(result.predictions, tuple(expected))

    def test_missing_class_in_training_part(self):
        texts, labels = keyword_corpus(n=40, labels=('A', 'B'))
        corpus = Corpus.from_records(texts + ['ca cb cc'], labels + ['C'])
        result = cross_validate(corpus, self.config, 'tfidf', k=5)
        self.assertEqual(len(result.warnings), 1)
        self.assertIn('C', result.warnings[0])
        self.assertEqual(result.pooled['C'].recall, 0.0)

    def test_compare_methods(self):
        results = compare_methods(self.corpus, self.config, ['entropy', 'tfidf'], dim=10, k=3)
        self.assertEqual(list(results), ['entropy', 'tfidf'])
        self.assertEqual(results['entropy'].dims, (10, 10, 10))
        self.assertTrue(all(d > 10 for d in results['tfidf'].dims))
        single = cross_validate(self.corpus, self.config, 'tfidf', dim=10, k=3)
        self.assertEqual(results['tfidf'].predictions, single.predictions)


class ReportTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        texts, labels = keyword_corpus(n=60)
        cls.corpus = Corpus.from_records(texts, labels)
        cls.results = compare_methods(
            cls.corpus, PreprocessConfig(), ['entropy', 'tfidf'], dim=5, k=3,
        )

    def test_render_comparison(self):
        text = render_comparison(self.results)
        lines = text.splitlines()
        self.assertEqual(lines[0].split(), ['F1-score', 'entropy', 'tfidf'])
        self.assertEqual([line.split()[0] for line in lines[1:7]], list(self.corpus.labels))
        self.assertTrue(lines[7].startswith(AVERAGE))
        self.assertTrue(lines[8].startswith(MACRO))
        self.assertIn(FOOTER, text)
        self.assertIn('entropy=5', text)

    def test_render_report(self):
        text = render_report(self.results['entropy'].pooled, 'entropy')
        self.assertIn('precision', text.splitlines()[0])
        self.assertEqual(len(text.splitlines()), 1 + 6 + 2)

    def test_render_distribution(self):
        text = render_distribution({'ORG': 100, 'PRIV': 10, 'DOC': 60})
        self.assertIn('PRIV', text)
        flagged = [line for line in text.splitlines() if line.rstrip().endswith('*')]
        self.assertEqual(len(flagged), 1)
        self.assertTrue(flagged[0].startswith('PRIV'))
        self.assertIn('ORG', render_distribution(class_distribution(self.corpus)))

    def test_report_frame(self):
        frame = report_frame(self.results)
        self.assertEqual(list(frame.columns), ['method', 'fold', 'class', 'metric', 'value'])
        self.assertEqual(set(frame['fold']), {'1', '2', '3', 'pooled'})
        pooled = frame[(frame['method'] == 'tfidf') & (frame['fold'] == 'pooled')
                       & (frame['class'] == AVERAGE)]
        self.assertAlmostEqual(pooled['value'].iloc[0], self.results['tfidf'].pooled.weighted_f1)

    def test_tsv_is_stable(self):
        with tempfile.TemporaryDirectory() as tmp:
            a, b = os.path.join(tmp, 'a.tsv'), os.path.join(tmp, 'b.tsv')
            write_report_tsv(a, self.results)
            write_report_tsv(b, self.results)
            with open(a, 'rb') as fa, open(b, 'rb') as fb:
                content = fa.read()
                self.assertEqual(content, fb.read())
            self.assertTrue(content.startswith(b'method\tfold\tclass\tmetric\tvalue\n'))


if __name__ == '__main__':
    unittest.main()
