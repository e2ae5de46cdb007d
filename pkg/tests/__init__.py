import os
import random

LABELS = ('DOC', 'ENTER', 'ORG', 'PRIV', 'RANG', 'HOST')

LETTERS = 'abcdefghijklmnopqrstuvwxyz'


def data_path(file):
    d = os.path.dirname(__file__)
    return '{}/data/{}'.format(d, file)


def keyword_corpus(n=200, keywords=5, fillers=20, per_question=(3, 3), seed=0, labels=LABELS):
    """
    Synthetic questions: every class owns ``keywords`` exclusive words and all
    classes share ``fillers`` filler words. Returns (texts, labels).
    """
    rng = random.Random(seed)
    own = {c: [c.lower() + LETTERS[i] for i in range(keywords)] for c in labels}
    shared = ['filler' + LETTERS[i // 26] + LETTERS[i % 26] for i in range(fillers)]
    texts, targets = [], []
    for i in range(n):
        label = labels[i % len(labels)]
        words = rng.sample(own[label], per_question[0]) + rng.sample(shared, per_question[1])
        rng.shuffle(words)
        texts.append(' '.join(words))
        targets.append(label)
    order = list(range(n))
    rng.shuffle(order)
    return [texts[i] for i in order], [targets[i] for i in order]


def write_corpus(path, texts, labels, sep='\t'):
    with open(path, 'w', encoding='utf-8') as fp:
        fp.write('text{}label\n'.format(sep))
        for text, label in zip(texts, labels):
            fp.write('{}{}{}\n'.format(text, sep, label))
