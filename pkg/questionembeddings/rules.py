import re
from abc import ABC
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

from .errors import InvalidRule, MalformedRow, MissingFile

TOKEN_RE = re.compile(r'[^\W_]+')

WILDCARD = '*'


@dataclass(frozen=True)
class SubstitutionRule:
    pattern: str
    replacement: str

    def __post_init__(self):
        if not self.pattern.strip(WILDCARD).strip():
            raise InvalidRule(
                pattern=self.pattern, replacement=self.replacement,
                reason='pattern has no literal part',
            )
        if not TOKEN_RE.fullmatch(self.replacement):
            raise InvalidRule(
                pattern=self.pattern, replacement=self.replacement,
                reason='replacement must be a single letter/digit token',
            )

    @property
    def regex(self):
        parts = (re.escape(p) for p in self.pattern.split(WILDCARD))
        body = r'[^\W_]*'.join(parts)
        # lookahead so overlapping occurrences are all reported
        return re.compile(r'(?=(?<![^\W_])(' + body + r')(?![^\W_]))', re.IGNORECASE)


class Substitution(ABC):
    """Single-pass rule table: longer patterns claim text before shorter ones."""

    @classmethod
    def transform(cls, text: str, rules: Sequence[SubstitutionRule]) -> str:
        if not rules:
            return text
        spans = cls._select(cls._candidates(text, rules))
        return cls._apply(text, spans)

    @classmethod
    def _candidates(cls, text, rules):
        ordered = sorted(enumerate(rules), key=lambda x: (-len(x[1].pattern), x[0]))
        for _, rule in ordered:
            for match in rule.regex.finditer(text):
                if match.end(1) > match.start(1):
                    yield match.start(1), match.end(1), rule.replacement

    @classmethod
    def _select(cls, candidates) -> List[Tuple[int, int, str]]:
        taken: List[Tuple[int, int, str]] = []
        for start, end, replacement in candidates:
            if all(end <= s or start >= e for s, e, _ in taken):
                taken.append((start, end, replacement))
        return sorted(taken)

    @classmethod
    def _apply(cls, text, spans):
        out, cursor = [], 0
        for start, end, replacement in spans:
            out.append(text[cursor:start])
            out.append(replacement)
            cursor = end
        out.append(text[cursor:])
        return ''.join(out)


def apply_substitution_rules(text: str, rules: Sequence[SubstitutionRule]) -> str:
    return Substitution.transform(text, rules)


def load_rules(path) -> List[SubstitutionRule]:
    """Read ``pattern<TAB>replacement`` lines; blank lines and ``#`` comments are skipped."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(path=str(path))
    rules = []
    with path.open('r', encoding='utf-8') as fp:
        for line_no, line in enumerate(fp, start=1):
            line = line.rstrip('\n').rstrip('\r')
            if not line.strip() or line.lstrip().startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) != 2:
                raise MalformedRow(
                    line=line_no, path=str(path),
                    reason=f'expected 2 tab-separated fields, saw {len(fields)}',
                )
            rules.append(SubstitutionRule(fields[0].strip(), fields[1].strip()))
    return rules
