import logging
from pathlib import Path
from typing import Dict, Mapping, Optional

import pandas as pd

from .config import Config
from .corpus import underrepresented_classes
from .evaluate import CVResult, EvalReport

logger = logging.getLogger(__name__)

AVERAGE = 'Average'
MACRO = 'Macro avg'

FOOTER = (
    'Average is the support-weighted mean of per-class F1; '
    'Macro avg is the unweighted mean.'
)

METRICS = ('precision', 'recall', 'f1', 'support')


def _grid(header, rows):
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = []
    for row in [header, *rows]:
        cells = [str(row[0]).ljust(widths[0])]
        cells += [str(c).rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append('  '.join(cells).rstrip())
    return '\n'.join(lines)


def render_comparison(results: Mapping[str, CVResult]) -> str:
    """Pooled F1 per class, one column per method."""
    methods = list(results)
    labels = [s.label for s in next(iter(results.values())).pooled.classes]
    rows = [[label] + [f'{results[m].pooled[label].f1:.2f}' for m in methods] for label in labels]
    rows.append([AVERAGE] + [f'{results[m].pooled.weighted_f1:.2f}' for m in methods])
    rows.append([MACRO] + [f'{results[m].pooled.macro_f1:.2f}' for m in methods])
    table = _grid(['F1-score', *methods], rows)

    dims = ', '.join(f'{m}={"/".join(str(d) for d in sorted(set(results[m].dims)))}' for m in methods)
    return f'{table}\n\n{FOOTER}\nDimensions: {dims}\n'


def render_report(report: EvalReport, title: str = '') -> str:
    rows = [
        [s.label, f'{s.precision:.2f}', f'{s.recall:.2f}', f'{s.f1:.2f}', s.support]
        for s in report.classes
    ]
    rows.append([AVERAGE, '', '', f'{report.weighted_f1:.2f}', report.total])
    rows.append([MACRO, '', '', f'{report.macro_f1:.2f}', report.total])
    table = _grid([title, *METRICS], rows)
    return table + '\n'


def render_distribution(distribution: Dict[str, int], ratio: float = 0.5) -> str:
    flagged = set(underrepresented_classes(distribution, ratio))
    rows = [[label, count, '*' if label in flagged else ''] for label, count in distribution.items()]
    text = _grid(['class', 'count', ''], rows)
    if flagged:
        text += f'\n* fewer than {ratio:g} x the mean class count'
    return text + '\n'


def report_frame(results: Mapping[str, CVResult]) -> pd.DataFrame:
    records = []
    for method, result in results.items():
        parts = [(str(i + 1), r) for i, r in enumerate(result.folds)] + [('pooled', result.pooled)]
        for fold, report in parts:
            for s in report.classes:
                for metric in METRICS:
                    records.append((method, fold, s.label, metric, float(getattr(s, metric))))
            records.append((method, fold, AVERAGE, 'f1', report.weighted_f1))
            records.append((method, fold, MACRO, 'f1', report.macro_f1))
    return pd.DataFrame.from_records(records, columns=['method', 'fold', 'class', 'metric', 'value'])


def write_report_tsv(path, results: Mapping[str, CVResult]):
    report_frame(results).to_csv(
        path, sep='\t', index=False, float_format='%.6f', lineterminator='\n', encoding='utf-8',
    )


class Report:
    """Writes evaluation results to the console and/or an output directory."""

    __slots__ = ('_config',)

    def __init__(self, config: Optional[Config] = None):
        self._config = config or Config.defaults()

    def write(self, results: Mapping[str, CVResult], distribution: Optional[Dict[str, int]] = None):
        text = self.render(results, distribution)
        if self._need_write_to_console():
            print(text)
        out = self._config.get('output.dir')
        if isinstance(out, str):
            out = Path(out)
            out.mkdir(parents=True, exist_ok=True)
            (out / 'report.txt').write_text(text, encoding='utf-8')
            write_report_tsv(out / 'report.tsv', results)
            logger.info('reports written to %s', out)
        return text

    @staticmethod
    def render(results, distribution=None):
        parts = []
        if distribution:
            parts.append(render_distribution(distribution))
        parts.append(render_comparison(results))
        for method, result in results.items():
            parts.append(render_report(result.pooled, method))
            parts.extend(f'warning: {w}\n' for w in result.warnings)
        return '\n'.join(parts)

    def _need_write_to_console(self):
        return self._config.get('output.console') is True
