"""Staged evaluation (ablation) and word-frequency reporting.

The ablation reruns the whole corpus five times with cumulative
configurations, from bare lowercase lookup to the full pipeline with
type exploration, so the contribution of each stage is visible.  The
word-frequency report counts every word the full pipeline emitted,
which is the raw material for judging annotation relevance.

Parameters are counted per occurrence (a name appearing in three
operations counts three times); inputs and outputs are both enumerated.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, replace

from .explore import ExplorerConfig, annotate_description, annotate_parameter_with_trace
from .ingest import Corpus
from .lexicon import EMPTY_OVERRIDES, Lexicon, OverrideMap, associate
from .model import Concept, Word
from .preprocess import ALL_STAGES, PreprocessConfig, Stage

STAGE_NAMES = (
    "NoPreprocessing",
    "+Decomposition",
    "+Normalization",
    "+Filtering",
    "+TypeExplorer",
)

_COUNTING_NOTE = "parameters counted per occurrence; inputs and outputs both enumerated"


@dataclass(frozen=True)
class AblationRow:
    stage_name: str
    annotated: int
    total: int
    rate: float

    def __post_init__(self):
        if not 0 <= self.annotated <= self.total:
            raise ValueError("annotated must lie in [0, total]")


@dataclass(frozen=True)
class AblationReport:
    rows: tuple[AblationRow, ...]

    def __post_init__(self):
        if tuple(row.stage_name for row in self.rows) != STAGE_NAMES:
            raise ValueError(f"rows must be exactly {STAGE_NAMES}")
        if len({row.total for row in self.rows}) != 1:
            raise ValueError("all rows must share one total")


@dataclass(frozen=True)
class WordFrequencyRow:
    word: Word
    occurrences: int
    concept: Concept | None

    def __post_init__(self):
        if self.occurrences < 1:
            raise ValueError("occurrences must be >= 1")


def _rate(annotated: int, total: int) -> float:
    return annotated / total if total else 0.0


def stage_configurations(preprocess_config: PreprocessConfig,
                         explorer_config: ExplorerConfig):
    """The five cumulative (name, preprocess, explorer) configurations.

    The first four rows measure parameter-name processing only, so both
    type fallbacks are off; the last row switches on the type-name stage
    and the structural descent together.
    """
    no_types = replace(explorer_config,
                       type_explorer_enabled=False, type_name_stage_enabled=False)
    with_types = replace(explorer_config,
                         type_explorer_enabled=True, type_name_stage_enabled=True)
    return [
        (STAGE_NAMES[0], replace(preprocess_config, enabled_stages=frozenset()), no_types),
        (STAGE_NAMES[1],
         replace(preprocess_config, enabled_stages=frozenset({Stage.DECOMPOSE})), no_types),
        (STAGE_NAMES[2],
         replace(preprocess_config,
                 enabled_stages=frozenset({Stage.DECOMPOSE, Stage.NORMALIZE})), no_types),
        (STAGE_NAMES[3], replace(preprocess_config, enabled_stages=ALL_STAGES), no_types),
        (STAGE_NAMES[4], replace(preprocess_config, enabled_stages=ALL_STAGES), with_types),
    ]


def run_ablation(corpus: Corpus, preprocess_config: PreprocessConfig,
                 explorer_config: ExplorerConfig, lexicon: Lexicon,
                 overrides: OverrideMap = EMPTY_OVERRIDES) -> AblationReport:
    """Annotate the corpus once per cumulative configuration and count."""
    total = sum(1 for desc in corpus.descriptions for _ in desc.parameters())
    rows = []
    for name, pcfg, ecfg in stage_configurations(preprocess_config, explorer_config):
        annotated = 0
        for description in corpus.descriptions:
            for annotation in annotate_description(description, ecfg, pcfg,
                                                   lexicon, overrides):
                annotated += bool(annotation.entries)
        rows.append(AblationRow(name, annotated, total, _rate(annotated, total)))
    return AblationReport(tuple(rows))


def word_frequency(corpus: Corpus, preprocess_config: PreprocessConfig,
                   explorer_config: ExplorerConfig, lexicon: Lexicon,
                   overrides: OverrideMap = EMPTY_OVERRIDES) -> list[WordFrequencyRow]:
    """Count every word the full pipeline emitted while searching.

    Stages after a parameter's winning stage are never consulted, so
    their words do not count; a failed parameter contributes the words of
    its whole exhausted search.  Sorted by occurrences descending, ties
    by word ascending.
    """
    _, _, full_explorer = stage_configurations(preprocess_config, explorer_config)[-1]
    full_preprocess = replace(preprocess_config, enabled_stages=ALL_STAGES)
    counts: Counter[str] = Counter()
    for description in corpus.descriptions:
        for param in description.parameters():
            _, trace = annotate_parameter_with_trace(
                param, description, full_explorer, full_preprocess, lexicon, overrides)
            for visit in trace:
                for word in visit.words:
                    counts[word.text] += 1
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [
        WordFrequencyRow(Word(text), occurrences,
                         associate(Word(text), lexicon, overrides))
        for text, occurrences in ordered
    ]


def ablation_to_json(report: AblationReport) -> bytes:
    payload = {
        "counting": _COUNTING_NOTE,
        "rows": [
            {
                "stage": row.stage_name,
                "annotated": row.annotated,
                "total": row.total,
                "rate": row.rate,
            }
            for row in report.rows
        ],
    }
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def render_ablation_table(report: AblationReport) -> str:
    """Aligned plain-text table, one row per cumulative stage."""
    width = max(len("Added functionality"), *(len(r.stage_name) for r in report.rows))
    lines = [
        f"{'Added functionality':<{width}}  {'Annotated':>9}  {'Total':>5}  {'Rate':>7}",
    ]
    for row in report.rows:
        lines.append(
            f"{row.stage_name:<{width}}  {row.annotated:>9}  {row.total:>5}  "
            f"{row.rate * 100:>6.2f}%")
    lines.append(f"({_COUNTING_NOTE})")
    return "\n".join(lines) + "\n"


def word_frequency_to_csv(rows: list[WordFrequencyRow]) -> bytes:
    buffer = io.StringIO()
    out = csv.writer(buffer, lineterminator="\n")
    out.writerow(["word", "occurrences", "concept"])
    for row in rows:
        out.writerow([row.word.text, row.occurrences,
                      row.concept.id if row.concept else ""])
    return buffer.getvalue().encode("utf-8")
