"""Batch command line: annotate, ablate, wordfreq.

Exit codes: 0 full success, 1 partial (some inputs skipped), 2 fatal
(bad flags, unreadable config or lexicon, nothing parseable).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .explore import ExplorerConfig, annotate_description
from .ingest import Corpus, EmptyCorpus, load_corpus
from .lexicon import (
    EMPTY_OVERRIDES,
    LexiconError,
    load_lexicon,
    load_overrides,
)
from .metrics import (
    ablation_to_json,
    render_ablation_table,
    run_ablation,
    word_frequency,
    word_frequency_to_csv,
)
from .preprocess import (
    ALL_STAGES,
    ConfigError,
    PreprocessConfig,
    Stage,
    parse_abbreviations,
    parse_stop_words,
    _data_text,
)
from .writer import WriterConfig, write_report, write_sawsdl

_STAGE_TOKENS = {
    "decompose": Stage.DECOMPOSE,
    "normalize": Stage.NORMALIZE,
    "filter": Stage.FILTER,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semwsdl",
        description="Batch semantic annotator for WSDL files (SAWSDL output).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input-paths", "--input", dest="input_paths", nargs="+",
                        required=True, metavar="PATH",
                        help="WSDL/XSD files or directories containing them")
    common.add_argument("--output-dir", "--out", dest="output_dir", required=True,
                        help="directory for generated files (created if missing)")
    common.add_argument("--lexicon-path", "--lexicon", dest="lexicon_path",
                        required=True, help="ranked lexicon TSV file")
    common.add_argument("--abbreviations-path", dest="abbreviations_path",
                        help="abbreviation file (default: packaged list)")
    common.add_argument("--stopwords-path", dest="stopwords_path",
                        help="stop-word file (default: packaged list)")
    common.add_argument("--overrides-path", dest="overrides_path",
                        help="word=Concept override file (default: none)")
    common.add_argument("--uri-prefix", dest="uri_prefix",
                        default="http://www.ontologyportal.org/SUMO.owl#",
                        help="prefix for concept URIs in modelReference values")
    common.add_argument("--max-depth", dest="max_depth", type=int, default=8,
                        help="maximum exploration depth (default 8)")
    common.add_argument("--jobs", dest="jobs", type=int, default=1,
                        help="parallel workers; output is identical for any value")
    common.add_argument("--stages", dest="stages",
                        help="comma list of decompose,normalize,filter,explore "
                             "or 'none' (default: all)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("annotate", parents=[common],
                          help="write .sawsdl.wsdl copies plus report.json")
    subparsers.add_parser("ablate", parents=[common],
                          help="run the five-stage evaluation, write ablation.json")
    subparsers.add_parser("wordfreq", parents=[common],
                          help="count emitted words, write words.csv")
    return parser


def _parse_stages(text: str | None) -> tuple[frozenset[Stage], bool]:
    if text is None:
        return ALL_STAGES, True
    if text.strip().lower() == "none":
        return frozenset(), False
    stages = set()
    explore = False
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token == "explore":
            explore = True
        elif token in _STAGE_TOKENS:
            stages.add(_STAGE_TOKENS[token])
        else:
            raise ConfigError(f"unknown stage {token!r}; expected "
                              "decompose, normalize, filter, explore, or none")
    return frozenset(stages), explore


def _gather_inputs(paths: list[str]) -> list[str]:
    """Expand directories (non-recursive *.wsdl + *.xsd, sorted) in flag order."""
    files: list[str] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            found = sorted(
                str(child) for child in path.iterdir()
                if child.is_file() and child.suffix in (".wsdl", ".xsd"))
            files.extend(found)
        else:
            files.append(raw)
    seen = set()
    unique = []
    for name in files:
        if name not in seen:
            seen.add(name)
            unique.append(name)
    return unique


def _build_setup(args):
    stage_set, explore = _parse_stages(args.stages)
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    if args.abbreviations_path:
        abbreviations = parse_abbreviations(
            Path(args.abbreviations_path).read_text("utf-8"), args.abbreviations_path)
    else:
        abbreviations = parse_abbreviations(_data_text("abbreviations.txt"),
                                            "abbreviations.txt")
    if args.stopwords_path:
        stop_words = parse_stop_words(
            Path(args.stopwords_path).read_text("utf-8"), args.stopwords_path)
    else:
        stop_words = parse_stop_words(_data_text("stopwords.txt"), "stopwords.txt")
    preprocess_config = PreprocessConfig(abbreviations, stop_words, stage_set)
    explorer_config = ExplorerConfig(max_depth=args.max_depth,
                                     type_explorer_enabled=explore,
                                     type_name_stage_enabled=explore)
    lexicon = load_lexicon(Path(args.lexicon_path).read_bytes(),
                           source=args.lexicon_path)
    if args.overrides_path:
        overrides = load_overrides(Path(args.overrides_path).read_text("utf-8"),
                                   source=args.overrides_path)
    else:
        overrides = EMPTY_OVERRIDES
    writer_config = WriterConfig(uri_prefix=args.uri_prefix)
    return preprocess_config, explorer_config, lexicon, overrides, writer_config


def _load_inputs(args) -> Corpus:
    corpus = load_corpus(_gather_inputs(args.input_paths))
    for skip in corpus.skipped:
        print(f"skipped {skip.path}: {skip.error}", file=sys.stderr)
    for description in corpus.descriptions:
        for warning in description.warnings:
            print(f"{description.source_id}: {warning}", file=sys.stderr)
    return corpus


def _output_names(source_ids: list[str]) -> dict[str, str]:
    """Map source ids to distinct output file names."""
    names: dict[str, str] = {}
    taken: set[str] = set()
    for source_id in source_ids:
        stem = Path(source_id).stem or "output"
        candidate = f"{stem}.sawsdl.wsdl"
        counter = 1
        while candidate in taken:
            counter += 1
            candidate = f"{stem}-{counter}.sawsdl.wsdl"
        taken.add(candidate)
        names[source_id] = candidate
    return names


def _run_annotate(args, corpus: Corpus, setup) -> int:
    preprocess_config, explorer_config, lexicon, overrides, writer_config = setup

    def annotate_one(description):
        annotations = annotate_description(description, explorer_config,
                                           preprocess_config, lexicon, overrides)
        output = write_sawsdl(corpus.raw_documents[description.source_id],
                              description, annotations, writer_config)
        return annotations, output

    if args.jobs == 1:
        results = [annotate_one(description) for description in corpus.descriptions]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(annotate_one, corpus.descriptions))
    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    names = _output_names([d.source_id for d in corpus.descriptions])
    all_annotations = []
    for description, (annotations, output) in zip(corpus.descriptions, results):
        (output_dir / names[description.source_id]).write_bytes(output)
        all_annotations.extend(annotations)
    report = write_report(all_annotations, corpus.descriptions,
                          corpus.skipped, writer_config)
    (output_dir / "report.json").write_bytes(report)
    annotated = sum(1 for a in all_annotations if a.entries)
    print(f"annotated {annotated}/{len(all_annotations)} parameters across "
          f"{len(corpus.descriptions)} files", file=sys.stderr)
    return 1 if corpus.skipped else 0


def _run_ablate(args, corpus: Corpus, setup) -> int:
    preprocess_config, explorer_config, lexicon, overrides, _ = setup
    report = run_ablation(corpus, preprocess_config, explorer_config,
                          lexicon, overrides)
    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / "ablation.json").write_bytes(ablation_to_json(report))
    sys.stdout.write(render_ablation_table(report))
    return 1 if corpus.skipped else 0


def _run_wordfreq(args, corpus: Corpus, setup) -> int:
    preprocess_config, explorer_config, lexicon, overrides, _ = setup
    rows = word_frequency(corpus, preprocess_config, explorer_config,
                          lexicon, overrides)
    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / "words.csv").write_bytes(word_frequency_to_csv(rows))
    print(f"counted {len(rows)} distinct words", file=sys.stderr)
    return 1 if corpus.skipped else 0


_COMMANDS = {
    "annotate": _run_annotate,
    "ablate": _run_ablate,
    "wordfreq": _run_wordfreq,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else 2
    try:
        setup = _build_setup(args)
    except (OSError, ConfigError, LexiconError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        corpus = _load_inputs(args)
    except EmptyCorpus as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args, corpus, setup)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
