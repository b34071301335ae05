"""Parallel corpus mining from academic repository pages.

Sentence pairs are plain dicts with the corpus JSONL fields (source_text,
target_text, source_lang, target_lang, score, domain, repository, html_id,
origin).
"""

from ._core import (
    BenchmarkShortfall,
    ConfigError,
    DataError,
    Error,
    apply_filters,
    bleu,
    build_benchmark,
    chrf2pp,
    classify_record,
    corpus_stats,
    deduplicate,
    embed,
    extract_record,
    identify_language,
    mine_pairs,
    run_stage,
    score,
    split_sentences,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkShortfall",
    "ConfigError",
    "DataError",
    "Error",
    "apply_filters",
    "bleu",
    "build_benchmark",
    "chrf2pp",
    "classify_record",
    "corpus_stats",
    "deduplicate",
    "embed",
    "extract_record",
    "identify_language",
    "mine_pairs",
    "run_stage",
    "score",
    "split_sentences",
]
