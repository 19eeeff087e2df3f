"""Multi-level similarity metrics (BLEU, STS, TRS, GRS, RUBY) for evaluating
machine-migrated source code against reference code."""

from ._rubyeval import (
    bleu,
    paired_t_test,
    parse_status,
    permute_candidate,
    ransac,
    sample_size,
    score_corpus,
    score_pair,
    spearman,
    sts,
    t_critical,
    tokenize,
)

__all__ = [
    "bleu",
    "paired_t_test",
    "parse_status",
    "permute_candidate",
    "ransac",
    "sample_size",
    "score_corpus",
    "score_pair",
    "spearman",
    "sts",
    "t_critical",
    "tokenize",
]
