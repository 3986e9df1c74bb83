"""Instantiation-based prover with GNN-guided enumeration."""

from ._core import (
    collect,
    eval_corpus,
    gen_needle_corpus,
    parse_file,
    parse_native,
    parse_tptp_cnf,
    score_problem,
    solve_file,
    train,
)

__all__ = [
    "collect",
    "eval_corpus",
    "gen_needle_corpus",
    "parse_file",
    "parse_native",
    "parse_tptp_cnf",
    "score_problem",
    "solve_file",
    "train",
]
