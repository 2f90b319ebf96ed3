"""Core Logic proof search with baseline and Q-learning strategies."""

from ._coreq import (
    CoreqError,
    ParseError,
    QModel,
    check_proof,
    complexity,
    cross_validate,
    format_formula,
    format_sequent,
    generate,
    graph_dot,
    prove,
    reward,
    train,
    weighted_complexity,
)

__all__ = [
    "CoreqError",
    "ParseError",
    "QModel",
    "check_proof",
    "complexity",
    "cross_validate",
    "format_formula",
    "format_sequent",
    "generate",
    "graph_dot",
    "prove",
    "reward",
    "train",
    "weighted_complexity",
]
