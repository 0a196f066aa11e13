"""Honeyword generation, detection and evaluation."""
from ._core import (
    CheckerIndex,
    ConfigError,
    CorpusModel,
    EnrollError,
    Error,
    GenerationError,
    ParseError,
    ProtocolError,
    SECONDS_PER_YEAR,
    TrainError,
    assemble,
    attacker_rank,
    budget_seconds,
    check_password,
    check_sweetword_set,
    decide_action,
    entropy_bits,
    exhaustive_seconds,
    flatness_score,
    generate,
    kdf_hash,
    kdf_ids,
    keyspace,
    render_tables,
    run_cli,
    score_risk,
    structure_template,
    sweep,
    train_model,
)

__all__ = [name for name in dir() if not name.startswith("_")]
