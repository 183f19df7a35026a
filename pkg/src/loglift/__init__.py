"""loglift: rejuvenate Java feature log levels from git history.

The pipeline mines method-level edit events out of a repository's history,
folds them into a degree-of-interest model, partitions the interest range
into equal-width bands mapped to log levels, and proposes level rewrites
for statements whose level disagrees with the interest of their enclosing
method, guarded by a set of safety heuristics.
"""

from .doi_engine import DoiConfig, DoiModel, DoiValue, doi_of, process_events
from .errors import (
    EmptyHistogram,
    EmptyModel,
    EmptyRepository,
    LogliftError,
    NonConsecutiveSequence,
    NotARepository,
    OutOfRange,
    StaleSpan,
    UnparsableFile,
)
from .levels import JUL, SLF4J, LevelScheme, scheme_for
from .leveler import (
    HeuristicConfig,
    Partitioning,
    Suggestion,
    assess,
    build_partitioning,
    evaluate_heuristics,
    predict_level,
    suggest,
)
from .repo_miner import (
    ChangeEvent,
    CommitRecord,
    MethodIdentity,
    RenameMap,
    build_rename_map,
    enumerate_commits,
    extract_method_changes,
    mine,
)
from .reporter import bug_focus, build_report, distribution_change
from .rewriter import emit_patch, rewrite_file
from .source_index import (
    LoggingStatement,
    SourceIndex,
    index_java_file,
    index_tree,
    message_keywords_present,
)

__version__ = "0.1.0"

__all__ = [
    "ChangeEvent",
    "CommitRecord",
    "DoiConfig",
    "DoiModel",
    "DoiValue",
    "EmptyHistogram",
    "EmptyModel",
    "EmptyRepository",
    "HeuristicConfig",
    "JUL",
    "LevelScheme",
    "LoggingStatement",
    "LogliftError",
    "MethodIdentity",
    "NonConsecutiveSequence",
    "NotARepository",
    "OutOfRange",
    "Partitioning",
    "RenameMap",
    "SLF4J",
    "SourceIndex",
    "StaleSpan",
    "Suggestion",
    "UnparsableFile",
    "assess",
    "bug_focus",
    "build_partitioning",
    "build_rename_map",
    "build_report",
    "distribution_change",
    "doi_of",
    "emit_patch",
    "enumerate_commits",
    "extract_method_changes",
    "index_java_file",
    "index_tree",
    "message_keywords_present",
    "mine",
    "predict_level",
    "process_events",
    "rewrite_file",
    "scheme_for",
    "suggest",
]
