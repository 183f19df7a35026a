"""Logging framework level schemes and logger-recognition profiles.

Two frameworks are supported: java.util.logging (JUL) and SLF4J. A scheme
orders level names by ascending importance and knows which of them are
treated as categories rather than points on the verbosity scale.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass(frozen=True)
class LevelScheme:
    """Ordered level names for one logging framework.

    ``levels`` runs from least to most important. ``categories`` is the
    default set of levels treated as semantic categories (exempt from
    transformation when the category heuristic is active).
    ``raise_guard_levels`` are the critical levels that the keyword-raise
    heuristic protects as transformation targets.
    """

    framework: str
    levels: tuple[str, ...]
    categories: frozenset[str]
    raise_guard_levels: frozenset[str]
    # Method names whose identifier *is* the level (convenience flavor),
    # mapped to the level they select.
    convenience_methods: dict[str, str] = field(hash=False, default_factory=dict)
    # Method names that take the level as their first argument.
    generic_log_methods: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(set(self.levels)) != len(self.levels):
            raise ValueError("duplicate level names")
        if not self.categories <= set(self.levels):
            raise ValueError("categories must be a subset of levels")

    def ordinal(self, level: str) -> int:
        """0-based index of ``level`` in ascending importance order."""
        return self.levels.index(level)

    def considered_levels(self, ws_enabled: bool, ws_categories: frozenset[str]) -> tuple[str, ...]:
        """Levels available as transformation targets.

        With the category heuristic on, category levels are removed from
        the scale; otherwise all levels are considered.
        """
        if not ws_enabled:
            return self.levels
        return tuple(lv for lv in self.levels if lv not in ws_categories)

    def convenience_name(self, level: str) -> str:
        """Convenience method name for ``level`` (e.g. WARNING -> warning)."""
        for name, lv in self.convenience_methods.items():
            if lv == level:
                return name
        raise KeyError(level)

    def is_level(self, name: str) -> bool:
        return name in self.levels


JUL = LevelScheme(
    framework="jul",
    levels=("FINEST", "FINER", "FINE", "CONFIG", "INFO", "WARNING", "SEVERE"),
    categories=frozenset({"CONFIG", "WARNING", "SEVERE"}),
    raise_guard_levels=frozenset({"WARNING", "SEVERE"}),
    convenience_methods={
        "finest": "FINEST",
        "finer": "FINER",
        "fine": "FINE",
        "config": "CONFIG",
        "info": "INFO",
        "warning": "WARNING",
        "severe": "SEVERE",
    },
    generic_log_methods=frozenset({"log"}),
)

SLF4J = LevelScheme(
    framework="slf4j",
    levels=("TRACE", "DEBUG", "INFO", "WARN", "ERROR"),
    categories=frozenset({"WARN", "ERROR"}),
    raise_guard_levels=frozenset({"WARN", "ERROR"}),
    convenience_methods={
        "trace": "TRACE",
        "debug": "DEBUG",
        "info": "INFO",
        "warn": "WARN",
        "error": "ERROR",
    },
    generic_log_methods=frozenset({"log", "atLevel"}),
)

SCHEMES: dict[str, LevelScheme] = {"jul": JUL, "slf4j": SLF4J}

# Receivers are recognized syntactically: either the variable name looks
# like a logger, or it was declared with a type whose simple name ends in
# "Logger". Full symbol binding is out of reach for a standalone tool.
LOGGER_NAME_RE = re.compile(r"log|logger", re.IGNORECASE)
LOGGER_TYPE_SUFFIX = "Logger"


def scheme_for(framework: str) -> LevelScheme:
    try:
        return SCHEMES[framework.lower()]
    except KeyError:
        raise ValueError(f"unknown framework {framework!r} (expected jul or slf4j)") from None
