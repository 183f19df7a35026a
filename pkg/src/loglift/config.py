"""Run configuration: defaults, `.loglift.conf` parsing, CLI merging.

The config file is a flat ``key = value`` text file at the repository
root. Every key can also be set on the command line; CLI values win.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .doi_engine import DEFAULT_DECAY_RATE, DEFAULT_EDIT_SCALING, DoiConfig
from .leveler import DEFAULT_KEYL_KEYWORDS, DEFAULT_KEYR_KEYWORDS, HeuristicConfig
from .repo_miner import DEFAULT_RENAME_SIMILARITY
from .reporter import DEFAULT_BUG_PATTERN

CONFIG_FILE_NAME = ".loglift.conf"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}
_UNSET = {"none", "unlimited", ""}


@dataclass(frozen=True)
class RunConfig:
    framework: str = "jul"
    ws: bool = True
    ws_categories: tuple[str, ...] | None = None
    ctch: bool = True
    ifs: bool = True
    keyl: bool = True
    cnds: bool = True
    keyr: bool = True
    inh: bool = True
    tdist: int | None = None
    keyl_keywords: tuple[str, ...] = DEFAULT_KEYL_KEYWORDS
    keyr_keywords: tuple[str, ...] = DEFAULT_KEYR_KEYWORDS
    max_commits: int | None = None
    bug_pattern: str = DEFAULT_BUG_PATTERN
    partition_all_methods: bool = False
    edit_scaling: float = DEFAULT_EDIT_SCALING
    decay_rate: float = DEFAULT_DECAY_RATE
    rename_similarity: float = DEFAULT_RENAME_SIMILARITY
    cache_dir: str | None = None

    def heuristic_config(self) -> HeuristicConfig:
        return HeuristicConfig(
            ws_enabled=self.ws,
            ws_categories=frozenset(self.ws_categories)
            if self.ws_categories is not None
            else None,
            ctch=self.ctch,
            ifs=self.ifs,
            keyl=self.keyl,
            cnds=self.cnds,
            keyr=self.keyr,
            inh=self.inh,
            tdist=self.tdist,
            keyl_keywords=tuple(k.lower() for k in self.keyl_keywords),
            keyr_keywords=tuple(k.lower() for k in self.keyr_keywords),
            partition_all_methods=self.partition_all_methods,
        )

    def doi_config(self) -> DoiConfig:
        return DoiConfig(edit_scaling=self.edit_scaling, decay_rate=self.decay_rate)


# config-file key -> RunConfig field
_KEY_MAP = {
    "framework": "framework",
    "ws": "ws",
    "ws_categories": "ws_categories",
    "ctch": "ctch",
    "ifs": "ifs",
    "keyl": "keyl",
    "cnds": "cnds",
    "keyr": "keyr",
    "inh": "inh",
    "tdist": "tdist",
    "keyl_keywords": "keyl_keywords",
    "keyr_keywords": "keyr_keywords",
    "max_commits": "max_commits",
    "bug_pattern": "bug_pattern",
    "partition_all_methods": "partition_all_methods",
    "doi.edit_scaling": "edit_scaling",
    "doi.decay_rate": "decay_rate",
    "rename_similarity": "rename_similarity",
    "cache_dir": "cache_dir",
}

_BOOL_FIELDS = {"ws", "ctch", "ifs", "keyl", "cnds", "keyr", "inh", "partition_all_methods"}
_INT_OR_NONE_FIELDS = {"tdist", "max_commits"}
_FLOAT_FIELDS = {"edit_scaling", "decay_rate", "rename_similarity"}
_LIST_FIELDS = {"ws_categories", "keyl_keywords", "keyr_keywords"}


def _parse_value(field_name: str, raw: str):
    value = raw.strip()
    if field_name in _BOOL_FIELDS:
        low = value.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ValueError(f"{field_name}: expected a boolean, got {raw!r}")
    if field_name in _INT_OR_NONE_FIELDS:
        if value.lower() in _UNSET:
            return None
        return int(value)
    if field_name in _FLOAT_FIELDS:
        return float(value)
    if field_name in _LIST_FIELDS:
        items = tuple(part.strip() for part in value.split(",") if part.strip())
        return items or None
    if field_name == "cache_dir" and value.lower() in _UNSET:
        return None
    return value


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into RunConfig field overrides."""
    overrides: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected key = value")
        key, raw = stripped.split("=", 1)
        key = key.strip()
        if key not in _KEY_MAP:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        field_name = _KEY_MAP[key]
        overrides[field_name] = _parse_value(field_name, raw)
    return overrides


def load_config(repo_root: Path, cli_overrides: dict) -> RunConfig:
    """Defaults, then the repository's config file, then CLI values."""
    values: dict = {}
    config_path = repo_root / CONFIG_FILE_NAME
    if config_path.is_file():
        values.update(parse_config_text(config_path.read_text(encoding="utf-8")))
    values.update({k: v for k, v in cli_overrides.items() if v is not None})
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown configuration fields: {sorted(unknown)}")
    return replace(RunConfig(), **values)


def dump_config(cfg: RunConfig) -> str:
    """Render a RunConfig in config-file syntax (all keys round-trip)."""
    reverse = {v: k for k, v in _KEY_MAP.items()}
    lines = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        key = reverse[f.name]
        if value is None:
            rendered = "none"
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        elif isinstance(value, tuple):
            rendered = ", ".join(value)
        else:
            rendered = str(value)
        lines.append(f"{key} = {rendered}")
    return "\n".join(lines) + "\n"
