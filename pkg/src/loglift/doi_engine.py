"""Degree-of-interest model over the method edit event stream.

Each edit raises the edited method's interest by the scaling factor while
every later event decays it by the decay rate, so frequently and recently
edited methods score highest. Interest never goes below zero: a method left
behind by development bottoms out at 0 rather than growing ever more
negative.

For a method first seen at event index f with n edits out of N total
events, the value is max(0, s*n - d*(N - 1 - f)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonConsecutiveSequence
from .repo_miner import ChangeEvent, MethodIdentity

DEFAULT_EDIT_SCALING = 1.0
# Stock task-context decay proved far too aggressive on long histories,
# collapsing nearly every method to the bottom level; keep it small.
DEFAULT_DECAY_RATE = 0.001


@dataclass(frozen=True)
class DoiConfig:
    edit_scaling: float = DEFAULT_EDIT_SCALING
    decay_rate: float = DEFAULT_DECAY_RATE

    def __post_init__(self):
        if self.edit_scaling <= 0:
            raise ValueError("edit_scaling must be positive")
        if self.decay_rate < 0:
            raise ValueError("decay_rate must be non-negative")
        if self.decay_rate >= self.edit_scaling:
            raise ValueError("decay_rate must be smaller than edit_scaling")


@dataclass
class _Interest:
    count: int  # n: number of edit events on the method
    first_seq: int  # f: event index of the first edit


@dataclass
class DoiModel:
    total_events: int = 0
    interests: dict[MethodIdentity, _Interest] = field(default_factory=dict)

    def record(self, method: MethodIdentity, seq: int) -> None:
        entry = self.interests.get(method)
        if entry is None:
            self.interests[method] = _Interest(count=1, first_seq=seq)
        else:
            entry.count += 1
        self.total_events += 1


@dataclass(frozen=True)
class DoiValue:
    method: MethodIdentity
    value: float


def process_events(events: list[ChangeEvent], config: DoiConfig | None = None) -> DoiModel:
    """Fold an ordered event stream into per-method interest counters."""
    model = DoiModel()
    for expected, event in enumerate(events):
        if event.seq != expected:
            raise NonConsecutiveSequence(
                f"event {expected} carries seq {event.seq}; expected {expected}"
            )
        model.record(event.method, event.seq)
    return model


def raw_interest(model: DoiModel, method: MethodIdentity, config: DoiConfig) -> float:
    """Unclamped interest; negative values mean long-faded methods."""
    entry = model.interests.get(method)
    if entry is None:
        return 0.0
    decay_steps = model.total_events - 1 - entry.first_seq
    return config.edit_scaling * entry.count - config.decay_rate * decay_steps


def doi_of(model: DoiModel, method: MethodIdentity, config: DoiConfig) -> DoiValue:
    """Clamped DOI for a method; methods never edited score 0."""
    return DoiValue(method=method, value=max(0.0, raw_interest(model, method, config)))
