"""Per-chart onboarding state keyed by context key.

One registry maps each context key to its mutable slot (message id
counter, cached stages/messages). Mutation is not synchronized; callers
share a registry across threads only behind their own lock.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ContextState:
    next_index: int = 0
    stages: list = field(default_factory=list)
    messages: list = field(default_factory=list)


class ContextRegistry:
    def __init__(self) -> None:
        self._states: dict[str, ContextState] = {}
        self._counter = 0

    def register(self, requested: str | None = None) -> str:
        """Return the caller's key (idempotently) or mint a fresh one."""
        if requested is not None:
            self._states.setdefault(requested, ContextState())
            return requested
        while True:
            key = f"visahoi-ctx-{self._counter}"
            self._counter += 1
            if key not in self._states:
                break
        self._states[key] = ContextState()
        return key

    def state(self, key: str) -> ContextState:
        return self._states.setdefault(key, ContextState())

    def reserve_indices(self, key: str, count: int) -> None:
        """Mark catalog indices 0..count-1 as taken for this context."""
        slot = self.state(key)
        slot.next_index = max(slot.next_index, count)

    def take_index(self, key: str) -> int:
        slot = self.state(key)
        index = slot.next_index
        slot.next_index += 1
        return index


# Process-wide default, mirroring the single shared onboarding state a
# browser page would hold. Library functions accept an explicit registry
# for isolation (tests do).
_default_registry = ContextRegistry()


def default_registry() -> ContextRegistry:
    return _default_registry


def register_context(registry: ContextRegistry | None = None, requested: str | None = None) -> str:
    return (registry or _default_registry).register(requested)
