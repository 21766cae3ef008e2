from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate


@dataclass(frozen=True)
class CountTable:
    """Per-degree counts ``a[n]`` and their running sums ``p[n]``.

    ``valid_to`` is the largest degree whose count is trustworthy; entries past
    it (if any) are kept only for display.
    """

    a: tuple[int, ...]
    valid_to: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if any(x < 0 for x in self.a):
            raise ValueError("counts must be non-negative")
        if self.valid_to > len(self.a) - 1:
            raise ValueError("valid_to exceeds the data")

    @property
    def p(self) -> tuple[int, ...]:
        return tuple(accumulate(self.a))

    def __len__(self) -> int:
        return len(self.a)

    def truncated(self, n: int) -> CountTable:
        n = min(n, self.valid_to)
        return CountTable(self.a[: n + 1], n)
