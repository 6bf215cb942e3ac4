from __future__ import annotations

import os
from dataclasses import dataclass


class PrecisionShortfall(Exception):
    """Raised when a computation cannot certify the requested digits."""


@dataclass(frozen=True)
class PrecisionContext:
    working_digits: int = 40
    target_digits: int | None = None

    def __post_init__(self):
        if self.working_digits < 16:
            raise ValueError("working precision must be at least 16 digits")
        if self.target_digits is not None and self.target_digits > self.working_digits - 8:
            raise ValueError("target digits must leave 8 guard digits")

    @property
    def target(self) -> int:
        return self.target_digits if self.target_digits is not None else self.working_digits - 8

    @property
    def double(self) -> bool:
        """True when plain binary64 arithmetic is good enough."""
        return self.working_digits <= 16


def default_context(N: int | None = None) -> PrecisionContext:
    env = os.environ.get("EDGECASCADE_PRECISION")
    if env:
        return PrecisionContext(int(env))
    if N is not None and N > 200:
        return PrecisionContext(60)
    return PrecisionContext(40)
