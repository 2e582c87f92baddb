"""Finite chain complexes extracted from (possibly infinite) constructions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import DegreeViolation, WindowExceedsTruncation
from .linalg import HomologyGroup, homology_groups
from .spaces import GradedVectorSpace, SparseLinearMap, Z2


def window_degrees(window, mode: str) -> list[int]:
    a, b = window
    if mode == Z2:
        return sorted({a % 2, b % 2} if b - a < 1 else {0, 1})
    return list(range(a, b + 1))


@dataclass
class TruncatedComplex:
    """A finite cochain complex (differential of degree +1) with truncation metadata.

    ``truncation`` records how the complex was cut out of an infinite one
    (``length_bound``, ``window``); ``certified`` is set only when the cut is
    provably exact on the window.  ``notes`` carries stabilization metadata.
    """
    space: GradedVectorSpace
    differential: SparseLinearMap
    truncation: dict = field(default_factory=dict)
    certified: bool = True
    notes: dict = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        if self.differential.degree != self.space.norm(1):
            raise DegreeViolation("differential must have degree +1")
        if self.check:
            sq = self.differential @ self.differential
            if not sq.is_zero():
                t, s, v = sq.entries()[0]
                raise ValueError(f"d∘d != 0: entry {t!r} <- {s!r} is {v}")

    @property
    def field(self):
        return self.differential.field

    @property
    def mode(self) -> str:
        return self.space.mode

    @property
    def window(self):
        return self.truncation.get("window")

    def homology(self, window=None) -> dict[int, HomologyGroup]:
        return homology(self, window)

    def homology_dims(self, window=None) -> dict[int, int]:
        return {d: g.dim for d, g in homology(self, window).items()}


def homology(c: TruncatedComplex, window: Sequence[int] | None = None) -> dict[int, HomologyGroup]:
    """Homology per degree of ``window`` (defaults to the complex's own window)."""
    own = c.window
    if window is None:
        if own is None:
            b = c.space.bounds()
            window = b if b else (0, 0)
        else:
            window = own
    elif own is not None and (window[0] < own[0] or window[1] > own[1]):
        raise WindowExceedsTruncation(f"window {tuple(window)} not inside {tuple(own)}")
    return homology_groups(c.space, c.differential, window_degrees(window, c.mode))
