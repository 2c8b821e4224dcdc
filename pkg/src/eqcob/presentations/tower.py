"""Inverse systems of presentations, built lazily from a stage builder."""

from __future__ import annotations

import threading
from typing import Callable

from ..errors import StabilizationInconclusive, StructuralError
from .linalg import spans_everything
from .presentation import RingPresentation


class ProRing:
    """Stages ``start, start+1, ..., horizon`` with maps ``stage(i+1) -> stage(i)``.

    ``builder(i)`` returns stage ``i``.  ``assignment(i)``, if given, returns a
    dict sending each generator name of stage ``i+1`` to an element of stage
    ``i``; by default generators map to the generator of the same name.
    Stages are built on first use and cached.
    """

    def __init__(self, builder: Callable[[int], RingPresentation], start: int = 0,
                 horizon: int | None = None, assignment: Callable[[int], dict] | None = None,
                 label: str = "", _stages: dict | None = None):
        if horizon is None:
            horizon = start + 4
        if horizon <= start:
            raise StructuralError("a tower needs at least two stages")
        self.builder = builder
        self.start = start
        self.horizon = horizon
        self.assignment = assignment
        self.label = label
        self._stages = {} if _stages is None else _stages
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ProRing({self.label!r}, stages {self.start}..{self.horizon})"

    def indices(self) -> range:
        return range(self.start, self.horizon + 1)

    def stage(self, i: int) -> RingPresentation:
        if i < self.start:
            raise StructuralError(f"stage {i} precedes the first stage {self.start}")
        with self._lock:
            if i in self._stages:
                return self._stages[i]
        p = self.builder(i)
        with self._lock:
            return self._stages.setdefault(i, p)

    def extended(self, horizon: int) -> ProRing:
        """The same tower with more stages; built stages are shared."""
        return ProRing(self.builder, self.start, horizon, self.assignment, self.label, self._stages)

    # transition maps -------------------------------------------------
    def image(self, i: int, x):
        """Image in stage ``i`` of an element of stage ``i + 1``."""
        src, dst = self.stage(i + 1), self.stage(i)
        x = src.element(x)
        if self.assignment is None:
            missing = [n for n in src.names if n not in dst.names]
            if missing:
                raise StructuralError(f"stage {i} has no generator {missing[0]!r}; pass an assignment")
            if x.truncation < dst.truncation:
                raise StructuralError(f"stage {i + 1} is truncated below stage {i}")
            y = x.embed(dst.space)
        else:
            images = self.assignment(i)
            y = x.compose([dst.element(images[n]) for n in src.names])
        return dst.reduce(y) if dst.strategy == "monic" else y

    def transition_rows(self, i: int, d: int) -> list:
        """Coordinates, in the degree-``d`` basis of stage ``i``, of the images of stage ``i+1``'s basis."""
        src, dst = self.stage(i + 1), self.stage(i)
        rows = []
        for m in src.graded_piece(d).basis:
            rows.append(dst.coordinates(self.image(i, src.space.monomial(m)), d))
        return rows

    def verify_surjective(self, i: int, d: int) -> bool:
        """Whether ``stage(i+1) -> stage(i)`` is onto in degree ``d``.

        The target piece is ``Z^basis / relations``, so the map is onto exactly
        when the images together with the relations span ``Z^basis``.
        """
        dst = self.stage(i)
        target = dst.graded_piece(d)
        rows = self.transition_rows(i, d) + [list(r) for r in target.relations]
        return spans_everything(rows, len(target.basis), target.integral)

    def is_iso(self, i: int, d: int) -> bool:
        """Onto plus isomorphic pieces; a finitely generated module has no proper surjective self-quotient."""
        if not self.verify_surjective(i, d):
            return False
        return self.stage(i).piece_report(d) == self.stage(i + 1).piece_report(d)

    def stabilization_index(self, d: int) -> int:
        """Least ``i`` such that every transition out of a stage ``j + 1 > i`` is an iso in degree ``d``."""
        last = self.horizon - 1
        if not self.is_iso(last, d):
            raise StabilizationInconclusive(
                f"degree {d} still changes between stages {last} and {self.horizon} of {self.label or 'the tower'}",
                degree=d, stages=self.horizon - self.start + 1)
        i = last
        while i > self.start and self.is_iso(i - 1, d):
            i -= 1
        return i

    def stabilization_record(self, max_degree: int) -> dict:
        return {d: self.stabilization_index(d) for d in range(max_degree + 1)}

    def verify_mittag_leffler(self, max_degree: int) -> list:
        """All ``(i, d)`` whose transition fails to be onto; empty when the tower is Mittag-Leffler."""
        failures = []
        for i in range(self.start, self.horizon):
            top = min(max_degree, self.stage(i).truncation, self.stage(i + 1).truncation)
            for d in range(top + 1):
                if not self.verify_surjective(i, d):
                    failures.append((i, d))
        return failures


def pro_stabilize(tower: ProRing, d: int) -> int:
    return tower.stabilization_index(d)
