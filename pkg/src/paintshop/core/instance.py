"""Immutable problem instances and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

INSTANCE_SCHEMA = "paintshop-instance/1"


@dataclass(frozen=True)
class Instance:
    """An upstream color sequence plus the buffer geometry it passes through.

    Colors are integers ``1..num_colors``; 0 is reserved for "empty".  Lane
    lists in ``initial_buffer`` are ordered entry-side first, so the last
    element of a lane is the next car to leave it.
    """

    num_colors: int
    upstream: tuple[int, ...]
    lanes: int
    width: int
    initial_buffer: tuple[tuple[int, ...], ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "upstream", tuple(int(c) for c in self.upstream))
        if self.initial_buffer is not None:
            object.__setattr__(
                self,
                "initial_buffer",
                tuple(tuple(int(c) for c in lane) for lane in self.initial_buffer),
            )
        self.validate()

    def validate(self):
        if self.num_colors < 1:
            raise ValueError("num_colors must be >= 1")
        if self.lanes < 1 or self.width < 1:
            raise ValueError("lanes and width must be >= 1")
        if len(self.upstream) < 1:
            raise ValueError("upstream sequence must not be empty")
        for c in self.upstream:
            if not 1 <= c <= self.num_colors:
                raise ValueError(f"upstream color {c} outside 1..{self.num_colors}")
        if self.initial_buffer is not None:
            if len(self.initial_buffer) != self.lanes:
                raise ValueError("initial_buffer must list one lane per buffer lane")
            for lane in self.initial_buffer:
                if len(lane) > self.width:
                    raise ValueError("initial lane content longer than lane width")
                for c in lane:
                    if not 1 <= c <= self.num_colors:
                        raise ValueError(f"buffer color {c} outside 1..{self.num_colors}")

    @property
    def length(self) -> int:
        return len(self.upstream)

    @property
    def capacity(self) -> int:
        return self.lanes * self.width

    @property
    def initial_fill(self) -> int:
        if self.initial_buffer is None:
            return 0
        return sum(len(lane) for lane in self.initial_buffer)

    @property
    def total_cars(self) -> int:
        """Number of cars that end up in the downstream sequence."""
        return self.length + self.initial_fill

    def upstream_array(self) -> np.ndarray:
        return np.asarray(self.upstream, dtype=np.intc)

    def to_json(self) -> dict:
        doc = {
            "schema": INSTANCE_SCHEMA,
            "num_colors": self.num_colors,
            "lanes": self.lanes,
            "width": self.width,
            "upstream": list(self.upstream),
        }
        if self.initial_buffer is not None:
            doc["initial_buffer"] = [list(lane) for lane in self.initial_buffer]
        if self.meta:
            doc["meta"] = dict(self.meta)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Instance":
        buf = doc.get("initial_buffer")
        return cls(
            num_colors=int(doc["num_colors"]),
            upstream=tuple(int(c) for c in doc["upstream"]),
            lanes=int(doc["lanes"]),
            width=int(doc["width"]),
            initial_buffer=None if buf is None else tuple(tuple(lane) for lane in buf),
            meta=dict(doc.get("meta", {})),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Instance":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def make_instance(num_colors: int, upstream: Sequence[int], lanes: int, width: int,
                  initial_buffer=None, meta=None) -> Instance:
    """Convenience constructor used heavily in tests."""
    return Instance(
        num_colors=num_colors,
        upstream=tuple(upstream),
        lanes=lanes,
        width=width,
        initial_buffer=None if initial_buffer is None else tuple(tuple(l) for l in initial_buffer),
        meta=meta or {},
    )
