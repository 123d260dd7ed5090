"""Simulation state, actions, solutions and the transition function."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidActionError, NotTerminalError
from . import engine
from .instance import Instance

RETRIEVE = "retrieve"
STORE = "store"

SOLUTION_SCHEMA = "paintshop-solution/1"


@dataclass(frozen=True, order=True)
class Action:
    """Store the next incoming car into a lane, or retrieve a lane's exit car.

    Lanes are 1-based.  The flat index space used by masks and policies puts
    the L retrieve actions first: ``index = lane-1`` for retrieves and
    ``L + lane-1`` for stores.
    """

    kind: str
    lane: int

    def __post_init__(self):
        if self.kind not in (RETRIEVE, STORE):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.lane < 1:
            raise ValueError("lane numbering starts at 1")

    def index(self, lanes: int) -> int:
        if self.lane > lanes:
            raise ValueError(f"lane {self.lane} outside 1..{lanes}")
        return self.lane - 1 if self.kind == RETRIEVE else lanes + self.lane - 1

    @classmethod
    def from_index(cls, index: int, lanes: int) -> "Action":
        if not 0 <= index < 2 * lanes:
            raise ValueError(f"action index {index} outside 0..{2 * lanes - 1}")
        if index < lanes:
            return cls(RETRIEVE, index + 1)
        return cls(STORE, index - lanes + 1)

    @property
    def kind_code(self) -> int:
        return engine.KIND_RETRIEVE if self.kind == RETRIEVE else engine.KIND_STORE


def retrieve(lane: int) -> Action:
    return Action(RETRIEVE, lane)


def store(lane: int) -> Action:
    return Action(STORE, lane)


class ShopState:
    """Mutable simulation state: buffer grid, upstream cursor, downstream tail.

    ``buffer`` is an ``(L, W)`` int32 grid where column ``W-1`` is the exit
    slot; lanes are right-packed.  Instances of this class are single-owner:
    use :func:`apply` for a pure transition or :func:`step_inplace` inside a
    solver loop that owns the state.
    """

    __slots__ = ("instance", "buffer", "upstream", "pos", "current", "downstream", "steps")

    def __init__(self, instance: Instance, buffer: np.ndarray, upstream: np.ndarray,
                 pos: int, current: int, downstream: list[int], steps: int):
        self.instance = instance
        self.buffer = buffer
        self.upstream = upstream
        self.pos = pos
        self.current = current
        self.downstream = downstream
        self.steps = steps

    def copy(self) -> "ShopState":
        return ShopState(self.instance, self.buffer.copy(), self.upstream,
                         self.pos, self.current, list(self.downstream), self.steps)

    def lane_contents(self, lane: int) -> tuple[int, ...]:
        """Occupied cells of a lane (1-based), ordered entry-side first."""
        row = self.buffer[lane - 1]
        return tuple(int(c) for c in row if c != 0)

    def lanes_snapshot(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.lane_contents(i) for i in range(1, self.instance.lanes + 1))

    @property
    def fill_count(self) -> int:
        return int(np.count_nonzero(self.buffer))

    def upstream_remaining(self) -> int:
        return len(self.upstream) - self.pos

    def next_color(self) -> int:
        """Color of the next incoming car, 0 once the upstream is exhausted."""
        if self.pos >= len(self.upstream):
            return 0
        return int(self.upstream[self.pos])

    def __repr__(self):
        lanes = ["".join(str(int(c)) for c in row) for row in self.buffer]
        return (f"ShopState(buffer={'|'.join(lanes)}, pos={self.pos}, "
                f"current={self.current}, downstream={len(self.downstream)})")


def new_state(instance: Instance) -> ShopState:
    """Initial state: buffer loaded right-packed, nothing painted yet."""
    instance.validate()
    buffer = np.zeros((instance.lanes, instance.width), dtype=np.intc)
    if instance.initial_buffer is not None:
        for i, lane in enumerate(instance.initial_buffer):
            k = len(lane)
            if k:
                buffer[i, instance.width - k:] = lane
    return ShopState(instance, buffer, instance.upstream_array(), 0, 0, [], 0)


def legal(state: ShopState, action: Action) -> bool:
    """True iff the action would be applied rather than rejected."""
    lane = action.lane - 1
    if not 0 <= lane < state.instance.lanes:
        return False
    if action.kind == STORE:
        return state.pos < len(state.upstream) and state.buffer[lane, 0] == 0
    return state.buffer[lane, state.instance.width - 1] != 0


def step_inplace(state: ShopState, action: Action) -> int:
    """Apply an action, mutating ``state``; returns the reward.

    Invalid actions leave the state untouched and return -10.
    """
    reward, pos, current, emitted = engine.step(
        state.buffer, state.upstream, state.pos, state.current,
        action.kind_code, action.lane - 1,
    )
    if reward == engine.INVALID_REWARD:
        return reward
    state.pos = pos
    state.current = current
    if emitted != 0:
        state.downstream.append(emitted)
    state.steps += 1
    return reward


def apply(state: ShopState, action: Action) -> tuple[ShopState, int]:
    """Pure transition: returns ``(next_state, reward)``."""
    nxt = state.copy()
    reward = step_inplace(nxt, action)
    return nxt, reward


def is_terminal(state: ShopState) -> bool:
    """True once the upstream sequence and the buffer are both empty."""
    if state.pos < len(state.upstream):
        return False
    return not state.buffer[:, state.instance.width - 1].any()


def encode_observation(state: ShopState, lookahead: int) -> np.ndarray:
    """One-hot observation of length ``(L*W + lookahead + 1) * C``."""
    if lookahead < 1:
        raise ValueError("lookahead must be >= 1")
    inst = state.instance
    out = np.zeros((inst.lanes * inst.width + lookahead + 1) * inst.num_colors,
                   dtype=np.float64)
    engine.encode_obs(state.buffer, state.upstream, state.pos, state.current,
                      lookahead, inst.num_colors, out)
    return out


def color_changes(downstream: Sequence[int]) -> int:
    """Adjacent differing pairs; the empty-to-first-car transition is free."""
    changes = 0
    for a, b in zip(downstream, downstream[1:]):
        if a != b:
            changes += 1
    return changes


@dataclass(frozen=True)
class Solution:
    """A feasible action trace with its downstream sequence and cost."""

    actions: tuple[Action, ...]
    downstream: tuple[int, ...]
    color_changes: int
    producer: str = ""
    runtime: float = 0.0

    def to_json(self) -> dict:
        return {
            "schema": SOLUTION_SCHEMA,
            "actions": [{"kind": a.kind, "lane": a.lane} for a in self.actions],
            "color_changes": self.color_changes,
            "downstream": list(self.downstream),
            "producer": self.producer,
            "runtime": self.runtime,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Solution":
        return cls(
            actions=tuple(Action(a["kind"], int(a["lane"])) for a in doc["actions"]),
            downstream=tuple(int(c) for c in doc.get("downstream", [])),
            color_changes=int(doc["color_changes"]),
            producer=doc.get("producer", ""),
            runtime=float(doc.get("runtime", 0.0)),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Solution":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def replay(instance: Instance, actions: Iterable[Action], producer: str = "replay",
           runtime: float = 0.0) -> Solution:
    """Simulate a trace from the initial state and package it as a Solution.

    Raises :class:`InvalidActionError` at the first illegal action and
    :class:`NotTerminalError` when cars remain afterwards.
    """
    state = new_state(instance)
    acts = tuple(actions)
    for idx, action in enumerate(acts):
        if step_inplace(state, action) == engine.INVALID_REWARD:
            raise InvalidActionError(idx, action)
    if not is_terminal(state):
        raise NotTerminalError("trace leaves cars in the buffer or upstream")
    return Solution(acts, tuple(state.downstream), color_changes(state.downstream),
                    producer, runtime)


def actions_to_arrays(actions: Sequence[Action]) -> tuple[np.ndarray, np.ndarray]:
    """Split a trace into parallel (kind, lane0) arrays for the kernel."""
    kinds = np.empty(len(actions), dtype=np.uint8)
    lanes = np.empty(len(actions), dtype=np.intc)
    for t, a in enumerate(actions):
        kinds[t] = a.kind_code
        lanes[t] = a.lane - 1
    return kinds, lanes


def replay_change_count(instance: Instance, kinds: np.ndarray, lanes: np.ndarray,
                        scratch: np.ndarray | None = None,
                        start_buffer: np.ndarray | None = None) -> tuple[int, int, int]:
    """Kernel-backed fast replay; see ``engine.replay_stats``."""
    if start_buffer is None:
        start_buffer = new_state(instance).buffer
    if scratch is None:
        scratch = np.empty_like(start_buffer)
    return engine.replay_stats(instance.upstream_array(), start_buffer, 0, 0,
                               kinds, lanes, scratch)
