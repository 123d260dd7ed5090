"""Deterministic baselines: plain greedy and greedy with fill-rate bounds.

Both share the same per-step rules.  A store goes to a greedy-storage lane if
one exists (the lane's most recently stored car matches the incoming color
and there is room before it), otherwise to the least occupied storable lane;
a retrieve takes a lane whose exit car matches the current color if one
exists, otherwise the lowest-index non-empty lane.  Ties always break toward
the lowest lane index, so both heuristics are fully deterministic.

Plain greedy alternates full-fill and full-empty phases.  The fill-rate
variant instead switches from storing to retrieving once the buffer fill
fraction reaches the upper bound and back once it drains to the lower bound;
fill fractions are compared as exact rationals (cars over L*W) so thresholds
never suffer float jitter.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .core.instance import Instance
from .core.state import Action, ShopState, Solution, new_state, replay, retrieve, store, step_inplace


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    # str(float) round-trips the decimal the caller wrote, e.g. 0.37 -> 37/100
    return Fraction(str(value))


@dataclass(frozen=True)
class FillBounds:
    """Upper/lower fill fractions controlling the phase switches."""

    upper: Fraction
    lower: Fraction

    def __post_init__(self):
        object.__setattr__(self, "upper", _as_fraction(self.upper))
        object.__setattr__(self, "lower", _as_fraction(self.lower))
        if not 0 <= self.lower <= self.upper <= 1:
            raise ValueError("need 0 <= lower <= upper <= 1")


def _store_lane(state: ShopState) -> int:
    """Greedy-storage lane if any, else least occupied storable lane (1-based)."""
    inst = state.instance
    L, W = inst.lanes, inst.width
    incoming = state.next_color()
    if incoming != 0:
        for i in range(L):
            row = state.buffer[i]
            if row[0] != 0 or row[W - 1] == 0:
                continue
            j = 0
            while row[j] == 0:
                j += 1
            if row[j] == incoming:
                return i + 1
    best = -1
    best_count = W + 1
    for i in range(L):
        if state.buffer[i, 0] != 0:
            continue
        count = W
        for j in range(W):
            if state.buffer[i, j] == 0:
                count -= 1
        if count < best_count:
            best, best_count = i, count
    if best < 0:
        raise RuntimeError("no storable lane; caller must check fill first")
    return best + 1


def _retrieve_lane(state: ShopState) -> int:
    """Greedy-retrieval lane if any, else lowest non-empty lane (1-based)."""
    inst = state.instance
    W = inst.width
    if state.current != 0:
        for i in range(inst.lanes):
            if state.buffer[i, W - 1] == state.current:
                return i + 1
    for i in range(inst.lanes):
        if state.buffer[i, W - 1] != 0:
            return i + 1
    raise RuntimeError("no retrievable lane; caller must check emptiness first")


def _run_fill_rate(instance: Instance, bounds: FillBounds) -> list[Action]:
    state = new_state(instance)
    capacity = instance.capacity
    actions: list[Action] = []
    fill = state.fill_count
    storing = state.pos < len(state.upstream) and Fraction(fill, capacity) < bounds.upper

    while state.pos < len(state.upstream) or fill > 0:
        if storing:
            if state.pos >= len(state.upstream) or fill == capacity:
                storing = False
                continue
            action = store(_store_lane(state))
            step_inplace(state, action)
            actions.append(action)
            fill += 1
            if Fraction(fill, capacity) >= bounds.upper:
                storing = False
        else:
            if fill == 0:
                storing = True
                continue
            action = retrieve(_retrieve_lane(state))
            step_inplace(state, action)
            actions.append(action)
            fill -= 1
            if Fraction(fill, capacity) <= bounds.lower and state.pos < len(state.upstream):
                storing = True
    return actions


def greedy_solve(instance: Instance) -> Solution:
    """Store until the buffer is full (or the upstream ends), then empty it."""
    start = time.perf_counter()
    actions = _run_fill_rate(instance, FillBounds(Fraction(1), Fraction(0)))
    return replay(instance, actions, producer="greedy",
                  runtime=time.perf_counter() - start)


def greedy_fill_rate_solve(instance: Instance, bounds: FillBounds) -> Solution:
    start = time.perf_counter()
    actions = _run_fill_rate(instance, bounds)
    producer = f"greedy-fill[fu={bounds.upper},fl={bounds.lower}]"
    return replay(instance, actions, producer=producer,
                  runtime=time.perf_counter() - start)


def greedy_fill_rate_grid(instance: Instance, step: float = 0.01) -> tuple[Solution, FillBounds]:
    """Sweep all bound pairs on a grid and keep the best result.

    Ties break toward the lexicographically smallest ``(upper, lower)`` pair.
    """
    step_f = _as_fraction(step)
    if not 0 < step_f <= 1:
        raise ValueError("need 0 < step <= 1")
    start = time.perf_counter()
    values = grid_values(step_f)
    best_actions: list[Action] | None = None
    best_changes = -1
    best_bounds: FillBounds | None = None
    for upper in values:
        for lower in values:
            if lower > upper:
                break
            bounds = FillBounds(upper, lower)
            actions = _run_fill_rate(instance, bounds)
            changes = _trace_changes(instance, actions)
            if best_actions is None or changes < best_changes:
                best_actions, best_changes, best_bounds = actions, changes, bounds
    assert best_actions is not None and best_bounds is not None
    producer = f"greedy-fill-grid[fu={best_bounds.upper},fl={best_bounds.lower}]"
    solution = replay(instance, best_actions, producer=producer,
                      runtime=time.perf_counter() - start)
    return solution, best_bounds


def grid_values(step: Fraction) -> list[Fraction]:
    """The grid {0, step, 2*step, ...} clipped to [0, 1], always ending at 1."""
    values = []
    k = 0
    while k * step < 1:
        values.append(k * step)
        k += 1
    values.append(Fraction(1))
    return values


def _trace_changes(instance: Instance, actions: list[Action]) -> int:
    from .core.state import actions_to_arrays, replay_change_count

    kinds, lanes = actions_to_arrays(actions)
    changes, first_invalid, terminal = replay_change_count(instance, kinds, lanes)
    if first_invalid >= 0 or not terminal:
        raise RuntimeError("heuristic produced an infeasible trace")
    return changes
