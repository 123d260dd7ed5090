"""State-dependent action masks and their combinators.

A mask is a boolean vector over the flat action space (L retrieve bits, then
L store bits).  Masks either restrict to a set of actions they care about or
stand down and admit everything, which makes them compose through the two
combinators below:

* ``combine_and`` admits an action only if both masks do.
* ``combine_priority`` applies the first mask whenever it forbids at least
  one action and falls through to the second otherwise.

The strongest stack is validity AND-ed with a priority chain of greedy
retrieval, fast-track stores and greedy storage.  Greedy retrieval and
fast-track stores are cost-optimal whenever available; greedy storage is a
good heuristic without such a guarantee.
"""

from __future__ import annotations

import numpy as np

from .core import engine
from .core.state import ShopState

MASK_VARIANTS = ("all", "inv-gr-ft", "inv-gr", "inv", "none")

_VARIANT_CODES = {
    "none": 0,
    "inv": 1,
    "inv-gr": 2,
    "inv-gr-ft": 3,
    "all": 4,
}


def variant_code(name: str) -> int:
    try:
        return _VARIANT_CODES[name]
    except KeyError:
        raise ValueError(f"unknown mask variant {name!r}; choose from {MASK_VARIANTS}")


def mask_invalid(state: ShopState) -> np.ndarray:
    """Admit exactly the actions the transition function would accept."""
    inst = state.instance
    L, W = inst.lanes, inst.width
    bits = np.zeros(2 * L, dtype=bool)
    upstream_left = state.pos < len(state.upstream)
    for i in range(L):
        bits[i] = state.buffer[i, W - 1] != 0
        bits[L + i] = upstream_left and state.buffer[i, 0] == 0
    return bits


def mask_greedy_retrieval(state: ShopState) -> np.ndarray:
    """Restrict to retrieves matching the current color, when any exist."""
    inst = state.instance
    L, W = inst.lanes, inst.width
    if state.current != 0:
        matches = [i for i in range(L) if state.buffer[i, W - 1] == state.current]
        if matches:
            bits = np.zeros(2 * L, dtype=bool)
            bits[matches] = True
            return bits
    return np.ones(2 * L, dtype=bool)


def mask_fast_track(state: ShopState) -> np.ndarray:
    """Restrict to stores into empty lanes when the incoming car can be
    retrieved right back without a color change."""
    inst = state.instance
    L, W = inst.lanes, inst.width
    incoming = state.next_color()
    if incoming != 0 and incoming == state.current:
        empties = [i for i in range(L) if state.buffer[i, W - 1] == 0]
        if empties:
            bits = np.zeros(2 * L, dtype=bool)
            for i in empties:
                bits[L + i] = True
            return bits
    return np.ones(2 * L, dtype=bool)


def mask_greedy_storage(state: ShopState) -> np.ndarray:
    """Restrict to stores behind a lane's most recently stored car of the
    incoming color (the rearmost occupied cell, which must have a free cell
    before it)."""
    inst = state.instance
    L, W = inst.lanes, inst.width
    incoming = state.next_color()
    if incoming != 0:
        qualifying = []
        for i in range(L):
            row = state.buffer[i]
            if row[0] != 0 or row[W - 1] == 0:
                continue  # full or empty lane
            j = 0
            while row[j] == 0:
                j += 1
            if row[j] == incoming:
                qualifying.append(i)
        if qualifying:
            bits = np.zeros(2 * L, dtype=bool)
            for i in qualifying:
                bits[L + i] = True
            return bits
    return np.ones(2 * L, dtype=bool)


def combine_and(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    if m1.shape != m2.shape:
        raise ValueError("masks must cover the same action space")
    return m1 & m2


def combine_priority(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    if m1.shape != m2.shape:
        raise ValueError("masks must cover the same action space")
    return m1.copy() if not m1.all() else m2.copy()


def full_mask(state: ShopState, variant: str = "all") -> np.ndarray:
    """The configured mask stack.

    ``all`` composes inv AND ((greedy-retrieval PRIO fast-track) PRIO
    greedy-storage); the weaker variants drop masks from the right.  At a
    terminal state the result is all-zero, so callers must check
    ``is_terminal`` first.
    """
    if variant == "none":
        return np.ones(2 * state.instance.lanes, dtype=bool)
    inv = mask_invalid(state)
    if variant == "inv":
        return inv
    chain = mask_greedy_retrieval(state)
    if variant in ("inv-gr-ft", "all"):
        chain = combine_priority(chain, mask_fast_track(state))
    if variant == "all":
        chain = combine_priority(chain, mask_greedy_storage(state))
    elif variant != "inv-gr":
        raise ValueError(f"unknown mask variant {variant!r}; choose from {MASK_VARIANTS}")
    return combine_and(inv, chain)


def fast_mask(state: ShopState, variant_num: int, out: np.ndarray | None = None) -> np.ndarray:
    """Kernel-backed equivalent of :func:`full_mask` for hot loops."""
    if out is None:
        out = np.empty(2 * state.instance.lanes, dtype=np.uint8)
    engine.compute_mask(state.buffer, state.upstream, state.pos, state.current,
                        variant_num, out)
    return out
