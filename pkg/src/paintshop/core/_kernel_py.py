"""Pure-Python simulation kernel.

Fallback twin of the compiled kernel in ``_kernel_cy.pyx``.  Both modules
expose the same four functions with identical semantics; the backend is
picked in :mod:`paintshop.core.engine` at import time.

Conventions shared by both kernels:

* ``buffer`` is an ``(L, W)`` int32 grid, column ``W-1`` is the exit slot and
  lanes are right-packed (occupied cells form a suffix of each row).
* ``kind`` is 0 for retrieve, 1 for store; ``lane`` is 0-based.
* An invalid action leaves the buffer untouched and earns reward -10.
"""

KIND_RETRIEVE = 0
KIND_STORE = 1

INVALID_REWARD = -10

# mask variant codes, ordered by how much they restrict
VARIANT_NONE = 0
VARIANT_INV = 1
VARIANT_INV_GR = 2
VARIANT_INV_GR_FT = 3
VARIANT_ALL = 4


def step(buffer, upstream, pos, current, kind, lane):
    """Apply one action in place.

    Returns ``(reward, pos, current, emitted)`` where ``emitted`` is the
    retrieved color (0 for stores and invalid actions).
    """
    W = buffer.shape[1]
    if kind == KIND_STORE:
        if pos >= upstream.shape[0] or buffer[lane, 0] != 0:
            return INVALID_REWARD, pos, current, 0
        j = W - 1
        while buffer[lane, j] != 0:
            j -= 1
        buffer[lane, j] = upstream[pos]
        return 0, pos + 1, current, 0
    color = int(buffer[lane, W - 1])
    if color == 0:
        return INVALID_REWARD, pos, current, 0
    for j in range(W - 1, 0, -1):
        buffer[lane, j] = buffer[lane, j - 1]
    buffer[lane, 0] = 0
    reward = 1 if color == current else 0
    return reward, pos, color, color


def compute_mask(buffer, upstream, pos, current, variant, out):
    """Fill ``out`` (uint8, length 2L) with the requested action mask.

    Retrieve bits occupy ``out[0:L]``, store bits ``out[L:2L]``.  The variant
    codes correspond to the mask stacks: plain validity, then greedy
    retrieval, fast-track and greedy storage layered on top in priority
    order.
    """
    L, W = buffer.shape
    if variant == VARIANT_NONE:
        for k in range(2 * L):
            out[k] = 1
        return
    upstream_left = pos < upstream.shape[0]
    for i in range(L):
        out[i] = 1 if buffer[i, W - 1] != 0 else 0
        out[L + i] = 1 if (upstream_left and buffer[i, 0] == 0) else 0
    if variant == VARIANT_INV:
        return
    if current != 0:
        matched = False
        for i in range(L):
            if buffer[i, W - 1] == current:
                matched = True
                break
        if matched:
            for i in range(L):
                out[i] = 1 if buffer[i, W - 1] == current else 0
                out[L + i] = 0
            return
    if variant == VARIANT_INV_GR:
        return
    incoming = int(upstream[pos]) if upstream_left else 0
    if incoming != 0 and incoming == current:
        any_empty = False
        for i in range(L):
            if buffer[i, W - 1] == 0:
                any_empty = True
                break
        if any_empty:
            for i in range(L):
                out[i] = 0
                out[L + i] = 1 if buffer[i, W - 1] == 0 else 0
            return
    if variant == VARIANT_INV_GR_FT:
        return
    if incoming != 0:
        matched = False
        for i in range(L):
            if buffer[i, 0] == 0 and buffer[i, W - 1] != 0:
                # rearmost occupied cell of a right-packed, non-full lane
                j = 0
                while buffer[i, j] == 0:
                    j += 1
                if buffer[i, j] == incoming:
                    matched = True
                    break
        if matched:
            for i in range(L):
                out[i] = 0
                ok = 0
                if buffer[i, 0] == 0 and buffer[i, W - 1] != 0:
                    j = 0
                    while buffer[i, j] == 0:
                        j += 1
                    if buffer[i, j] == incoming:
                        ok = 1
                out[L + i] = ok


def encode_obs(buffer, upstream, pos, current, lookahead, colors, out):
    """One-hot encode (buffer cells, next ``lookahead`` cars, current color).

    ``out`` must have length ``(L*W + lookahead + 1) * colors``; empty cells,
    exhausted upstream positions and the no-color-yet marker all map to an
    all-zero block.
    """
    L, W = buffer.shape
    n = upstream.shape[0]
    for k in range(out.shape[0]):
        out[k] = 0.0
    block = 0
    for i in range(L):
        for j in range(W):
            v = buffer[i, j]
            if v != 0:
                out[block * colors + v - 1] = 1.0
            block += 1
    for k in range(lookahead):
        if pos + k < n:
            v = upstream[pos + k]
            out[block * colors + v - 1] = 1.0
        block += 1
    if current != 0:
        out[block * colors + current - 1] = 1.0


def replay_stats(upstream, start_buffer, pos, current, kinds, lanes, scratch):
    """Replay an action trace without materializing the downstream sequence.

    ``scratch`` is an ``(L, W)`` work grid overwritten with ``start_buffer``.
    Returns ``(color_changes, first_invalid, terminal)`` where
    ``first_invalid`` is -1 when every action was valid and ``terminal`` is 1
    when the trace drains both the upstream sequence and the buffer.
    """
    L, W = start_buffer.shape
    for i in range(L):
        for j in range(W):
            scratch[i, j] = start_buffer[i, j]
    changes = 0
    first_invalid = -1
    n_actions = kinds.shape[0]
    for t in range(n_actions):
        reward, pos, new_current, emitted = step(
            scratch, upstream, pos, current, kinds[t], lanes[t]
        )
        if reward == INVALID_REWARD:
            if first_invalid < 0:
                first_invalid = t
            continue
        if emitted != 0:
            if current != 0 and emitted != current:
                changes += 1
            current = new_current
    terminal = 1
    if pos < upstream.shape[0]:
        terminal = 0
    else:
        for i in range(L):
            if scratch[i, W - 1] != 0:
                terminal = 0
                break
    return changes, first_invalid, terminal
