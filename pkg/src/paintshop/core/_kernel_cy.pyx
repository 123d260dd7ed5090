# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernel; see ``_kernel_py`` for the reference twin."""

cdef enum:
    KIND_RETRIEVE = 0
    KIND_STORE = 1
    INVALID_REWARD = -10
    VARIANT_NONE = 0
    VARIANT_INV = 1
    VARIANT_INV_GR = 2
    VARIANT_INV_GR_FT = 3
    VARIANT_ALL = 4


def step(int[:, ::1] buffer, const int[::1] upstream, int pos, int current,
         int kind, int lane):
    cdef int W = buffer.shape[1]
    cdef int j, color, reward
    if kind == KIND_STORE:
        if pos >= upstream.shape[0] or buffer[lane, 0] != 0:
            return INVALID_REWARD, pos, current, 0
        j = W - 1
        while buffer[lane, j] != 0:
            j -= 1
        buffer[lane, j] = upstream[pos]
        return 0, pos + 1, current, 0
    color = buffer[lane, W - 1]
    if color == 0:
        return INVALID_REWARD, pos, current, 0
    for j in range(W - 1, 0, -1):
        buffer[lane, j] = buffer[lane, j - 1]
    buffer[lane, 0] = 0
    reward = 1 if color == current else 0
    return reward, pos, color, color


def compute_mask(const int[:, ::1] buffer, const int[::1] upstream, int pos,
                 int current, int variant, unsigned char[::1] out):
    cdef int L = buffer.shape[0]
    cdef int W = buffer.shape[1]
    cdef int i, j, k, incoming
    cdef bint upstream_left, matched, any_empty, ok
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
    incoming = upstream[pos] if upstream_left else 0
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
                j = 0
                while buffer[i, j] == 0:
                    j += 1
                if buffer[i, j] == incoming:
                    matched = True
                    break
        if matched:
            for i in range(L):
                out[i] = 0
                ok = False
                if buffer[i, 0] == 0 and buffer[i, W - 1] != 0:
                    j = 0
                    while buffer[i, j] == 0:
                        j += 1
                    if buffer[i, j] == incoming:
                        ok = True
                out[L + i] = 1 if ok else 0


def encode_obs(const int[:, ::1] buffer, const int[::1] upstream, int pos,
               int current, int lookahead, int colors, double[::1] out):
    cdef int L = buffer.shape[0]
    cdef int W = buffer.shape[1]
    cdef int n = upstream.shape[0]
    cdef int i, j, k, v, block
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


def replay_stats(const int[::1] upstream, const int[:, ::1] start_buffer,
                 int pos, int current, const unsigned char[::1] kinds,
                 const int[::1] lanes, int[:, ::1] scratch):
    cdef int L = start_buffer.shape[0]
    cdef int W = start_buffer.shape[1]
    cdef int i, j, t, lane, color
    cdef int changes = 0
    cdef int first_invalid = -1
    cdef int terminal = 1
    cdef int n_actions = kinds.shape[0]
    for i in range(L):
        for j in range(W):
            scratch[i, j] = start_buffer[i, j]
    for t in range(n_actions):
        lane = lanes[t]
        if kinds[t] == KIND_STORE:
            if pos >= upstream.shape[0] or scratch[lane, 0] != 0:
                if first_invalid < 0:
                    first_invalid = t
                continue
            j = W - 1
            while scratch[lane, j] != 0:
                j -= 1
            scratch[lane, j] = upstream[pos]
            pos += 1
        else:
            color = scratch[lane, W - 1]
            if color == 0:
                if first_invalid < 0:
                    first_invalid = t
                continue
            for j in range(W - 1, 0, -1):
                scratch[lane, j] = scratch[lane, j - 1]
            scratch[lane, 0] = 0
            if current != 0 and color != current:
                changes += 1
            current = color
    if pos < upstream.shape[0]:
        terminal = 0
    else:
        for i in range(L):
            if scratch[i, W - 1] != 0:
                terminal = 0
                break
    return changes, first_invalid, terminal
