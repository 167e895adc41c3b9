"""Pure-Python longest-match kernel (reference and fallback)."""

ONE, OPT, STAR = 0, 1, 2


def longest_ends(sat, n, ops):
    """Longest match end for every start position.

    ``sat`` is a row-major ``len(ops) x n`` byte matrix: ``sat[i*n + j]`` is
    nonzero when constraint ``i`` accepts token ``j``. ``ops`` holds one opcode
    per constraint. Returns a list of ``n`` ends (exclusive), ``-1`` where no
    non-empty match starts.
    """
    k = len(ops)
    accept = 1 << k
    closure = [0] * (k + 1)
    closure[k] = accept
    for i in range(k - 1, -1, -1):
        closure[i] = (1 << i) | (closure[i + 1] if ops[i] != ONE else 0)
    star = 0
    for i in range(k):
        if ops[i] == STAR:
            star |= 1 << i
    step = ~star
    tokmask = [0] * n
    for i in range(k):
        bit = 1 << i
        row = i * n
        for j in range(n):
            if sat[row + j]:
                tokmask[j] |= bit

    def close(mask):
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= closure[i]
            mask >>= 1
            i += 1
        return out

    start_state = closure[0]
    ends = [-1] * n
    for s in range(n):
        cur = start_state
        best = -1
        j = s
        while True:
            if cur & accept:
                best = j
            if j == n:
                break
            live = cur & tokmask[j]
            if not live:
                break
            cur = close(((live & step) << 1) | (live & star))
            j += 1
        if best > s:
            ends[s] = best
    return ends
