"""Pure-Python matching kernel on arbitrary-precision int bitmasks."""

NAME = "python"


def prepare(layout):
    return layout.groups, layout.start_bit, layout.accept_mask


def scan(handle, state, data, track=False, stop=False):
    """Advance ``state`` over every byte of ``data``.

    Returns ``(state, hit)`` where ``hit`` is the index of the first byte
    after which an accepting bit is set, or -1 (always -1 unless ``track``).
    With ``stop`` the scan ends at that byte.
    """
    groups, start, accept = handle
    if not track:
        for b in data:
            nxt = start
            for mask, bits in groups[b]:
                if state & mask:
                    nxt |= bits
            state = nxt
        return state, -1

    for n, b in enumerate(data):
        nxt = start
        for mask, bits in groups[b]:
            if state & mask:
                nxt |= bits
        state = nxt
        if state & accept:
            if stop:
                return state, n
            # first hit found; finish without the accept test
            rest, _ = scan(handle, state, memoryview(data)[n + 1 :])
            return rest, n
    return state, -1
