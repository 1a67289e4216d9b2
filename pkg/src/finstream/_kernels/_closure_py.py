"""Pure-Python transitive-reflexive closure on bitmask rows."""


def closure_rows(rows, n):
    """Close a relation given as successor bitmasks, one int row per point.

    Returns a tuple of rows containing the diagonal and closed under
    composition (bit-parallel Warshall). Rows may be arbitrary-width ints,
    so carriers larger than 64 points work unchanged.
    """
    out = list(rows)
    for i in range(n):
        out[i] |= 1 << i
    for k in range(n):
        rk = out[k]
        bit = 1 << k
        for i in range(n):
            if out[i] & bit:
                out[i] |= rk
    return tuple(out)


BACKEND = "python"
