"""Pure-Python reference kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or when ``HDCHECKERBOARD_PURE_PYTHON`` is set.
Counts are Python ints, so there is no overflow ceiling here.
"""
from __future__ import annotations

from collections import defaultdict
from itertools import product

NAME = "python"


def dp_counts(n_links, steps, start, factor, mul):
    """Transfer-matrix sweep over (link-count vector, last link, corners, sign).

    ``factor[prev][nxt]`` is the group index of the weight picked up by a
    corner from ``prev`` to ``nxt``; ``mul`` is the group multiplication
    table (index 0 is the identity). Weights are appended on the right.

    Returns ``{link_count_vector: {(corners, group_index): path_count}}``.
    """
    state = {((0,) * n_links, start, 0, 0): 1}
    for _ in range(steps):
        nxt = defaultdict(int)
        for (vec, last, corners, g), count in state.items():
            for d in range(n_links):
                moved = vec[:d] + (vec[d] + 1,) + vec[d + 1:]
                if d == last:
                    nxt[(moved, d, corners, g)] += count
                else:
                    nxt[(moved, d, corners + 1, mul[g][factor[last][d]])] += count
        state = nxt
    out = defaultdict(lambda: defaultdict(int))
    for (vec, _, corners, g), count in state.items():
        out[vec][(corners, g)] += count
    return {vec: dict(cells) for vec, cells in out.items()}


def _in_dn(h):
    # h in half-units: integer coords with even sum
    total = 0
    for x in h:
        if x & 1:
            return False
        total += x
    return total % 4 == 0


def _in_nhd(h):
    return _in_dn(h) or _in_dn([x - 1 for x in h])


def _shift_first(h):
    return [h[0] - 2] + list(h[1:])


def decomposition_scan(radius_halves):
    """Scan the half-integer box ``|x_i| <= radius_halves / 2`` in 8 dimensions.

    Only points whose two 4-blocks are each all-integer or all-half-odd are
    visited; any other point lies outside every set compared here.

    Returns ``(counts, d8_only, rhs20_only, e8_only, hd_sum_only)`` where the
    lists hold half-unit tuples and ``counts`` maps set names to sizes.
    """
    r = radius_halves
    blocks = []
    for parity in (0, 1):
        vals = [v for v in range(-r, r + 1) if (v & 1) == parity]
        blocks.extend(product(vals, repeat=4))
    counts = {"candidates": 0, "d8": 0, "rhs20": 0, "e8": 0, "hd_sum": 0}
    d8_only, rhs_only, e8_only, hd_only = [], [], [], []
    for a in blocks:
        for b in blocks:
            h = a + b
            counts["candidates"] += 1
            in_d8 = _in_dn(h)
            in_rhs = ((_in_dn(a) and _in_dn(b))
                      or (_in_dn(_shift_first(a)) and _in_dn(_shift_first(b))))
            in_e8 = in_d8 or _in_dn([x - 1 for x in h])
            in_hd = _in_nhd(a) and _in_nhd(b)
            counts["d8"] += in_d8
            counts["rhs20"] += in_rhs
            counts["e8"] += in_e8
            counts["hd_sum"] += in_hd
            if in_d8 and not in_rhs:
                d8_only.append(h)
            elif in_rhs and not in_d8:
                rhs_only.append(h)
            if in_e8 and not in_hd:
                e8_only.append(h)
            elif in_hd and not in_e8:
                hd_only.append(h)
    return counts, d8_only, rhs_only, e8_only, hd_only
