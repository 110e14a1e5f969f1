"""Pure-Python assembly kernel.

Operates on a dense local grid with interned glue ids (0 = null glue).
``_kernel.pyx`` implements the identical contract; the two must stay
byte-for-byte equivalent in observable behaviour (see
tests/test_kernel_equivalence.py).

Grid layout: flat index ``iy * w + ix``.  ``gn/ge/gs/gw[i]`` hold the glue
presented *by* cell ``i`` on that side; an empty cell presents nothing.
"""

import heapq

MASK64 = (1 << 64) - 1

POLICY_RASTER = 0
POLICY_RANDOM = 1


def _mix(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, (z ^ (z >> 31)) & MASK64


def assemble(
    w,
    h,
    occ,
    gn,
    ge,
    gs,
    gw,
    tn,
    te,
    ts,
    tw,
    dirty0,
    policy,
    seed,
    max_steps,
    strict,
):
    """Run cooperative attachment to a terminal assembly.

    Returns (placements, nondet_step, nondet_idx, mismatches, budget_hit)
    where placements is a list of (flat_index, tile_index) in order,
    nondet_step is -1 if every frontier position always admitted at most
    one tile type, and mismatches lists (flat_index, side_index) pairs of
    non-null unequal glue abutments created by placements (side order
    N, E, S, W).
    """
    ntiles = len(tn)
    size = w * h
    cand = {}
    heap = []
    rng = (seed ^ 0x5DEECE66D) & MASK64

    nondet_step = -1
    nondet_idx = -1
    mismatches = []
    placements = []
    budget_hit = False

    def candidates_at(idx):
        ix = idx % w
        iy = idx // w
        a_n = gs[idx + w] if iy + 1 < h else 0
        a_e = gw[idx + 1] if ix + 1 < w else 0
        a_s = gn[idx - w] if iy >= 1 else 0
        a_w = ge[idx - 1] if ix >= 1 else 0
        if (a_n != 0) + (a_e != 0) + (a_s != 0) + (a_w != 0) < 2:
            return ()
        out = []
        for t in range(ntiles):
            m = 0
            bad = False
            g = tn[t]
            if a_n != 0:
                if a_n == g:
                    m += 1
                elif g != 0:
                    bad = True
            g = te[t]
            if a_e != 0:
                if a_e == g:
                    m += 1
                elif g != 0:
                    bad = True
            g = ts[t]
            if a_s != 0:
                if a_s == g:
                    m += 1
                elif g != 0:
                    bad = True
            g = tw[t]
            if a_w != 0:
                if a_w == g:
                    m += 1
                elif g != 0:
                    bad = True
            if m >= 2 and not (strict and bad):
                out.append(t)
        return tuple(out)

    def refresh(batch, step):
        nonlocal nondet_step, nondet_idx
        offender = -1
        for idx in batch:
            if occ[idx] != 0:
                continue
            cs = candidates_at(idx)
            if cs:
                if idx not in cand:
                    heapq.heappush(heap, idx)
                cand[idx] = cs
                if len(cs) > 1 and nondet_step < 0:
                    if offender < 0 or idx < offender:
                        offender = idx
            elif idx in cand:
                del cand[idx]
        if offender >= 0 and nondet_step < 0:
            nondet_step = step
            nondet_idx = offender

    refresh(sorted(set(dirty0)), 0)

    steps = 0
    while cand:
        if steps >= max_steps:
            budget_hit = True
            break
        if policy == POLICY_RASTER:
            while heap:
                idx = heap[0]
                if idx in cand:
                    break
                heapq.heappop(heap)
            idx = heap[0]
            tile = cand[idx][0]
        else:
            keys = sorted(cand)
            rng, z = _mix(rng)
            idx = keys[z % len(keys)]
            cs = cand[idx]
            if len(cs) == 1:
                tile = cs[0]
            else:
                rng, z = _mix(rng)
                tile = cs[z % len(cs)]

        # Commit the attachment.
        ix = idx % w
        iy = idx // w
        a_n = gs[idx + w] if iy + 1 < h else 0
        a_e = gw[idx + 1] if ix + 1 < w else 0
        a_s = gn[idx - w] if iy >= 1 else 0
        a_w = ge[idx - 1] if ix >= 1 else 0
        for side, a, g in (
            (0, a_n, tn[tile]),
            (1, a_e, te[tile]),
            (2, a_s, ts[tile]),
            (3, a_w, tw[tile]),
        ):
            if a != 0 and g != 0 and a != g:
                mismatches.append((idx, side))
        occ[idx] = 2
        gn[idx] = tn[tile]
        ge[idx] = te[tile]
        gs[idx] = ts[tile]
        gw[idx] = tw[tile]
        del cand[idx]
        placements.append((idx, tile))
        steps += 1

        batch = []
        if iy + 1 < h and occ[idx + w] == 0:
            batch.append(idx + w)
        if ix >= 1 and occ[idx - 1] == 0:
            batch.append(idx - 1)
        if iy >= 1 and occ[idx - w] == 0:
            batch.append(idx - w)
        if ix + 1 < w and occ[idx + 1] == 0:
            batch.append(idx + 1)
        refresh(sorted(batch), steps)

    return placements, nondet_step, nondet_idx, mismatches, budget_hit
