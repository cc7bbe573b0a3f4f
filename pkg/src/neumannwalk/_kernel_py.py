"""Pure-Python (numpy) walk kernel: lockstep batches of trajectories.

Fallback engine used when the compiled extension is unavailable.  It
reproduces the reference semantics of :mod:`neumannwalk.walk` draw for draw
and is bit-identical to the compiled kernel: reductions over coordinates are
written as explicit per-coordinate loops so the floating-point operation
order matches the C code.
"""

from __future__ import annotations

import math

import numpy as np

from . import streams
from .walk import WalkMode, WalkStatus


def run_batch(domain, datum, u_poly, x0, rp, keys, checkpoints):
    """Run ``len(keys)`` trajectories from ``x0`` in lockstep.

    Returns a dict of per-trajectory arrays: score, hits, steps, status,
    clamps, exit_pos, exit_step, ck_value, ck_hits.
    """
    n = len(keys)
    d = domain.dimension
    reflecting = rp.mode == WalkMode.REFLECTING
    sqrt_h = rp.sqrt_h
    layer = rp.layer_width
    n_ck = len(checkpoints)

    pos = np.tile(np.asarray(x0, dtype=float), (n, 1))
    counters = np.zeros(n, dtype=np.uint64)
    score = np.zeros(n)
    hits = np.zeros(n, dtype=np.int64)
    clamps = np.zeros(n, dtype=np.int64)
    status = np.full(n, int(WalkStatus.RUNNING), dtype=np.int8)
    steps = np.zeros(n, dtype=np.int64)
    exit_pos = np.full((n, d), np.nan)
    exit_step = np.full(n, -1, dtype=np.int64)
    ck_value = np.zeros((n, n_ck))
    ck_hits = np.zeros((n, n_ck), dtype=np.int64)

    active = np.arange(n)
    k = 0
    ck_idx = 0
    while len(active):
        P = pos[active]
        inside = domain.contains_many(P)
        zone = domain.zone_many(P, rp.h, conservative=rp.conservative_zone)
        needs = zone | ~inside

        if np.any(needs):
            rows = active[needs]
            Pz = pos[rows]
            ypi, eta = domain.project_many(Pz)
            den_sq = np.zeros(len(rows))
            for i in range(d):
                diff = Pz[:, i] + layer * eta[:, i] - ypi[:, i]
                den_sq += diff * diff
            p = layer / np.sqrt(den_sq)
            clamped = p > 1.0
            clamps[rows] += clamped
            p = np.where(clamped, 1.0, p)
            u = streams.uniform_from_words(streams.words_at(keys[rows], counters[rows]))
            counters[rows] += np.uint64(1)
            to_b = u < p

            if np.any(to_b):
                brows = rows[to_b]
                bpi = ypi[to_b]
                beta = eta[to_b]
                hits[brows] += 1
                if reflecting:
                    fvals = datum.eval_many(bpi, -beta)
                    if not np.all(np.isfinite(fvals)):
                        bad = bpi[~np.isfinite(fvals)][0]
                        raise ValueError(
                            f"boundary datum produced a non-finite value at {bad}"
                        )
                    score[brows] = score[brows] + layer * fvals
                    reentry = np.empty_like(bpi)
                    for i in range(d):
                        reentry[:, i] = bpi[:, i] + layer * beta[:, i]
                    pos[brows] = reentry
                    bad = ~domain.contains_many(reentry)
                    if np.any(bad):
                        status[brows[bad]] = int(WalkStatus.GEOMETRY_ERROR)
                        steps[brows[bad]] = k
                else:
                    status[brows] = int(WalkStatus.ABSORBED)
                    exit_pos[brows] = bpi
                    exit_step[brows] = k
                    steps[brows] = k
                    pos[brows] = bpi

            defl = ~to_b
            if np.any(defl):
                drows = rows[defl]
                base = ypi[defl] if rp.deflect_from_projection else Pz[defl]
                deta = eta[defl]
                target = np.empty_like(base)
                for i in range(d):
                    target[:, i] = base[:, i] + layer * deta[:, i]
                pos[drows] = target
                bad = ~domain.contains_many(target)
                if np.any(bad):
                    status[drows[bad]] = int(WalkStatus.GEOMETRY_ERROR)
                    steps[drows[bad]] = k

        # drop finished trajectories (absorbed or geometry-errored)
        still = status[active] == int(WalkStatus.RUNNING)
        if not np.all(still):
            active = active[still]
            if len(active) == 0:
                k_done = k
                # checkpoints beyond the stop record the frozen state
                while ck_idx < n_ck:
                    _record_ck(ck_value, ck_hits, ck_idx, slice(None), score, hits, pos, u_poly)
                    ck_idx += 1
                break

        while ck_idx < n_ck and checkpoints[ck_idx] == k:
            _record_ck(ck_value, ck_hits, ck_idx, slice(None), score, hits, pos, u_poly)
            ck_idx += 1

        if reflecting and k >= rp.n_steps:
            status[active] = int(WalkStatus.HORIZON_REACHED)
            steps[active] = k
            break
        if k >= rp.max_steps:
            status[active] = int(WalkStatus.CENSORED)
            steps[active] = k
            break

        words = streams.words_at(
            keys[active][:, None],
            counters[active][:, None] + np.arange(d, dtype=np.uint64)[None, :],
        )
        counters[active] += np.uint64(d)
        xi = streams.signs_from_words(words)
        pos[active] = pos[active] + sqrt_h * xi
        k += 1

    while ck_idx < n_ck:
        _record_ck(ck_value, ck_hits, ck_idx, slice(None), score, hits, pos, u_poly)
        ck_idx += 1

    return {
        "score": score,
        "hits": hits,
        "steps": steps,
        "status": status,
        "clamps": clamps,
        "exit_pos": exit_pos,
        "exit_step": exit_step,
        "ck_value": ck_value,
        "ck_hits": ck_hits,
    }


def _record_ck(ck_value, ck_hits, idx, rows, score, hits, pos, u_poly):
    if u_poly is not None and u_poly.n_terms:
        ck_value[rows, idx] = score[rows] + u_poly(pos[rows])
    else:
        ck_value[rows, idx] = score[rows]
    ck_hits[rows, idx] = hits[rows]
