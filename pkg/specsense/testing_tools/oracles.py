"""
Slow, obviously-correct reference implementations that the test-suite
compares the library against.  Nothing here is vectorized cleverly.
"""
import numpy as np


def naive_dft(r):
    """O(N**2) unitary DFT"""
    r = np.asarray(r, dtype=np.complex128)
    n = len(r)
    k = np.arange(n)
    return np.array([
        np.sum(r * np.exp(-2j * np.pi * q * k / n)) for q in range(n)
    ]) / np.sqrt(n)


def direct_convolution(y, h):
    """Zero-phase FIR filtering by the defining sum, input length kept"""
    y = np.asarray(y)
    h = np.asarray(h)
    delay = (len(h) - 1) // 2
    out = np.zeros(len(y), dtype=np.result_type(y, h))
    for n in range(len(y)):
        acc = 0
        for k in range(len(h)):
            m = n + delay - k
            if 0 <= m < len(y):
                acc += h[k] * y[m]
        out[n] = acc
    return out


def scalar_interp_warp(X, grid, eps=1e-10, interpolation='complex'):
    """One grid point at a time: find the two neighbouring linear bins
    (the -F_s/2 bin repeats at +F_s/2) and interpolate between them"""
    values = np.asarray(X.values)
    axis = list(X.freq_axis_hz)
    df = axis[1] - axis[0]
    columns = [values[:, i] for i in range(values.shape[1])]
    if np.isclose(axis[0], -X.sample_rate_hz / 2) and \
            np.isclose(df * len(axis), X.sample_rate_hz):
        axis.append(axis[0] + X.sample_rate_hz)
        columns.append(values[:, 0])
    if interpolation == 'magnitude':
        columns = [np.abs(c) for c in columns]
    out = np.empty((values.shape[0], grid.n_points))
    for j, f in enumerate(grid.points_hz):
        pos = (f - axis[0]) / df
        if abs(pos - round(pos)) < 1e-9:
            pos = float(round(pos))
        i0 = min(int(np.floor(pos)), len(axis) - 2)
        w = pos - i0
        v = columns[i0] * (1 - w) + columns[i0 + 1] * w
        out[:, j] = np.log(np.abs(v) + eps)
    return out


def box_iou(a, b):
    """Plain IoU of two (t0, t1, f0, f1) tuples"""
    dt = min(a[1], b[1]) - max(a[0], b[0])
    df = min(a[3], b[3]) - max(a[2], b[2])
    inter = max(0.0, dt) * max(0.0, df)
    union = (a[1] - a[0]) * (a[3] - a[2]) + \
        (b[1] - b[0]) * (b[3] - b[2]) - inter
    return inter / union if union > 0 else 0.0


def exhaustive_greedy_nms(proposals, iou_thresh):
    """Pick the best remaining proposal, discard everything overlapping it
    by more than `iou_thresh`, repeat until nothing remains"""
    remaining = list(proposals)
    keep = []
    while remaining:
        best = min(remaining, key=lambda p: (
            -p.confidence, p.t_start_s, p.f_start_hz))
        keep.append(best)
        remaining = [
            p for p in remaining
            if p is not best and box_iou(p.box, best.box) <= iou_thresh]
    return keep


def greedy_match_reference(dets, truths, iou_thresh):
    order = sorted(range(len(dets)), key=lambda i: -dets[i].confidence)
    free = list(range(len(truths)))
    rv = []
    for i in order:
        scored = [(box_iou(dets[i].box, truths[j].box), -j) for j in free]
        scored = [s for s in scored if s[0] >= iou_thresh]
        if scored:
            j = -max(scored)[1]
            free.remove(j)
            rv.append((i, j))
        else:
            rv.append((i, None))
    return rv


def brute_force_ap(dets, truths, iou_thresh):
    """Enumerate every confidence cut-off, collect (recall, precision)
    points and integrate the monotone precision envelope"""
    if not truths:
        return 0.0 if dets else 1.0
    order = sorted(range(len(dets)), key=lambda i: -dets[i].confidence)
    points = []
    for k in range(1, len(order) + 1):
        prefix = [dets[i] for i in order[:k]]
        n_tp = sum(1 for _, j in greedy_match_reference(
            prefix, truths, iou_thresh) if j is not None)
        points.append((n_tp / len(truths), n_tp / k))
    ap, prev = 0.0, 0.0
    for k, (recall, _) in enumerate(points):
        if recall > prev:
            ap += (recall - prev) * max(p for _, p in points[k:])
            prev = recall
    return ap
