"""
Time-frequency box overlap and greedy non-maximum suppression
"""
from . import log
from specsense.iqcore import as_box
from specsense.specfront import hz_to_warp


def tf_iou(a, b):
    """Intersection over union of two (t_start, t_end, f_start, f_end)
    rectangles

    >>> tf_iou((0, 1, 0, 1), (0.5, 1.5, 0, 1))
    0.3333333333333333
    """
    at0, at1, af0, af1 = as_box(a)
    bt0, bt1, bf0, bf1 = as_box(b)
    dt = min(at1, bt1) - max(at0, bt0)
    df = min(af1, bf1) - max(af0, bf0)
    if dt <= 0 or df <= 0:
        return 0.0
    inter = dt * df
    union = (at1 - at0) * (af1 - af0) + (bt1 - bt0) * (bf1 - bf0) - inter
    if union <= 0:
        return 0.0
    return min(1.0, inter / union)


def warped_box(box, grid):
    t0, t1, f0, f1 = as_box(box)
    return (t0, t1, hz_to_warp(grid, f0), hz_to_warp(grid, f1))


def tf_iou_weighted(a, b, grid):
    """IoU measured with frequency in warped-bin units, so overlap in a
    dense region of the grid counts for more than the same overlap in Hz
    in a sparse region"""
    return tf_iou(warped_box(a, grid), warped_box(b, grid))


def _nms_key(p):
    return (-p.confidence, p.t_start_s, p.f_start_hz)


def nms(proposals, iou_thresh, grid=None):
    """
    Greedy suppression: visit proposals by descending confidence (ties by
    earlier t_start, then lower f_start) and keep a proposal unless its
    weighted IoU with an already kept one exceeds `iou_thresh`.
    Without a `grid` the plain tf_iou is used.
    """
    if grid is None:
        def iou(a, b):
            return tf_iou(a, b)
    else:
        def iou(a, b):
            return tf_iou_weighted(a, b, grid)
    keep = []
    for p in sorted(proposals, key=_nms_key):
        if all(iou(p, k) <= iou_thresh for k in keep):
            keep.append(p)
    log.debug("nms", extra=dict(
        n_in=len(proposals), n_out=len(keep), iou_thresh=iou_thresh))
    return keep
