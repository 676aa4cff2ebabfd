from . import log
from specsense.proposer import tf_iou


def by_confidence(dets):
    """Detection indices by descending confidence; ties keep input order"""
    return sorted(range(len(dets)), key=lambda i: -dets[i].confidence)


def match_detections(dets, truths, iou_thresh, class_aware=False):
    """
    Greedy matching.  Detections are visited by descending confidence and
    each takes the still unmatched truth with the highest plain tf_iou, if
    that IoU is at least `iou_thresh` (ties go to the lower truth index).

    Returns [(det_index, truth_index or None), ...] in visiting order.
    With `class_aware`, a detection may only match a truth of its class.
    """
    taken = set()
    rv = []
    for i in by_confidence(dets):
        best, best_iou = None, -1.0
        for j, truth in enumerate(truths):
            if j in taken:
                continue
            if class_aware and truth.class_label != dets[i].class_label:
                continue
            iou = tf_iou(dets[i], truth)
            if iou >= iou_thresh and iou > best_iou:
                best, best_iou = j, iou
        if best is not None:
            taken.add(best)
        rv.append((i, best))
    log.debug("matched detections", extra=dict(
        n_dets=len(dets), n_truths=len(truths), n_matched=len(taken),
        iou_thresh=iou_thresh))
    return rv
