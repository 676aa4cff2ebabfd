"""
Detection metrics on time-frequency boxes: all-points interpolated average
precision, mAP over IoU thresholds 0.50:0.05:0.95, precision / recall and a
confusion matrix with a background class.
"""
import numpy as np

from .matching import match_detections
from specsense.iqcore import ModulationClass

IOU_THRESHOLDS = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))
BACKGROUND = 'background'


def average_precision(dets, truths, iou_thresh, class_aware=False):
    """
    Area under the precision-recall curve after replacing each precision
    by the best precision at equal or higher recall.

    No truths and no detections gives 1; no truths with detections gives 0.
    """
    if not truths:
        return 0.0 if dets else 1.0
    if not dets:
        return 0.0
    matches = match_detections(dets, truths, iou_thresh, class_aware)
    tp = np.array([j is not None for _, j in matches], dtype=float)
    cum_tp = np.cumsum(tp)
    recall = cum_tp / len(truths)
    precision = cum_tp / np.arange(1, len(tp) + 1)
    mrec = np.concatenate([[0.0], recall, [1.0]])
    mpre = np.concatenate([[0.0], precision, [0.0]])
    mpre = np.maximum.accumulate(mpre[::-1])[::-1]
    steps = np.nonzero(mrec[1:] != mrec[:-1])[0]
    return float(np.sum((mrec[steps + 1] - mrec[steps]) * mpre[steps + 1]))


def ap_per_iou(dets, truths, thresholds=IOU_THRESHOLDS, class_aware=False):
    return {t: average_precision(dets, truths, t, class_aware)
            for t in thresholds}


def map_50_95(dets, truths, class_aware=False):
    """Mean AP over the ten IoU thresholds 0.50, 0.55, ..., 0.95"""
    aps = ap_per_iou(dets, truths, class_aware=class_aware)
    return float(np.mean(list(aps.values())))


def precision_recall_at(dets, truths, iou_thresh=0.5, conf_thresh=0.0):
    """(precision, recall) counting matches among detections with
    confidence >= conf_thresh"""
    kept = [d for d in dets if d.confidence >= conf_thresh]
    matches = match_detections(kept, truths, iou_thresh)
    n_tp = sum(1 for _, j in matches if j is not None)
    if kept:
        precision = n_tp / len(kept)
    else:
        precision = 0.0 if truths else 1.0
    recall = n_tp / len(truths) if truths else 1.0
    return precision, recall


def per_class_ap(dets, truths, thresholds=IOU_THRESHOLDS):
    """{class label: {iou threshold: AP}} for every class present among
    the truths or the detections"""
    present = {t.class_label for t in truths} | {d.class_label for d in dets}
    rv = {}
    for cls in ModulationClass:
        if cls not in present:
            continue
        cdets = [d for d in dets if d.class_label is cls]
        ctruths = [t for t in truths if t.class_label is cls]
        rv[cls.value] = ap_per_iou(cdets, ctruths, thresholds)
    return rv


def class_averaged_map(dets, truths):
    """Mean over the classes present in the truths of their mAP@0.5:0.95"""
    classes = {t.class_label.value for t in truths}
    if not classes:
        return map_50_95(dets, truths)
    table = per_class_ap(dets, truths)
    return float(np.mean([np.mean(list(table[c].values()))
                          for c in sorted(classes)]))


def confusion_labels():
    return [c.value for c in ModulationClass] + [BACKGROUND]


def confusion_matrix(dets, truths, iou_thresh=0.5):
    """
    (N_cls + 1) x (N_cls + 1) counts, rows = true class, columns =
    predicted class, the last row / column being background.  Matching is
    class agnostic.
    """
    labels = confusion_labels()
    index = {c: i for i, c in enumerate(ModulationClass)}
    background = len(labels) - 1
    counts = np.zeros((len(labels), len(labels)), dtype=int)
    matched = set()
    for i, j in match_detections(dets, truths, iou_thresh):
        pred = index[dets[i].class_label]
        if j is None:
            counts[background, pred] += 1
        else:
            matched.add(j)
            counts[index[truths[j].class_label], pred] += 1
    for j, truth in enumerate(truths):
        if j not in matched:
            counts[index[truth.class_label], background] += 1
    return counts
