from dataclasses import dataclass

import numpy as np

from . import log
from .metrics import (
    IOU_THRESHOLDS, ap_per_iou, class_averaged_map, confusion_labels,
    confusion_matrix, per_class_ap, precision_recall_at)
from specsense import util


def _iou_key(t):
    return '%.2f' % t


@dataclass(frozen=True)
class EvalReport:
    """
    `ap_per_iou` - {iou threshold: class agnostic AP}
    `map_50_95` - mean of ap_per_iou
    `per_class_ap` - {class label: {iou threshold: AP}}
    `class_map_50_95` - mean over ground-truth classes of their mAP
    `confusion` - rows true class, columns predicted, labels in
        `confusion_labels` (the last one is background)
    """
    ap_per_iou: dict
    map_50_95: float
    precision_50: float
    recall_50: float
    per_class_ap: dict
    class_map_50_95: float
    confusion: tuple
    confusion_labels: tuple
    n_detections: int = 0
    n_truths: int = 0

    def to_dict(self):
        return dict(
            ap_per_iou={_iou_key(k): v for k, v in self.ap_per_iou.items()},
            map_50_95=self.map_50_95,
            precision_50=self.precision_50,
            recall_50=self.recall_50,
            per_class_ap={
                c: {_iou_key(k): v for k, v in aps.items()}
                for c, aps in self.per_class_ap.items()},
            class_map_50_95=self.class_map_50_95,
            confusion=[list(row) for row in self.confusion],
            confusion_labels=list(self.confusion_labels),
            n_detections=self.n_detections,
            n_truths=self.n_truths)


def evaluate(dets, truths, conf_thresh=0.0):
    """The full EvalReport of `dets` against `truths`"""
    aps = ap_per_iou(dets, truths, IOU_THRESHOLDS)
    precision, recall = precision_recall_at(dets, truths, 0.5, conf_thresh)
    counts = confusion_matrix(dets, truths, 0.5)
    report = EvalReport(
        ap_per_iou=aps,
        map_50_95=float(np.mean(list(aps.values()))),
        precision_50=precision, recall_50=recall,
        per_class_ap=per_class_ap(dets, truths),
        class_map_50_95=class_averaged_map(dets, truths),
        confusion=tuple(tuple(int(c) for c in row) for row in counts),
        confusion_labels=tuple(confusion_labels()),
        n_detections=len(dets), n_truths=len(truths))
    log.info("evaluated detections", extra=dict(
        map_50_95=report.map_50_95, precision_50=precision,
        recall_50=recall, n_detections=len(dets), n_truths=len(truths)))
    return report


def write_report(report, path):
    util.ensure_parent_dir(path)
    util.write_json(path, report.to_dict())
    log.info("wrote evaluation report", extra=dict(path=path))
