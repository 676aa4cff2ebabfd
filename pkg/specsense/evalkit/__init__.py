"""
Evaluation of detections against ground truth with plain time-frequency
IoU: greedy matching, AP / mAP@0.5:0.95, precision / recall, confusion
counts and json reports.
"""
import logging
log = logging.getLogger('specsense.evalkit')

from .matching import match_detections
match_detections

from .metrics import (
    IOU_THRESHOLDS, BACKGROUND, average_precision, ap_per_iou, map_50_95,
    precision_recall_at, per_class_ap, class_averaged_map,
    confusion_matrix, confusion_labels)
IOU_THRESHOLDS, BACKGROUND, average_precision, ap_per_iou, map_50_95
precision_recall_at, per_class_ap, class_averaged_map, confusion_matrix
confusion_labels

from .report import EvalReport, evaluate, write_report
EvalReport, evaluate, write_report

from .detections_file import (
    read_detections, write_detections, detection_to_document)
read_detections, write_detections, detection_to_document
