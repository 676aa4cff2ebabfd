import os

import numpy as np
import pytest
import simplejson

from specsense import testing_tools as tt
from specsense.evalkit import (
    BACKGROUND, IOU_THRESHOLDS, ap_per_iou, average_precision,
    class_averaged_map, confusion_labels, confusion_matrix, evaluate,
    map_50_95, match_detections, per_class_ap, precision_recall_at,
    read_detections, write_detections, write_report)
from specsense.exceptions import SchemaError, ValidationError
from specsense.iqcore import Detection, EmitterTruth, ModulationClass
from specsense.proposer import tf_iou
from specsense.util import write_json

LABELS = (ModulationClass.LORA, ModulationClass.NBFM, ModulationClass.ZIGBEE)


def _truth(t0, t1, f_c, bw, label=ModulationClass.LORA):
    return EmitterTruth(label, f_c_hz=f_c, bandwidth_hz=bw, t_start_s=t0,
                        t_end_s=t1, snr_db=10.0)


def _det(truth, confidence=1.0, label=None, **shift):
    fields = dict(t_start_s=truth.t_start_s, t_end_s=truth.t_end_s,
                  f_c_hz=truth.f_c_hz, bandwidth_hz=truth.bandwidth_hz)
    fields.update(shift)
    return Detection(class_label=label or truth.class_label,
                     confidence=confidence, **fields)


def _random_truths(rng, k):
    rv = []
    for _ in range(k):
        t0 = float(rng.uniform(0, 0.8))
        rv.append(_truth(
            t0, t0 + float(rng.uniform(0.05, 0.2)),
            float(rng.uniform(-2e6, 2e6)), float(rng.uniform(1e4, 5e5)),
            LABELS[int(rng.integers(len(LABELS)))]))
    return rv


def _random_dets(rng, truths, k):
    """Jittered copies of truths plus unrelated boxes"""
    rv = []
    for _ in range(k):
        if truths and rng.uniform() < 0.7:
            t = truths[int(rng.integers(len(truths)))]
            dur = t.t_end_s - t.t_start_s
            t0 = t.t_start_s + float(rng.normal(0, 0.1)) * dur
            rv.append(Detection(
                t_start_s=t0, t_end_s=t0 + dur * float(rng.uniform(0.7, 1.3)),
                f_c_hz=t.f_c_hz + float(rng.normal(0, 0.1)) * t.bandwidth_hz,
                bandwidth_hz=t.bandwidth_hz * float(rng.uniform(0.7, 1.3)),
                class_label=LABELS[int(rng.integers(len(LABELS)))],
                confidence=float(rng.uniform())))
        else:
            t0 = float(rng.uniform(0, 0.9))
            rv.append(Detection(
                t_start_s=t0, t_end_s=t0 + 0.1,
                f_c_hz=float(rng.uniform(-2e6, 2e6)), bandwidth_hz=1e5,
                class_label=ModulationClass.UNKNOWN,
                confidence=float(rng.uniform())))
    return rv


def test_match_perfect_and_empty():
    truths = [_truth(0.0, 0.1, 1e5, 1e4), _truth(0.2, 0.3, -1e5, 2e4)]
    dets = [_det(truths[0], 0.6), _det(truths[1], 0.9)]
    assert match_detections(dets, truths, 0.5) == [(1, 1), (0, 0)]
    assert match_detections([], truths, 0.5) == []
    assert match_detections(dets, [], 0.5) == [(1, None), (0, None)]


def test_match_class_aware():
    truth = _truth(0.0, 0.1, 1e5, 1e4, ModulationClass.LORA)
    det = _det(truth, label=ModulationClass.NBFM)
    assert match_detections([det], [truth], 0.5) == [(0, 0)]
    assert match_detections([det], [truth], 0.5, class_aware=True) == \
        [(0, None)]


@tt.with_setup
def test_match_agrees_with_reference(rng):
    for trial in range(50):
        truths = _random_truths(rng, 4)
        dets = _random_dets(rng, truths, 5)
        for thresh in (0.3, 0.5, 0.75):
            assert match_detections(dets, truths, thresh) == \
                tt.oracles.greedy_match_reference(dets, truths, thresh)


def test_average_precision_basics():
    truths = [_truth(0.0, 0.1, 1e5, 1e4), _truth(0.2, 0.3, -1e5, 2e4)]
    perfect = [_det(t, 0.9) for t in truths]
    assert average_precision(perfect, truths, 0.5) == 1.0
    far = [_det(t, 0.9, t_start_s=5.0, t_end_s=6.0) for t in truths]
    assert average_precision(far, truths, 0.5) == 0.0
    assert average_precision([], [], 0.5) == 1.0
    assert average_precision(perfect, [], 0.5) == 0.0
    assert average_precision([], truths, 0.5) == 0.0


def test_average_precision_by_hand():
    truths = [_truth(0.0, 0.1, 1e5, 1e4), _truth(0.2, 0.3, -1e5, 2e4)]
    dets = [
        _det(truths[0], 0.9),
        _det(truths[0], 0.8, f_c_hz=5e5),
        _det(truths[1], 0.7),
    ]
    # (recall, precision): (0.5, 1), (0.5, 0.5), (1, 2/3)
    assert average_precision(dets, truths, 0.5) == pytest.approx(
        0.5 + 0.5 * 2 / 3, abs=1e-12)
    assert average_precision(dets, truths, 0.5) == pytest.approx(
        tt.oracles.brute_force_ap(dets, truths, 0.5), abs=1e-12)


@tt.with_setup
def test_average_precision_matches_brute_force(rng):
    for trial in range(100):
        truths = _random_truths(rng, int(rng.integers(0, 7)))
        dets = _random_dets(rng, truths, int(rng.integers(0, 7)))
        for thresh in (0.5, 0.75):
            assert average_precision(dets, truths, thresh) == pytest.approx(
                tt.oracles.brute_force_ap(dets, truths, thresh), abs=1e-12)


@tt.with_setup
def test_average_precision_properties(rng):
    for trial in range(50):
        truths = _random_truths(rng, 4)
        dets = _random_dets(rng, truths, 6)
        aps = [average_precision(dets, truths, t) for t in IOU_THRESHOLDS]
        assert all(0 <= ap <= 1 for ap in aps)
        assert all(a >= b for a, b in zip(aps, aps[1:]))

        base = average_precision(dets, truths, 0.5)
        stray = Detection(t_start_s=10.0, t_end_s=11.0, f_c_hz=0.0,
                          bandwidth_hz=1e5, confidence=float(rng.uniform()))
        assert average_precision(dets + [stray], truths, 0.5) <= base

        matched = [(i, j) for i, j in match_detections(dets, truths, 0.5)
                   if j is not None]
        if not matched:
            continue
        i, j = matched[0]
        d = dets[i]
        if any(tf_iou(d, t) >= 0.5 for k, t in enumerate(truths) if k != j):
            continue
        dup = Detection(
            t_start_s=d.t_start_s, t_end_s=d.t_end_s, f_c_hz=d.f_c_hz,
            bandwidth_hz=d.bandwidth_hz,
            confidence=min(x.confidence for x in dets) / 2)
        assert average_precision(dets + [dup], truths, 0.5) <= base


def test_map_50_95():
    truth = _truth(0.0, 1.0, 0.0, 1e6)
    assert map_50_95([_det(truth)], [truth]) == 1.0
    # IoU 0.52 clears only the first threshold
    loose = _det(truth, t_end_s=0.52)
    aps = ap_per_iou([loose], [truth])
    assert aps[0.5] == 1.0
    assert all(aps[t] == 0.0 for t in IOU_THRESHOLDS[1:])
    assert map_50_95([loose], [truth]) == pytest.approx(0.1)
    assert IOU_THRESHOLDS == (0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85,
                              0.9, 0.95)


@tt.with_setup
def test_map_is_mean_of_thresholds(rng):
    for trial in range(20):
        truths = _random_truths(rng, 3)
        dets = _random_dets(rng, truths, 4)
        expected = np.mean([average_precision(dets, truths, t)
                            for t in IOU_THRESHOLDS])
        assert map_50_95(dets, truths) == expected


def test_precision_recall_at():
    truths = [_truth(0.0, 0.1, 1e5, 1e4), _truth(0.2, 0.3, -1e5, 2e4)]
    perfect = [_det(t, 0.9) for t in truths]
    assert precision_recall_at(perfect, truths) == (1.0, 1.0)
    one_each = [_det(truths[0], 0.9), _det(truths[0], 0.5, f_c_hz=9e5)]
    assert precision_recall_at(one_each, truths) == (0.5, 0.5)
    assert precision_recall_at(one_each, truths, conf_thresh=0.95) == \
        (0.0, 0.0)
    assert precision_recall_at([], []) == (1.0, 1.0)
    assert precision_recall_at(one_each, truths, conf_thresh=0.6) == \
        (1.0, 0.5)


@tt.with_setup
def test_precision_recall_matches_counting(rng):
    for trial in range(50):
        truths = _random_truths(rng, 4)
        dets = _random_dets(rng, truths, 6)
        conf_thresh = float(rng.uniform(0, 0.5))
        kept = [d for d in dets if d.confidence >= conf_thresh]
        n_tp = sum(j is not None for _, j in
                   tt.oracles.greedy_match_reference(kept, truths, 0.5))
        precision, recall = precision_recall_at(dets, truths, 0.5,
                                                conf_thresh)
        assert recall == n_tp / 4
        assert precision == (n_tp / len(kept) if kept else 0.0)


def test_confusion_matrix():
    labels = confusion_labels()
    assert labels[-1] == BACKGROUND
    assert len(labels) == len(ModulationClass) + 1
    truths = [_truth(0.0, 0.1, 1e5, 1e4, ModulationClass.LORA),
              _truth(0.2, 0.3, -1e5, 2e4, ModulationClass.NBFM)]
    counts = confusion_matrix([_det(t) for t in truths], truths)
    assert np.array_equal(counts, np.diag(np.diag(counts)))
    assert counts[labels.index('LoRa'), labels.index('LoRa')] == 1
    assert counts[labels.index('NBFM'), labels.index('NBFM')] == 1

    wrong = [_det(t, label=ModulationClass.QPSK) for t in truths]
    counts = confusion_matrix(wrong, truths)
    qpsk = labels.index('QPSK')
    assert counts[:, qpsk].sum() == 2
    assert counts.sum() == 2


@tt.with_setup
def test_confusion_matrix_conservation(rng):
    for trial in range(50):
        truths = _random_truths(rng, 4)
        dets = _random_dets(rng, truths, 5)
        counts = confusion_matrix(dets, truths)
        matches = match_detections(dets, truths, 0.5)
        n_matched = sum(j is not None for _, j in matches)
        expected = n_matched + (len(truths) - n_matched) + \
            (len(dets) - n_matched)
        assert counts.sum() == expected
        assert counts.min() >= 0
        assert counts[-1, -1] == 0


def test_per_class_and_class_averaged_map():
    lora = _truth(0.0, 0.1, 1e5, 1e4, ModulationClass.LORA)
    nbfm = _truth(0.2, 0.3, -1e5, 2e4, ModulationClass.NBFM)
    dets = [_det(lora, 0.9)]
    table = per_class_ap(dets, [lora, nbfm])
    assert set(table) == {'LoRa', 'NBFM'}
    assert table['LoRa'][0.5] == 1.0
    assert table['NBFM'][0.5] == 0.0
    assert class_averaged_map(dets, [lora, nbfm]) == pytest.approx(0.5)
    assert class_averaged_map([], []) == 1.0


@tt.with_setup
def test_evaluate_report(tmpdir, rng):
    truths = _random_truths(rng, 4)
    dets = _random_dets(rng, truths, 6)
    report = evaluate(dets, truths)
    assert abs(report.map_50_95 - np.mean(list(report.ap_per_iou.values()))) \
        < 1e-12
    assert report.map_50_95 == map_50_95(dets, truths)
    assert (report.precision_50, report.recall_50) == \
        precision_recall_at(dets, truths)
    assert report.n_detections == 6 and report.n_truths == 4
    for value in [report.map_50_95, report.precision_50, report.recall_50,
                  report.class_map_50_95] + list(report.ap_per_iou.values()):
        assert 0 <= value <= 1

    path = os.path.join(tmpdir, 'run.report.json')
    write_report(report, path)
    with open(path) as fin:
        doc = simplejson.load(fin)
    assert sorted(doc['ap_per_iou']) == ['%.2f' % t for t in IOU_THRESHOLDS]
    assert doc['map_50_95'] == report.map_50_95
    assert doc['confusion_labels'][-1] == BACKGROUND
    assert len(doc['confusion']) == len(ModulationClass) + 1


@tt.with_setup
def test_detections_file_round_trip(tmpdir):
    probs = [0.0] * len(ModulationClass)
    probs[0] = 1.0
    dets = [
        Detection(0.0, 0.1, 1e5, 2e4, ModulationClass.LORA, 0.7),
        Detection(0.2, 0.5, -3e5, 1e5, ModulationClass.QAM16, 0.4,
                  refined=True, class_probs=probs),
    ]
    path = os.path.join(tmpdir, 'run.det.json')
    write_detections(dets, path)
    assert read_detections(path) == dets
    with open(path) as fin:
        doc = simplejson.load(fin)
    assert doc['detections'][0]['class'] == 'LoRa'
    assert 'refined' not in doc['detections'][0]
    assert doc['detections'][1]['refined'] is True


@tt.with_setup
def test_detections_file_errors(tmpdir):
    path = os.path.join(tmpdir, 'bad.det.json')
    record = dict(t_start_s=0, t_end_s=1, f_c_hz=0, bandwidth_hz=1, conf=1)
    write_json(path, dict(detections=[record, dict(record, **{
        'class': 'Morse'})]))
    with pytest.raises(SchemaError) as err:
        read_detections(path)
    assert 'detections[1].class' in str(err.value)

    write_json(path, dict(detections=[dict(record, bandwidth_hz=-1)]))
    with pytest.raises(ValidationError) as err:
        read_detections(path)
    assert 'detections[0]' in str(err.value)

    write_json(path, dict(detections=[record]))
    d, = read_detections(path)
    assert d.class_label is ModulationClass.UNKNOWN
