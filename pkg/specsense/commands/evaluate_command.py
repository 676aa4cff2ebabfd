"""
Score detections against ground truth.  Writes `<out>.report.json` and
prints map_50_95, precision_50 and recall_50 to stdout
"""
from specsense.commands import at, api, log, load_config
from specsense.evalkit import write_report


def main(ns):
    load_config(ns)
    detections = api.read_detections(ns.detections)
    truths = api.read_annotations(ns.annotations)
    report = api.evaluate(detections, truths, conf_thresh=ns.conf_thresh)
    write_report(report, '%s.report.json' % ns.out)
    for name in ('map_50_95', 'precision_50', 'recall_50'):
        print('%s %.6f' % (name, getattr(report, name)))
    log.info("evaluated", extra=dict(
        out=ns.out, n_detections=report.n_detections,
        n_truths=report.n_truths))


build_arg_parser = at.build_arg_parser([at.group(
    "Evaluate options",
    at.out,
    at.add_argument(
        '--detections', required=True, help="Path to a .det.json file"),
    at.add_argument(
        '--annotations', required=True, help="Path to a .ann.json file"),
    at.add_argument(
        '--conf_thresh', type=float, default=0.0, help=(
            "Detections below this confidence are ignored by the"
            " precision / recall numbers")),
)])
