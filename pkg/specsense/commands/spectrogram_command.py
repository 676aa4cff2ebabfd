"""
Render the linear or the log-warped spectrogram of a recording as
`<out>.pgm`
"""
from specsense.commands import at, api, log, load_config, stage


def main(ns):
    cfg = load_config(ns)
    recording = api.read_iq(ns.iq)
    with stage('spectrogram'):
        S, _ = api.spectrogram(recording, cfg, warped=not ns.linear)
    boxes = None
    if ns.boxes:
        boxes = [p.box for p in api.read_proposals(
            ns.boxes, cfg.proposer.tier_edges_hz)]
    api.render_spectrogram(S, '%s.pgm' % ns.out, boxes=boxes)
    if ns.dump:
        from specsense.specfront import dump_spectrogram
        dump_spectrogram(S, '%s.spec' % ns.out)
    log.info("rendered spectrogram", extra=dict(
        out=ns.out, kind=S.kind.value, n_frames=S.n_frames, n_bins=S.n_bins))


build_arg_parser = at.build_arg_parser([at.group(
    "Spectrogram options",
    at.iq,
    at.out,
    at.mutually_exclusive(
        at.add_argument(
            '--warped', action='store_true',
            help="Render the log-warped representation (the default)"),
        at.add_argument(
            '--linear', action='store_true',
            help="Render the linear STFT instead"),
    ),
    at.add_argument(
        '--boxes', help="A .prop.json file whose boxes are drawn on top"),
    at.add_argument(
        '--dump', action='store_true', help=(
            "Also write the raw values to <out>.spec.f32 with a"
            " <out>.spec.json header")),
)])
