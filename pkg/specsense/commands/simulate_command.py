"""
Synthesize a scene and write `<out>.iq`, `<out>.meta.json` and the ground
truth `<out>.ann.json`
"""
from specsense.commands import at, api, log, load_config
from specsense.scenesim import triplet_spec, load_scene


def main(ns):
    cfg = load_config(ns)
    if ns.scene:
        spec = load_scene(ns.scene, seed=ns.seed)
    else:
        kwargs = dict(
            snr_db=ns.snr_db, sample_rate_hz=ns.sample_rate_hz,
            duration_s=ns.duration_s)
        spec = triplet_spec(
            rng_seed=cfg.seed,
            **{k: v for k, v in kwargs.items() if v is not None})
    recording, truths = api.synth_scene(spec)
    api.write_iq(recording, '%s.iq' % ns.out)
    api.write_annotations(truths, '%s.ann.json' % ns.out)
    log.info("simulated scene", extra=dict(
        out=ns.out, n_emitters=len(truths), seed=cfg.seed))


build_arg_parser = at.build_arg_parser([at.group(
    "Simulate options",
    at.out,
    at.mutually_exclusive(
        at.add_argument(
            '--scene', help=(
                "Path to a scene json document with explicit emitters or"
                ' {"preset": "triplet", ...}')),
        at.add_argument(
            '--preset', choices=('triplet', ), help=(
                "A built-in scene.  triplet: a bursty O-QPSK packet, a"
                " repeating chirp and a continuous NB-FM trace")),
    ),
    at.add_argument(
        '--snr_db', type=float, help="In-band SNR of every preset emitter"),
    at.add_argument(
        '--sample_rate_hz', type=float, help="Preset sample rate (>= 5e6)"),
    at.add_argument(
        '--duration_s', type=float, help="Preset duration"),
)])
