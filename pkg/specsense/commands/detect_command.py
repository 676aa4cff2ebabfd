"""
The whole chain: writes the proposals to `<out>.prop.json` and the refined
detections to `<out>.det.json`
"""
from specsense.commands import at, api, log, load_config
from specsense import decode, proposer


def main(ns):
    cfg = load_config(ns)
    recording = api.read_iq(ns.iq)
    injected = None
    if ns.proposals:
        injected = api.read_proposals(
            ns.proposals, cfg.proposer.tier_edges_hz)
    proposals, detections = api.detect(
        recording, cfg, proposer=ns.proposer, refiner=ns.refiner,
        proposals=injected)
    api.write_proposals(proposals, '%s.prop.json' % ns.out)
    api.write_detections(detections, '%s.det.json' % ns.out)
    log.info("wrote detections", extra=dict(
        out=ns.out, n_proposals=len(proposals),
        n_detections=len(detections), injected=injected is not None))


build_arg_parser = at.build_arg_parser([at.group(
    "Detect options",
    at.iq,
    at.out,
    at.proposals,
)], parents=[proposer.build_arg_parser(), decode.build_arg_parser()])
