"""
Coarse proposals of a recording, after NMS, written to `<out>.prop.json`
"""
from specsense.commands import at, api, log, load_config
from specsense import proposer


def main(ns):
    cfg = load_config(ns)
    recording = api.read_iq(ns.iq)
    proposals = api.propose(recording, cfg, ns.proposer)
    api.write_proposals(proposals, '%s.prop.json' % ns.out)
    log.info("wrote proposals", extra=dict(
        out=ns.out, n_proposals=len(proposals)))


build_arg_parser = at.build_arg_parser([at.group(
    "Propose options",
    at.iq,
    at.out,
    at.proposals,
)], parents=[proposer.build_arg_parser()])
