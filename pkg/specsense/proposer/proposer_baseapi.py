"""
The interface every proposer backend implements.  A backend is a module
(or object) selected with --proposer; `specsense.proposer.energy` is the
default.  Backends that need their own options may also define
`build_arg_parser`.
"""


def propose(S, grid, params):
    """
    Return a list of Proposal boxes in physical units, sorted by confidence
    descending.  Redundant boxes are allowed; callers run nms() afterwards.

    `S` - real WARPED Spectrogram (log magnitude)
    `grid` - the WarpGrid S was built on
    `params` - ProposerParams
    """
    raise NotImplementedError()
