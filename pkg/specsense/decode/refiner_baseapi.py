"""
The interface every refiner backend implements.  A refiner turns one
purified segment into segment-normalized estimates; it is selected with
--refiner and `specsense.decode.refine` is the default.
"""


def refine(seg, params):
    """
    Return a RefinedDetection for the PurifiedSegment `seg`.

    `params` - DecodeParams (grid length, eps clamp, envelope smoothing)
    """
    raise NotImplementedError()
