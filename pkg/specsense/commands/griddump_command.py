"""
Write the warped frequency points, one per line, to `<out>.grid.txt`
"""
import numpy as np

from specsense.commands import at, log, load_config
from specsense.exceptions import _log_raise, FileAccessError


def main(ns):
    cfg = load_config(ns)
    grid = cfg.warp.grid_for(ns.sample_rate_hz)
    path = '%s.grid.txt' % ns.out
    try:
        np.savetxt(path, grid.points_hz, fmt='%.17g')
    except (IOError, OSError) as err:
        _log_raise(
            "Could not write grid file: %s" % err, extra=dict(path=path),
            exception_kls=FileAccessError)
    log.info("wrote warp grid", extra=dict(
        path=path, n_points=grid.n_points, f_min_hz=grid.f_min_hz))


build_arg_parser = at.build_arg_parser([at.group(
    "Griddump options",
    at.out,
    at.add_argument(
        '--sample_rate_hz', type=float, default=5e6,
        help="The grid covers floor(F_s / b_sub_hz) subbands around DC"),
)])
