import logging as _logging
log = _logging.getLogger('specsense')

from importlib import metadata as _metadata
try:
    __version__ = _metadata.version('specsense')
except _metadata.PackageNotFoundError:  # running from a source checkout
    __version__ = '0.0.0.dev0'


class Uninitialized(Exception):
    msg = (
        "Before you use the specsense command-line options, please initialize"
        " them. You probably just want to call specsense.api.initialize()")

    def __getattr__(self, *args, **kwargs):
        raise Uninitialized(Uninitialized.msg)

    def __repr__(self):
        return "specsense Not Initialized.  %s" % Uninitialized.msg

    def __str__(self):
        return repr(self)


def get_NS():
    """Returns the namespace of resolved command-line and environment options.

    Only `specsense.runner` and `specsense.api.initialize` set it.  Library
    functions take explicit parameters and never read it; it exists so that
    pluggable backends can look up their own options.
    """
    try:
        return NS
    except NameError:
        raise Uninitialized(Uninitialized.msg)


__all__ = ['api']
