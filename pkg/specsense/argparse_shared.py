"""
We leverage argparse_tools to manage how arguments are passed in from
the command-line.  This file contains argparse options that may be shared
between subcommands.
"""
from argparse_tools import (
    build_arg_parser as _build_arg_parser,
    group, mutually_exclusive, lazy_kwargs,
    DefaultFromEnv,
    add_argument as _add_argument)

from specsense import log
from specsense import util

# This code block exists for linting
group
mutually_exclusive
lazy_kwargs
DefaultFromEnv

ENV_PREFIX = 'SPECSENSE_'


def build_arg_parser(*args, **kwargs):
    """Wraps at.build_arg_parser to set some defaults

    disable --help by default"""
    if 'add_help' not in kwargs:
        kwargs['add_help'] = False
    if 'prog' not in kwargs:
        kwargs['prog'] = 'specsense'
    return _build_arg_parser(*args, **kwargs)


def add_argument(*args, **kwargs):
    """Wraps argparse.ArgumentParser.add_argument to guarantee that all
    defined options are available from environment variables prefixed by
    "SPECSENSE_"

    add_argument('--booloption', action='store_true')
    """
    if 'action' in kwargs:
        val = kwargs.pop('action')
        if val == 'store_true':
            kwargs['const'] = True
            kwargs['nargs'] = '?'
            kwargs.setdefault('default', False)
        else:
            raise NotImplementedError(
                "Not sure how to deal with this argparse argument option"
                "  specsense applies a custom action to get defaults from"
                " the environment.  You cannot specify action=%s for the"
                " argument identified by: %s" % (val, str(args[:2])))
    return _add_argument(
        *args, action=DefaultFromEnv, env_prefix=ENV_PREFIX, **kwargs)


@lazy_kwargs
def command(parser, choices, help="The subcommand to run", **kwargs):
    # positional, so it is not read from the environment
    parser.add_argument('command', choices=choices, help=help, **kwargs)


@lazy_kwargs
def log_level(parser, help="Logging verbosity", default='INFO', **kwargs):
    add_argument(
        '--log_level', help=help, default=default,
        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), **kwargs)(parser)


@lazy_kwargs
def config(parser, help=(
        "Path to a pipeline configuration json document.  Missing keys"
        " take their default values"), **kwargs):
    add_argument('--config', help=help, **kwargs)(parser)


@lazy_kwargs
def seed(parser, help="Seed for every random number generator", **kwargs):
    add_argument('--seed', type=int, help=help, **kwargs)(parser)


@lazy_kwargs
def out(parser, help="Output path prefix.  Files are named <out>.<ext>",
        required=True, **kwargs):
    add_argument('--out', help=help, required=required, **kwargs)(parser)


@lazy_kwargs
def iq(parser, help="Path to an .iq recording with a .meta.json sidecar",
       required=True, **kwargs):
    add_argument('--iq', help=help, required=required, **kwargs)(parser)


@lazy_kwargs
def proposals(parser, help=(
        "Path to a .prop.json file.  When given, the internal proposer is"
        " bypassed and these proposals are used instead"), **kwargs):
    add_argument('--proposals', help=help, **kwargs)(parser)


def _load_backend(known_backends, backend_type):
    """
    Returns a function that will load a given backend.

    `known_backends` - dict defining all supported backends in form:
        {'easy-to-type-backend-name': 'python.path.to.obj', ...}
    `backend_type` - either "proposer" or "refiner"
    """
    def _load_backend_decorator(inpt):
        if not isinstance(inpt, str):
            return inpt  # already loaded
        _backend = known_backends.get(inpt, inpt)
        try:
            backend = util.load_obj_from_path(
                _backend,
                {'key': '%s_backend' % backend_type, backend_type: _backend})
        except Exception as err:
            log.error(
                "Could not load %s backend. err: %s" % (backend_type, err),
                extra={'%s_backend' % backend_type: _backend,
                       'err_kls': type(err)})
            raise
        return backend
    return _load_backend_decorator


KNOWN_BACKENDS = {
    'proposer': {
        "energy": "specsense.proposer.energy",
        "file": "specsense.proposer.proposals_file",
    },
    'refiner': {
        "envelope": "specsense.decode.refine",
    },
}


def load_backend(backend_type, name):
    """Load a backend module by short name or import path"""
    return _load_backend(KNOWN_BACKENDS[backend_type], backend_type)(name)


def backend(backend_type, default, help):
    """
    adds the option --<backend_type> with given `default`, where
    the `type=` function loads the chosen backend as a python object

    Only 2 backends are supported:  --proposer and --refiner

    `backend_type` - either "proposer" or "refiner"
    `default` - the argparse default= option
    `help` - the argparse help= option
    """
    if backend_type not in KNOWN_BACKENDS:
        raise UserWarning(
            "The only recognized types of backends are %s"
            % sorted(KNOWN_BACKENDS))
    known_backends = KNOWN_BACKENDS[backend_type]
    return add_argument(
        '--%s' % backend_type,
        default=default,
        type=_load_backend(known_backends, backend_type),
        help=help.format(known_backends=sorted(known_backends)))
