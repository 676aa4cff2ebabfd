"""
This code parses the command line, lazily imports the module of the chosen
subcommand and runs it, mapping failures onto exit codes:

    0 success, 1 validation error, 2 I/O error, 3 internal error
"""
import importlib

import specsense
from specsense import argparse_shared as at
from specsense import log
from specsense import configuration, util
from specsense.exceptions import exit_code_for
from specsense.initializer import initialize, initialize_backend

COMMANDS = (
    'simulate', 'spectrogram', 'propose', 'purify', 'detect', 'evaluate',
    'griddump')
BACKEND_TYPES = ('proposer', 'refiner')


def main(ns):
    """Run the subcommand selected by `ns.command`.  Returns the exit code"""
    log.info("Beginning specsense", extra=dict(command=ns.command))
    try:
        ns.command_func(ns=ns)
    except Exception as err:
        code = exit_code_for(err)
        ld = dict(command=ns.command, exit_code=code,
                  stage=getattr(err, 'stage', None))
        if code == 3:
            log.exception(
                "Unhandled failure.  %s: %s" % (type(err).__name__, err),
                extra=ld)
        else:
            log.error(
                "Command failed.  %s: %s" % (type(err).__name__, err),
                extra=ld)
        return code
    log.info("finished", extra=dict(command=ns.command))
    return 0


def build_arg_parser_and_parse_args(args=None):
    """
    Get an argparse.Namespace from `args` (default sys.argv),
    lazily import the module of the given subcommand, add the options of
    the subcommand and of any backend it selects, and parse again.
    """
    parser = at.build_arg_parser([at.group(
        "Runtime options",
        at.command(choices=COMMANDS),
        at.log_level,
    )], description=(
        "Wideband spectrum sensing.  Synthesize multi-emitter I/Q scenes,"
        " render linear or log-warped spectrograms, propose coarse"
        " time-frequency boxes, purify them into narrowband segments,"
        " refine them into detections and evaluate those against ground"
        " truth.  The subcommand comes first:  specsense <command> ..."),
    )
    parser, ns = initialize(
        [parser(), configuration], args=args, parse_known_args=True)
    util.configure_logging(True, level=ns.log_level)

    command = importlib.import_module(
        'specsense.commands.%s_command' % ns.command)
    parser = at.build_arg_parser(
        parents=[parser, command.build_arg_parser()])
    ns, _ = parser.parse_known_args(args)
    for name in BACKEND_TYPES:
        backend = getattr(ns, name, None)
        if backend is not None:
            parser = initialize_backend(backend, parser, add_help=False)

    ns = at.build_arg_parser(
        parents=[parser], add_help=True
    ).parse_args(args)
    ns.command_func = command.main
    specsense.NS = ns
    return ns


if __name__ == '__main__':
    NS = build_arg_parser_and_parse_args()
    raise SystemExit(main(NS))
