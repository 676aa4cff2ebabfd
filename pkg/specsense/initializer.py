"""
specsense can be invoked in one of two ways:
    - as an application runner, started from the command-line
    - as an api, imported and run like code.

In both scenarios, pluggable backends (proposers and refiners) may need to
define their own options.  This module provides a uniform way for the api and
runner to collect and resolve configuration options.

Developer note:  The only code that should import from this file is
`specsense.api`, `specsense.runner` and the testing tools.
"""
import argparse
import importlib
import specsense
from specsense import argparse_shared as at
from specsense import log


def _get_parent_parsers(objects):
    """Internal function to call m.build_arg_parser() for each m in objects"""
    seen = set()
    for m in objects:
        if id(m) in seen:
            continue
        seen.add(id(m))
        if not isinstance(m, argparse.ArgumentParser):
            p = m.build_arg_parser()
            if not isinstance(p, argparse.ArgumentParser):
                msg = (
                    "Failed to initialize specsense because the initializer"
                    " expected an instance of argparse.ArgumentParser but"
                    " received something else")
                log.error(msg, extra=dict(unrecognized_object=p))
                raise TypeError("%s.  Received: %s" % (msg, type(p)))
        else:
            p = m
        yield p


def initialize_backend(backend, parser, add_help):
    """
    get options for the chosen backend, if it defines any,
    and ensure they don't conflict with previously defined ones
    """
    if not hasattr(backend, '__file__') and hasattr(backend, '__module__'):
        # ie. backends given as a class or function inside a module
        backend = importlib.import_module(backend.__module__)
    if not hasattr(backend, 'build_arg_parser'):
        return parser
    return at.build_arg_parser(
        parents=[parser, backend.build_arg_parser()], add_help=add_help)


def initialize(objects, args=None, parse_known_args=False,
               backends=(), **argument_parser_kwargs):
    """
    Unify all required configuration settings in one central place.
    Raises error if any parsers define conflicting argument options.

    Returns (argparse.ArgumentParser(...), argparse.Namespace(...))

    `objects` - is a list of build_arg_parser functions or objects
        (ie specsense modules) containing a callable build_arg_parser attribute
    `args` - (optional).  Define command-line arguments to use.
        Default to sys.argv (which is what argparse does).
        Explicitly pass args=[] to not read command-line arguments, and instead
        expect that all arguments are passed in as environment variables.
    `parse_known_args` - if True, parse only known commandline arguments and
        do not add_help (ie don't recognize '-h').
    `backends` - names of namespace attributes holding loaded backends
        (ie "proposer") whose own options should be added to the parser
    `argument_parser_kwargs` - (optional) passed to the ArgumentParser(...)
    """
    parser = at.build_arg_parser(
        description="Initialize specsense, whether running it or calling"
        " its api",
        parents=list(_get_parent_parsers(objects)),
        **argument_parser_kwargs)
    ns, _ = parser.parse_known_args(args)

    for name in backends:
        backend = getattr(ns, name, None)
        if backend is not None:
            parser = initialize_backend(backend, parser, add_help=False)

    if not parse_known_args:
        parser = at.build_arg_parser(parents=[parser], add_help=True)
        ns = parser.parse_args(args)
    else:
        ns, _ = parser.parse_known_args(args)
    if hasattr(specsense, 'NS'):
        log.debug('specsense was re-initialized')
    specsense.NS = ns
    return parser, ns
