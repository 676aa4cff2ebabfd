import logging
import shutil
import tempfile
import zlib

import numpy as np

from specsense.initializer import initialize as _initialize
from specsense import util
from specsense import configuration, decode, proposer

from .with_setup_tools import with_setup, smart_run


def setup_tmpdir(func_name):
    tmpdir = tempfile.mkdtemp(prefix='specsense_%s_' % func_name)
    return ((), dict(tmpdir=tmpdir))


def teardown_tmpdir(tmpdir):
    shutil.rmtree(tmpdir, ignore_errors=True)


def setup_rng(func_name):
    """A generator seeded by the test name, so every test draws its own
    reproducible stream"""
    seed = zlib.crc32(func_name.encode('utf8'))
    return ((), dict(rng=np.random.default_rng(seed), seed=seed))


def with_setup_factory(setup_funcs=(), teardown_funcs=(),
                       post_initialize=()):
    """Create different kinds of `@with_setup` decorators
    to properly initialize and teardown things necessary to run test functions

    `setup_funcs` - a list of functions that do things before a test
    `teardown_funcs` - a list of functions that do things after a test
    `post_initialize` - a list of functions to run during setup, but after
        specsense has been initialized

    All setup functions receive `func_name`.
      - setup funcs must return (tup, dct) where:
          - the tuple is an optional list of initializer_args to pass
          to specsense's initializer.
          - the dict is an optional list of keywords that tests can request in
          their function definitions
      - teardown and post_initialize funcs may request any of those keywords;
        post_initialize funcs return just the dict
    """
    def setup_func(func_name):
        initializer_args = []
        available_kwargs = dict(
            log=util.configure_logging(False, log=logging.getLogger(
                'specsense.tests.%s' % func_name)),
            func_name=func_name,
        )
        for f in setup_funcs:
            tup, dct = f(func_name)
            initializer_args.extend(tup)
            available_kwargs.update(dct)
        _initialize(
            [configuration, proposer, decode], args=initializer_args,
            backends=('proposer', 'refiner'))
        for f in post_initialize:
            dct = smart_run(f, (), available_kwargs)
            available_kwargs.update(dct)
        return ((), available_kwargs)

    def teardown_func(*args, **kwargs):
        for f in teardown_funcs:
            smart_run(f, args, kwargs)

    def with_setup_multi(func):
        """Decorator that wraps a test function and provides setup()
        and teardown() functionality.

        The decorated func may define as a parameter any kwargs
        returned by setup(func_name).
        """
        return with_setup(setup_func, teardown_func, True)(func)
    return with_setup_multi


default_with_setup = with_setup_factory(
    (setup_tmpdir, setup_rng), (teardown_tmpdir, ))
