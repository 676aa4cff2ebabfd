"""
Implements a smarter version of nose.tools.with_setup that pytest can
collect: the decorated test takes no arguments and receives whatever its
setup produced by name.
"""
import inspect


def smart_run(func, args, kwargs):
    """Given a function definition, determine which of the args and
    kwargs are relevant and then execute the function"""
    params = inspect.signature(func).parameters.values()
    names = [p.name for p in params if p.kind in (
        p.POSITIONAL_ONLY, p.POSITIONAL_OR_KEYWORD, p.KEYWORD_ONLY)]
    kwargs2 = {k: v for k, v in kwargs.items() if k in names}
    args2 = tuple(args[:max(0, len(names) - len(kwargs2))])
    if any(p.kind == p.VAR_POSITIONAL for p in params):
        args2 += tuple(args[len(args2):])
    if any(p.kind == p.VAR_KEYWORD for p in params):
        kwargs2.update(kwargs)
    return func(*args2, **kwargs2)


def with_setup(setup=None, teardown=None, params=False):
    """Decorator to add setup and/or teardown methods to a test function

    `setup` - setup function to run before calling a test function
    `teardown` - teardown function to run after a test function returns
    `params` - (boolean) whether to enable a special mode where:
      - setup will return args and kwargs
      - the test function and teardown may define any of the values
        returned by setup in their function definitions.

      def setup(func_name):
          return ((), dict(abc=123, xyz=456))

      @with_setup(setup, params=True)
      def test_something(abc):
          assert abc == 123
    """
    def decorate(func):
        def func_wrapped():
            args, kwargs = [], {}
            if setup:
                rv = setup(func.__name__) if params else setup()
                if rv is not None:
                    args.extend(rv[0])
                    kwargs.update(rv[1])
            try:
                if params:
                    return smart_run(func, args, kwargs)
                return func()
            finally:
                if teardown:
                    if params:
                        smart_run(teardown, args, kwargs)
                    else:
                        teardown()
        # no functools.wraps: pytest would read the wrapped signature and
        # look for fixtures with those names
        func_wrapped.__name__ = func.__name__
        func_wrapped.__qualname__ = func.__qualname__
        func_wrapped.__doc__ = func.__doc__
        func_wrapped.__module__ = func.__module__
        return func_wrapped
    return decorate
