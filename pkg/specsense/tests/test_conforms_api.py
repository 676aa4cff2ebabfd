import inspect

import pytest

from specsense import argparse_shared as at
from specsense.decode import refiner_baseapi
from specsense.proposer import proposer_baseapi

BASEAPIS = {'proposer': proposer_baseapi, 'refiner': refiner_baseapi}


def assert_function_signatures_equal(f1, f2, msg):
    assert inspect.signature(f1) == inspect.signature(f2), msg


@pytest.mark.parametrize('backend_type, name', [
    (backend_type, name)
    for backend_type, known in sorted(at.KNOWN_BACKENDS.items())
    for name in sorted(known)])
def test_conforms_to_baseapi_interface(backend_type, name):
    backend = at.load_backend(backend_type, name)
    baseapi = BASEAPIS[backend_type]
    msg = "%s: %%s" % backend.__name__
    for varname in dir(baseapi):
        if varname.startswith("_"):
            continue
        base_obj = getattr(baseapi, varname)
        assert inspect.isfunction(base_obj), varname

        assert hasattr(backend, varname), \
            msg % "does not define %s" % varname
        f = getattr(backend, varname)
        assert_function_signatures_equal(
            f, base_obj,
            msg % "%s does not define the correct function signature"
            % varname)
        assert base_obj.__name__ == f.__name__, \
            msg % "%s has wrong function name" % varname


def test_backend_by_import_path():
    backend = at.load_backend('proposer', 'specsense.proposer.energy')
    assert backend is at.load_backend('proposer', 'energy')
    assert at.load_backend('refiner', backend) is backend
