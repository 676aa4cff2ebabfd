from . import DocumentBaseMapping, DocumentBaseSequence
from specsense import util
from specsense.exceptions import _log_raise, SchemaError


def _ensure_type(value, path):
    """
    Wrap dict and list values in their read-only view types.
    Values that aren't dicts or lists are just returned as-is
    """
    if isinstance(value, list):
        return JSONSequence(value, path=path)
    elif isinstance(value, dict):
        return JSONMapping(value, path=path)
    else:
        return value


class _JSONDocumentBase(object):
    def __getitem__(self, key):
        return _ensure_type(self.cache[key], self.child_path(key))

    def __len__(self):
        return len(self.cache)


class JSONMapping(_JSONDocumentBase, DocumentBaseMapping):
    """A read-only dictionary view of a json object"""
    def __init__(self, data, path=''):
        if isinstance(data, JSONMapping):
            self.cache = data.cache
            self.path = path or data.path
            return
        assert isinstance(data, dict), (
            "Oops! %s did not receive a dict" % self.__class__.__name__)
        self.cache = data
        self.path = path

    def __iter__(self):
        return iter(self.cache)

    def __contains__(self, key):
        return key in self.cache


class JSONSequence(_JSONDocumentBase, DocumentBaseSequence):
    """A read-only list view of a json array"""
    def __init__(self, data, path=''):
        assert isinstance(data, list), (
            "Oops! %s did not receive a list" % self.__class__.__name__)
        self.cache = data
        self.path = path


def load_document(path):
    """Read a json file and return a JSONMapping view of it"""
    raw = util.read_json(path)
    if not isinstance(raw, dict):
        _log_raise(
            "<root>: expected a json object at the top of the document",
            extra=dict(path=path), exception_kls=SchemaError)
    return JSONMapping(raw)
