import collections.abc
import numbers

from specsense.exceptions import _log_raise, SchemaError


REQUIRED = object()


def _recursem(mapping):
    rv = {}
    for k, v in mapping.items():
        if isinstance(v, DocumentBaseMapping):
            rv[k] = _recursem(v)
        elif isinstance(v, DocumentBaseSequence):
            rv[k] = _recursel(v)
        else:
            rv[k] = v
    return rv


def _recursel(sequence):
    rv = []
    for k in sequence:
        if isinstance(k, DocumentBaseMapping):
            rv.append(_recursem(k))
        elif isinstance(k, DocumentBaseSequence):
            rv.append(_recursel(k))
        else:
            rv.append(k)
    return rv


def _kind_name(kind):
    if isinstance(kind, tuple):
        return ' or '.join(_kind_name(k) for k in kind)
    return {
        numbers.Real: 'number', numbers.Integral: 'integer', str: 'string',
        bool: 'boolean', collections.abc.Mapping: 'object',
        collections.abc.Sequence: 'list'}.get(kind, kind.__name__)


def _is_kind(value, kind):
    if kind in (numbers.Real, numbers.Integral) and isinstance(value, bool):
        return False
    if kind is numbers.Integral and isinstance(value, float):
        return value.is_integer()
    if kind is collections.abc.Sequence and isinstance(value, str):
        return False
    return isinstance(value, kind)


class ABCDocumentBase(object):
    """Shared behavior of document views.

    `path` - where this view sits in its document, ie "emitters[3]"
    """
    path = ''

    def __getitem__(self, key):
        """
        This should return the appropriate Document view instance
        if the gotten value is a mapping or sequence.
        """
        raise NotImplementedError("You need to write this")

    def __len__(self):
        raise NotImplementedError("You need to write this")

    def child_path(self, key):
        if isinstance(key, int):
            return '%s[%d]' % (self.path, key)
        if self.path:
            return '%s.%s' % (self.path, key)
        return str(key)

    def schema_error(self, key, msg):
        field = self.child_path(key)
        _log_raise(
            "%s: %s" % (field, msg), extra=dict(field=field),
            exception_kls=SchemaError)


class DocumentBaseMapping(ABCDocumentBase, collections.abc.Mapping):
    """Abstract Base Class for read-only, path-aware json objects"""

    def __iter__(self):
        raise NotImplementedError("You need to write this")

    def __repr__(self):
        return "DocumentMapping<%s path:%r keys:%s>" % (
            self.__class__.__name__, self.path, len(self))

    def __eq__(self, other):
        if isinstance(other, DocumentBaseMapping):
            return self.to_dict() == other.to_dict()
        return False

    def __ne__(self, other):
        return not self == other

    def to_dict(self):
        return _recursem(self)

    def get_field(self, key, kind=None, default=REQUIRED):
        """Return self[key] after checking that it is present and of the
        expected `kind`.  Missing optional keys and json nulls return
        `default`"""
        if key not in self or self[key] is None:
            if default is REQUIRED:
                self.schema_error(key, "missing required field")
            return default
        value = self[key]
        if kind is not None:
            kinds = kind if isinstance(kind, tuple) else (kind, )
            if not any(_is_kind(value, k) for k in kinds):
                self.schema_error(key, "expected %s, got %r" % (
                    _kind_name(kind), value))
            if numbers.Integral in kinds and isinstance(value, float):
                value = int(value)
        return value

    def get_number(self, key, default=REQUIRED):
        value = self.get_field(key, numbers.Real, default)
        return value if value is default else float(value)

    def get_int(self, key, default=REQUIRED):
        return self.get_field(key, numbers.Integral, default)

    def get_str(self, key, default=REQUIRED):
        return self.get_field(key, str, default)

    def get_mapping(self, key, default=REQUIRED):
        return self.get_field(key, collections.abc.Mapping, default)

    def get_sequence(self, key, default=REQUIRED):
        return self.get_field(key, collections.abc.Sequence, default)

    def check_keys(self, allowed):
        """Reject keys this document type does not know about"""
        for key in self:
            if key not in allowed:
                self.schema_error(key, "unknown field.  Expected one of %s"
                                  % sorted(allowed))


class DocumentBaseSequence(ABCDocumentBase, collections.abc.Sequence):
    """Abstract Base Class for read-only, path-aware json lists"""

    def __repr__(self):
        return "DocumentSequence<%s path:%r items:%s>" % (
            self.__class__.__name__, self.path, len(self))

    def __eq__(self, other):
        if isinstance(other, DocumentBaseSequence):
            return list(other) == list(self)
        return False

    def __ne__(self, other):
        return not self == other

    def to_list(self):
        return _recursel(self)
