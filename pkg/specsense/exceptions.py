from specsense import log


def _log_raise_if(cond, msg, extra, exception_kls):
    if cond:
        _log_raise(msg, extra, exception_kls)


def _log_raise(msg, extra, exception_kls):
    log.error(msg, extra=extra)
    raise exception_kls(msg)


class SpecSenseException(Exception):
    """Base Class for all specsense Exceptions"""
    exit_code = 3


class ValidationError(SpecSenseException, ValueError):
    """Invalid parameters or inputs that violate a documented invariant"""
    exit_code = 1


class SchemaError(ValidationError):
    """A JSON document is missing a field or has one of the wrong type.
    The message always names the field path, ie `emitters[3].t_end_s`"""
    pass


class StructuralError(ValidationError):
    """A binary file does not have the expected layout"""
    pass


class DegenerateSegment(ValidationError):
    pass


class FileAccessError(SpecSenseException, IOError):
    exit_code = 2

    def __init__(self, msg, path=None):
        super(FileAccessError, self).__init__(msg)
        self.path = path


class InvariantViolation(SpecSenseException):
    """An internal post-condition failed.  This is a bug."""
    exit_code = 3


class PurifyBatchError(SpecSenseException):
    """Raised after every element of a batch ran and at least one failed.

    `errors` - {proposal_index: exception}
    `results` - list aligned with the input; None where purification failed
    """
    exit_code = 1

    def __init__(self, msg, errors, results):
        super(PurifyBatchError, self).__init__(msg)
        self.errors = errors
        self.results = results


def exit_code_for(err):
    """Map an exception to the command-line exit code"""
    if isinstance(err, SpecSenseException):
        return err.exit_code
    if isinstance(err, (IOError, OSError)):
        return 2
    return 3
