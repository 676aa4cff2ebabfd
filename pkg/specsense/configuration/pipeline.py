"""
The pipeline document: one json object with the sections stft, warp,
proposer, purifier and decode plus a top-level seed.  Missing keys take
their defaults, unknown keys are rejected.
"""
import dataclasses
import numbers
from dataclasses import dataclass, field

from . import log, JSONMapping, load_document
from specsense import util
from specsense.decode import DecodeParams
from specsense.exceptions import (
    _log_raise, _log_raise_if, SchemaError, ValidationError)
from specsense.proposer import ProposerParams
from specsense.purifier import PurifierParams
from specsense.specfront import StftParams, TEMPLATES, grid_for_sample_rate

INTERPOLATIONS = ('complex', 'magnitude')


@dataclass(frozen=True)
class WarpParams:
    """`n_sub` None means floor(F_s / b_sub_hz) subbands"""
    b_sub_hz: float = 1e6
    n_sub: int = None
    m_sub: int = 128
    alpha1: float = 1.0
    alpha2: float = 4.0
    template: str = 'edge'
    interpolation: str = 'complex'

    def __post_init__(self):
        ld = dataclasses.asdict(self)
        _log_raise_if(
            not self.b_sub_hz > 0, "b_sub_hz must be positive", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            self.n_sub is not None and self.n_sub < 1,
            "n_sub must be a positive integer or null", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            self.m_sub < 4 or self.m_sub % 2, "m_sub must be even and >= 4",
            extra=ld, exception_kls=ValidationError)
        _log_raise_if(
            not self.alpha2 > self.alpha1,
            "alpha2 must be greater than alpha1", extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            self.template not in TEMPLATES,
            "template must be one of %s" % (TEMPLATES, ), extra=ld,
            exception_kls=ValidationError)
        _log_raise_if(
            self.interpolation not in INTERPOLATIONS,
            "interpolation must be one of %s" % (INTERPOLATIONS, ),
            extra=ld, exception_kls=ValidationError)

    def grid_for(self, sample_rate_hz):
        return grid_for_sample_rate(
            sample_rate_hz, b_sub_hz=self.b_sub_hz, m_sub=self.m_sub,
            alpha1=self.alpha1, alpha2=self.alpha2, template=self.template,
            n_sub=self.n_sub)


DEFAULT_STFT = StftParams(n_fft=8192)


@dataclass(frozen=True)
class PipelineConfig:
    stft: StftParams = DEFAULT_STFT
    warp: WarpParams = field(default_factory=WarpParams)
    proposer: ProposerParams = field(default_factory=ProposerParams)
    purifier: PurifierParams = field(default_factory=PurifierParams)
    decode: DecodeParams = field(default_factory=DecodeParams)
    seed: int = 0

    SECTIONS = {
        'stft': StftParams, 'warp': WarpParams, 'proposer': ProposerParams,
        'purifier': PurifierParams, 'decode': DecodeParams}

    def to_dict(self):
        rv = dict(seed=self.seed)
        for name in self.SECTIONS:
            section = dataclasses.asdict(getattr(self, name))
            rv[name] = {k: list(v) if isinstance(v, tuple) else v
                        for k, v in section.items()}
        return rv

    @classmethod
    def from_dict(cls, data, path=''):
        doc = data if isinstance(data, JSONMapping) else \
            JSONMapping(data, path=path)
        doc.check_keys(tuple(cls.SECTIONS) + ('seed', ))
        kwargs = {}
        for name, kls in cls.SECTIONS.items():
            section = doc.get_mapping(name, None)
            default = cls.__dataclass_fields__[name]
            base = default.default if default.default is not \
                dataclasses.MISSING else default.default_factory()
            kwargs[name] = _section(section, kls, base) if section \
                is not None else base
        seed = doc.get_int('seed', 0)
        _log_raise_if(
            not 0 <= seed < 2 ** 64, "seed must be in [0, 2**64)",
            extra=dict(seed=seed), exception_kls=ValidationError)
        return cls(seed=seed, **kwargs)

    def with_seed(self, seed):
        if seed is None:
            return self
        return dataclasses.replace(self, seed=int(seed))


def _section_value(section, name, default):
    if name in ('window', 'template', 'interpolation'):
        return section.get_str(name, default)
    if name == 'tier_edges_hz':
        seq = section.get_sequence(name, None)
        if seq is None:
            return default
        values = seq.to_list()
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, numbers.Real):
                seq.schema_error(i, "expected number, got %r" % (v, ))
        return tuple(float(v) for v in values)
    if isinstance(default, bool):
        return section.get_field(name, bool, default)
    if isinstance(default, int) or (
            default is None and name in ('n_sub', 'workers')):
        return section.get_int(name, default)
    return section.get_number(name, default)


def _section(section, kls, base):
    names = [f.name for f in dataclasses.fields(kls)]
    section.check_keys(names)
    kwargs = {n: _section_value(section, n, getattr(base, n)) for n in names}
    try:
        return kls(**kwargs)
    except ValidationError as err:
        _log_raise(
            "%s: %s" % (section.path, err), extra=dict(field=section.path),
            exception_kls=SchemaError)


def load_pipeline_config(path=None, seed=None):
    """PipelineConfig from a json document, or the defaults without one.
    `seed` overrides the document's seed"""
    if path is None:
        cfg = PipelineConfig()
    else:
        cfg = PipelineConfig.from_dict(load_document(path))
    cfg = cfg.with_seed(seed)
    log.debug("loaded pipeline config", extra=dict(
        path=path, seed=cfg.seed))
    return cfg


def write_config_echo(cfg, prefix):
    """Write the resolved config next to a command's outputs"""
    path = '%s.config.json' % prefix
    util.ensure_parent_dir(path)
    util.write_json(path, cfg.to_dict())
    return path
