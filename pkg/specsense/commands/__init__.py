"""
Each subcommand of the command line lives in `<name>_command.py` and
defines `build_arg_parser` and `main(ns)`.

Everything needed to write a command is available here.
"""

# publicly visible to commands
from specsense import argparse_shared as at
from specsense import api
at, api
from specsense.sensing import stage
stage


# imports hidden from commands
from logging import getLogger as _getLogger
log = _getLogger('specsense.commands')
from specsense.configuration.pipeline import (
    load_pipeline_config as _load_pipeline_config,
    write_config_echo as _write_config_echo)


def load_config(ns):
    """The PipelineConfig of --config with --seed applied, echoed to
    `<out>.config.json` so every run records what it used"""
    cfg = _load_pipeline_config(ns.config, seed=ns.seed)
    path = _write_config_echo(cfg, ns.out)
    log.debug("wrote config echo", extra=dict(path=path))
    return cfg
