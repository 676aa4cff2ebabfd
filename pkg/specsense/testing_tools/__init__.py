"""
Useful utilities for testing
"""

# let tests configure their own setup and teardown
from .setup_funcs import (
    with_setup_factory, setup_tmpdir, teardown_tmpdir, setup_rng)
with_setup_factory, setup_tmpdir, teardown_tmpdir, setup_rng

# offer some reasonable pre-set defaults
from .setup_funcs import default_with_setup as with_setup
with_setup

from .with_setup_tools import smart_run
smart_run

from .scenes import (
    complex_noise, tone, recording, noise_recording, proposal_for,
    random_proposal, single_emitter_scene, noiseless_tone_scene)
complex_noise, tone, recording, noise_recording, proposal_for
random_proposal, single_emitter_scene, noiseless_tone_scene

from . import oracles
oracles
