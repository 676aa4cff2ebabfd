import numpy as np

from . import log
from specsense.exceptions import _log_raise_if, ValidationError


def wiener_phase(n, phase_noise_var, rng):
    """theta[n] = theta[n-1] + nu[n], nu ~ N(0, phase_noise_var), theta[-1] = 0
    """
    _log_raise_if(
        phase_noise_var < 0, "phase_noise_var must be non-negative",
        extra=dict(phase_noise_var=phase_noise_var),
        exception_kls=ValidationError)
    if phase_noise_var == 0:
        return np.zeros(n)
    return np.cumsum(rng.normal(0.0, np.sqrt(phase_noise_var), n))


def apply_taps(s, taps, tap_modulation=None):
    """Sparse FIR channel: sum_p h_p[n] s[n - d_p].

    `tap_modulation` - optional callable(tap_index, n_samples) returning a
        per-sample gain multiplier for that tap.  Taps are static otherwise.
    """
    if not taps:
        taps = ((0, 1 + 0j), )
    n = len(s)
    y = np.zeros(n, dtype=np.complex128)
    for p, (delay, gain) in enumerate(taps):
        if delay >= n:
            continue
        g = gain
        if tap_modulation is not None:
            g = gain * np.asarray(tap_modulation(p, n))[delay:]
        y[delay:] += g * s[:n - delay]
    return y


def apply_impairments(s, truth, sample_rate_hz, rng, tap_modulation=None):
    """
    Returns

        exp(j(2 pi cfo n / F_s + theta_0 + theta[n])) * sum_p h_p s[n - d_p]

    theta_0 is truth.phase0_rad, or drawn uniform on [0, 2 pi) when unset.
    The draw for theta_0 happens before the phase-noise draws.
    """
    s = np.asarray(s, dtype=np.complex128)
    _log_raise_if(
        truth.phase_noise_var < 0, "phase_noise_var must be non-negative",
        extra=dict(phase_noise_var=truth.phase_noise_var),
        exception_kls=ValidationError)
    n = len(s)
    y = apply_taps(s, truth.taps, tap_modulation)
    if truth.phase0_rad is None:
        theta0 = rng.uniform(0, 2 * np.pi)
    else:
        theta0 = truth.phase0_rad
    theta = wiener_phase(n, truth.phase_noise_var, rng)
    phase = 2 * np.pi * truth.cfo_hz * np.arange(n) / sample_rate_hz \
        + theta0 + theta
    log.debug("applied impairments", extra=dict(
        cfo_hz=truth.cfo_hz, phase_noise_var=truth.phase_noise_var,
        n_taps=len(truth.taps) or 1))
    return np.exp(1j * phase) * y
