# Copyright 2026 The spinor-efimov Authors
# SPDX-License-Identifier: Apache-2.0
"""Efimov channel exponents, adiabatic potentials and trimer ladders for
bosons with two internal levels."""

import json

from ._core import (
    ChannelRoot,
    ConfigError,
    ScatteringLength,
    TwoBodyChannelSet,
    __version__,
    channels_from_angle as _channels_from_angle,
    eigenchannels,
    exchange_overlap,
    find_roots,
    jacobi_eigen,
    one_body_rotation,
    run_config,
    scaling_factor,
    theta_sweep as _theta_sweep,
    toy_closed_form,
    unitary_ladder,
)


def length(a):
    """Coerce a float, 'unitary'/'inf' or 'closed' into a ScatteringLength."""
    if isinstance(a, ScatteringLength):
        return a
    if a in ("unitary", "inf"):
        return ScatteringLength.unitary()
    if a == "closed":
        return ScatteringLength.closed()
    return ScatteringLength.finite(float(a))


def channels_from_angle(theta, a_alpha="closed", a_beta="unitary", a_gamma="closed"):
    return _channels_from_angle(theta, length(a_alpha), length(a_beta), length(a_gamma))


def theta_sweep(thetas, lengths=("closed", "unitary", "closed"), mode="asymptotic", R=1.0,
                include_real=False):
    """Returns (rows, max_curve_jump)."""
    return _theta_sweep(list(thetas), [length(a) for a in lengths], mode, R, include_real)


def run(text, strict=True):
    """Runs a run-file text and returns the result bundle as a dict."""
    return json.loads(run_config(text, strict))


__all__ = [
    "ChannelRoot", "ConfigError", "ScatteringLength", "TwoBodyChannelSet", "__version__",
    "channels_from_angle", "eigenchannels", "exchange_overlap", "find_roots", "jacobi_eigen",
    "length", "one_body_rotation", "run", "run_config", "scaling_factor", "theta_sweep",
    "toy_closed_form", "unitary_ladder",
]
