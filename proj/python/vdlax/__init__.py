"""Python access to the vdlax C++ core.

Configs and reports travel as JSON text; the helpers below accept dicts and
return parsed reports.
"""

import csv
import io
import json

from . import _vdlax
from ._vdlax import (
    ConfigError,
    DegenerateParameters,
    DomainError,
    Error,
    ModularParams,
    PoleProximity,
    TruncationFailure,
    bracket,
    elliptic_gamma_G,
    elliptic_gamma_pq,
    r_minus,
    r_plus,
    r_plus_logderiv,
    run_cli,
    shift_V,
    vb,
)

__all__ = [
    "ConfigError",
    "DegenerateParameters",
    "DomainError",
    "Error",
    "ModularParams",
    "PoleProximity",
    "TruncationFailure",
    "Z",
    "bracket",
    "default_config",
    "elliptic_gamma_G",
    "elliptic_gamma_pq",
    "r_minus",
    "r_plus",
    "r_plus_logderiv",
    "residues",
    "run_cli",
    "selfcheck",
    "shift_V",
    "sweep",
    "vb",
    "verify",
]


def _text(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return json.dumps(config)


def default_config():
    return json.loads(_vdlax.default_config())


def selfcheck(config=None):
    return json.loads(_vdlax.selfcheck(_text(config)))


def verify(config=None, negative_control="none"):
    return json.loads(_vdlax.verify(_text(config), negative_control))


def residues(config=None):
    return json.loads(_vdlax.residues(_text(config)))


def sweep(config=None, phi1=()):
    """Rows of the phi_1 sweep as dicts keyed by the CSV header."""
    text = _vdlax.sweep(_text(config), list(phi1))
    return list(csv.DictReader(io.StringIO(text)))


def Z(x, config=None):
    return _vdlax.Z(_text(config), x)
