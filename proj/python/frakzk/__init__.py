"""Python access to the frakzk spectral core.

Fields are 2-D float arrays of shape (ny, nx) on the periodic box
[0, lx) x [0, ly); every operation takes the box lengths explicitly.
"""

import json as _json

from ._frakzk import (  # noqa: F401
    FrakzkError,
    InvalidArgument,
    NonzeroXMean,
    SchemaError,
    SnapshotError,
    apply_group,
    bessel,
    bona_smith_smooth,
    duhamel_kernel,
    dx,
    dy,
    eval_f3_hat,
    evolve,
    experiments,
    frac_deriv_x,
    growth_sweep,
    hilbert_x,
    inv_dx,
    kernel_reduced,
    lp_norm,
    norm,
    phase,
    read_snapshot,
    resonance_chi,
    wavenumbers,
    write_snapshot,
)
from . import _frakzk


def gen_data(data, nx, ny, lx, ly, seed=1):
    """Initial data from a dict such as {"kind": "gaussian", "sx": 1.5}."""
    return _frakzk.gen_data(_json.dumps(data), nx, ny, lx, ly, seed)


def validate_config(config):
    """Config dict with every default filled in; raises SchemaError."""
    return _json.loads(_frakzk.validate_config(_json.dumps(config)))


def run_experiment(config, out_dir="", jobs=1):
    """Runs one registered experiment and returns its report as a dict."""
    return _json.loads(_frakzk.run_experiment(_json.dumps(config), out_dir, jobs))
