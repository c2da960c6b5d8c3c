"""JSON and CSV emission.

Floats go through ``repr`` (shortest round-trip form) so ``loads(dumps(x))``
reproduces every double bit for bit.
"""

import json

import numpy as np

from bshq.opalg import BandedOperator


def dense_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {
        "dim": int(m.shape[0]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def dense_from_json(obj):
    dim = int(obj["dim"])
    data = np.array(obj["data"], dtype=float).reshape(dim * dim, 2)
    return (data[:, 0] + 1j * data[:, 1]).reshape(dim, dim)


def shift_key(shift):
    return json.dumps([int(s) for s in shift])


def banded_to_json(op):
    lat = op.lattice
    bands = {
        shift_key(s): [[float(z.real), float(z.imag)] for z in op.bands[s]]
        for s in sorted(op.bands)
    }
    return {
        "n": lat.n,
        "windows": [[ax.window_lo, ax.window_hi] for ax in lat.axes],
        "hbar": lat.config.hbar,
        "dim": lat.dim,
        "bands": bands,
    }


def banded_from_json(obj, lattice):
    bands = {}
    for key, data in obj["bands"].items():
        arr = np.array(data, dtype=float).reshape(-1, 2)
        bands[tuple(json.loads(key))] = arr[:, 0] + 1j * arr[:, 1]
    return BandedOperator(lattice, bands)


def spin_to_json(rep):
    return {
        "s": rep.s,
        "hbar": rep.hbar,
        "matrices": {name: dense_to_json(m) for name, m in rep.matrices().items()},
    }


def report_to_json(report, **extra):
    out = dict(extra)
    out.update(report.to_dict())
    return out


def dumps(obj):
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
