"""Fourier coefficients of Jacobi Eisenstein series of lattice index."""
import json as _json

from ._core import (  # noqa: F401
    JeError,
    Lattice,
    coefficient_general_m,
    coefficient_na1,
    coefficient_unimodular,
    density,
    gamma_factor,
    preset_names,
    q_expansion_json,
    theta_check,
)


def q_expansion(lattice, k, m=1, n_max=2, pipeline="auto", a_max=50, c_max=40):
    """The expansion as a dict in the JSON schema written by `je eisenstein --out`."""
    return _json.loads(q_expansion_json(lattice, k, m, n_max, pipeline, a_max, c_max))
