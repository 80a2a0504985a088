import os

import pytest

from meshalg import GroupSpec, build_presentation, make_dynkin
from meshalg.fields import field_for_char
from meshalg.meshcore import WindowAlgebra
from meshalg.orbit import OrbitAlgebra

_ALG_CACHE = {}
_WIN_CACHE = {}


def heavy_enabled() -> bool:
    return os.environ.get("MESHALG_HEAVY", "") not in ("", "0")


@pytest.fixture(scope="session")
def algebra():
    """Cached orbit-algebra builder keyed by (family, rank, m, t, char)."""

    def build(family, rank, m, t, char=0):
        key = (family, rank, m, t, char)
        if key not in _ALG_CACHE:
            spec = make_dynkin(family, rank)
            group = GroupSpec(spec, m, t)
            pres = build_presentation(spec, group)
            _ALG_CACHE[key] = OrbitAlgebra(pres, group, field_for_char(char))
        return _ALG_CACHE[key]

    return build


@pytest.fixture(scope="session")
def window():
    """Cached window-algebra builder keyed by (family, rank, m, t, char, kmin, kmax)."""

    def build(family, rank, m, t, char=0, kmin=-2, kmax=None):
        spec = make_dynkin(family, rank)
        if kmax is None:
            kmax = 3 * spec.coxeter + 2 * m
        key = (family, rank, m, t, char, kmin, kmax)
        if key not in _WIN_CACHE:
            group = GroupSpec(spec, m, t)
            pres = build_presentation(spec, group)
            _WIN_CACHE[key] = WindowAlgebra(pres, field_for_char(char), kmin, kmax)
        return _WIN_CACHE[key]

    return build
