from __future__ import annotations

import pytest

from spherical_trop.registry import RegistryEntry, registry_get


@pytest.fixture
def sl2() -> RegistryEntry:
    return registry_get('sl2_h')


@pytest.fixture
def gl2() -> RegistryEntry:
    return registry_get('gl2')


@pytest.fixture
def torus2() -> RegistryEntry:
    return registry_get('torus(2)')


@pytest.fixture(autouse=True)
def _clean_sphtrop_env(monkeypatch):
    for name in ('SPHTROP_SAMPLES', 'SPHTROP_ENTRY_RANGE', 'SPHTROP_SEED', 'SPHTROP_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)
