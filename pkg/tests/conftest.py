from __future__ import annotations

import pytest
from hypothesis import settings

from hassett.chambers import enumerate_chambers

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def chambers5():
    return enumerate_chambers(5)


@pytest.fixture(scope="session")
def by_dset(chambers5):
    return {frozenset(tuple(sorted(i)) for i in c.d_set): c for c in chambers5}
