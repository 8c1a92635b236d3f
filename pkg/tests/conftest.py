import pytest

import polydaehee


@pytest.fixture
def fresh_caches():
    """Clear memoized atoms/tables before and after a test that mutates seams."""
    polydaehee.clear_caches()
    yield
    polydaehee.clear_caches()
