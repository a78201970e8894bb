import pytest
import structlog


@pytest.fixture(autouse=True)
def reset_structlog():
    """CLI runs bind structlog to a captured stderr; undo that after every test."""
    yield
    structlog.reset_defaults()
