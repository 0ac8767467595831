"""
Fixtures for CLI tests.
"""

import logging

import pytest


@pytest.fixture(autouse=True)
def restore_root_logging():
    """main() reconfigures the root logger; put the pytest handlers back."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def write_config(tmp_path):
    """Write a `key = value` config file and return its path."""

    def _write(text: str, name: str = "run.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
