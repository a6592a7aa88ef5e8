"""
Shared pytest fixtures for argstrength tests.
"""

import sys
from pathlib import Path

import pytest

# Add parent directory to path so we can import the modules
sys.path.insert(0, str(Path(__file__).parent.parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def temp_config(tmp_path, monkeypatch):
    """Set up temporary config directory for tests."""
    fake_config_dir = tmp_path / ".config" / "argstrength"
    monkeypatch.setattr("config.CONFIG_DIR", fake_config_dir)
    monkeypatch.setattr("config.CONFIG_FILE", fake_config_dir / "config.json")
    return fake_config_dir


@pytest.fixture
def fixtures_dir():
    """Directory of sample .arg documents and golden outputs."""
    return FIXTURES


@pytest.fixture
def write_arg(tmp_path):
    """Write an .arg document to a temporary file and return its path as a string."""
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def ellsberg_text():
    """.arg text of an Ellsberg argument for a given conclusion event."""
    def text(event: str, red: str = "0.33", black_or_yellow: str = "0.67", label: str = "") -> str:
        head = f"label: {label}\n" if label else ""
        return (
            head
            + "atoms: R, B, Y\n"
            + "constraint: exactly_one(R, B, Y)\n"
            + f"premise: P(R) = {red}\n"
            + f"premise: P(B or Y) = {black_or_yellow}\n"
            + f"conclusion: P({event})\n"
        )
    return text
