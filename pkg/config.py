"""Configuration management for argstrength."""

import json
from pathlib import Path

CONFIG_DIR = Path.home() / ".config" / "argstrength"
CONFIG_FILE = CONFIG_DIR / "config.json"

# Ellsberg scenario variants: premises as printed (.33/.67) or as the urn implies (1/3, 2/3)
VARIANTS = {
    "decimal": "p(R) = .33, p(B or Y) = .67",
    "exact": "p(R) = 1/3, p(B or Y) = 2/3",
}

DEFAULT_CONFIG = {
    "max_atoms": 20,
    "places": 4,
    "variant": "decimal",
}


def ensure_config_dir():
    """Create config directory if it doesn't exist."""
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)


def load_config() -> dict:
    """Load configuration from file."""
    ensure_config_dir()
    if CONFIG_FILE.exists():
        try:
            with open(CONFIG_FILE, "r") as f:
                config = json.load(f)
                # Merge with defaults for any missing keys
                return {**DEFAULT_CONFIG, **config}
        except (json.JSONDecodeError, IOError):
            return DEFAULT_CONFIG.copy()
    return DEFAULT_CONFIG.copy()


def save_config(config: dict) -> None:
    """Save configuration to file."""
    ensure_config_dir()
    with open(CONFIG_FILE, "w") as f:
        json.dump(config, f, indent=2)


def _set(key: str, value) -> None:
    config = load_config()
    config[key] = value
    save_config(config)


def _positive(name: str, value: int) -> int:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value


def get_max_atoms() -> int:
    """Get the atom budget for constituent enumeration."""
    return load_config()["max_atoms"]


def set_max_atoms(max_atoms: int) -> None:
    """Set the atom budget."""
    _set("max_atoms", _positive("max_atoms", max_atoms))


def get_places() -> int:
    """Get the number of decimal places used for display."""
    return load_config()["places"]


def set_places(places: int) -> None:
    """Set display precision."""
    if not isinstance(places, int) or places < 0:
        raise ValueError(f"places must be a non-negative integer, got {places!r}")
    _set("places", places)


def get_variant() -> str:
    """Get the default Ellsberg variant."""
    variant = load_config()["variant"]
    return variant if variant in VARIANTS else DEFAULT_CONFIG["variant"]


def set_variant(variant: str) -> None:
    """Set the default Ellsberg variant."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant '{variant}', expected one of {sorted(VARIANTS)}")
    _set("variant", variant)


def reload_config() -> dict:
    """Force reload configuration from file. Returns the reloaded config."""
    return load_config()
