"""Logging configuration for argstrength."""

import logging
import sys
from datetime import datetime
from pathlib import Path


def get_log_directory() -> Path:
    """Get platform-specific log directory."""
    if sys.platform == "darwin":
        # macOS: ~/Library/Logs/ArgStrength/
        return Path.home() / "Library" / "Logs" / "ArgStrength"
    elif sys.platform == "win32":
        # Windows: %LOCALAPPDATA%/ArgStrength/logs/
        local_app_data = Path.home() / "AppData" / "Local"
        return local_app_data / "ArgStrength" / "logs"
    else:
        # Linux/other: ~/.config/argstrength/logs/ (XDG standard)
        return Path.home() / ".config" / "argstrength" / "logs"


LOG_DIR = get_log_directory()

# stdout carries reports, so the console handler writes to stderr and stays quiet by default
CONSOLE_LEVEL = logging.WARNING


def setup_logger() -> logging.Logger:
    """Setup and return the app logger."""
    logger = logging.getLogger("argstrength")
    logger.setLevel(logging.DEBUG)

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    # File handler, skipped when the log directory is not writable
    try:
        LOG_DIR.mkdir(parents=True, exist_ok=True)
        log_file = LOG_DIR / f"argstrength_{datetime.now().strftime('%Y-%m-%d')}.log"
        file_handler = logging.FileHandler(log_file)
    except OSError:
        file_handler = None
    if file_handler is not None:
        file_handler.setLevel(logging.DEBUG)
        file_formatter = logging.Formatter(
            "%(asctime)s | %(levelname)-7s | %(message)s",
            datefmt="%H:%M:%S"
        )
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(CONSOLE_LEVEL)
    console_formatter = logging.Formatter("%(levelname)-7s | %(message)s")
    console_handler.setFormatter(console_formatter)
    console_handler.set_name("console")
    logger.addHandler(console_handler)

    return logger


def set_console_level(level: int) -> None:
    """Change how much reaches the terminal (the log file always gets DEBUG)."""
    for handler in log.handlers:
        if handler.get_name() == "console":
            handler.setLevel(level)


# Global logger instance
log = setup_logger()
