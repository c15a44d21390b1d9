# ABOUTME: Command-line front end: JSON documents in, JSON / CSV results out
# ABOUTME: Exit codes are 0 for a root, 2 for no real root and 1 for any error

from .commands import EXIT_ERROR, EXIT_NO_ROOT, EXIT_OK, run
from .config import CliConfig
from .main import build_parser, main, parse_config

__all__ = ["EXIT_ERROR", "EXIT_NO_ROOT", "EXIT_OK", "CliConfig", "build_parser", "main", "parse_config", "run"]
