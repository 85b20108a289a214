"""Constants for the weakmeas CLI."""

# Exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERIC = 3

# Defaults
DEFAULT_WORKERS = 1
DEFAULT_SCAN_POINTS = 50
CONFIG_FILE_NAME = "config.json"
