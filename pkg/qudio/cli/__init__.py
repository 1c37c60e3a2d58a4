from .main import main, run, build_parser, UsageError, EXIT_SUCCESS, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL
from .manifest import RunManifest
