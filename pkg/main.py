"""
Main application entry point for sb-kit.
"""
import sys

from core.config import Config
from utils.certificates.cli import main as cli_main


def main() -> int:
    """Validate configuration, then hand the arguments to the sb-kit CLI."""
    try:
        Config.validate()
    except ValueError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return 2
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
