"""
Entry point for the Dunkl-Hermite toolkit command line.
"""

import sys

from src.cli import main as cli_main


def main() -> int:
    """Main entry point"""
    try:
        return cli_main()
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
