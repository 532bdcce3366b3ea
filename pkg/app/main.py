import sys

from app.cli import run


def main() -> None:
    """Console entry point of ``sfqft``"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
