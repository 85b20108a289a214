"""Module entry point for the weakmeas CLI."""

from weakmeas.cli.main import main

if __name__ == "__main__":
    main()
