"""
Entry point for the CSEI CLI.
"""

from csei.cli.main import main

if __name__ == "__main__":
    main()
