"""
Command-line entry point
Usage: python configurations.py [--verbose] COMMAND [ARGS]...
"""
from src.cli.main import main

if __name__ == "__main__":
    main()
