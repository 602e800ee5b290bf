"""
Entry point for the cbord package when run as a module.
"""

from cbord.main import main

if __name__ == "__main__":
    exit(main())
