"""
Module entry point for the fracfront package.

This allows the package to be executed with `python -m fracfront`.
"""

from fracfront.main import main

if __name__ == "__main__":
    main()
