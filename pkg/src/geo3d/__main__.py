"""Module entry point: python -m geo3d."""

from geo3d.cli import main

main()
