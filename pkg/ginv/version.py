"""This module contains version information."""

# This file is auto-generated, do not edit by hand
__version__ = "0.1.0"
