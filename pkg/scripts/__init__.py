"""
Test-suite for sb-kit.

Run with `pytest` from the project root.
"""
