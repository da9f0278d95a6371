"""Tests related to pyqfim module."""
