"""Test suite for my_project."""
