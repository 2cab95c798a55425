"""Tests for ruian_import package."""
