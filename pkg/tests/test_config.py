"""Tests for config module."""

import os
from unittest import mock

from pitree.config import PitreeConfig


class TestPitreeConfig:
    """Tests for PitreeConfig dataclass."""

    def test_default_values(self) -> None:
        """Test default configuration values."""
        with mock.patch.dict(os.environ, {}, clear=True):
            config = PitreeConfig()
            assert config.depth == 6
            assert config.sons == 32
            assert config.probe == 2
            assert config.workers == 4
            assert config.seed == 0
            assert config.search_cap == 256
            assert config.log_level == "WARNING"
            assert config.strict_scope is True

    def test_environment_variables(self) -> None:
        """Test configuration from environment variables."""
        env_vars = {
            "PITREE_DEPTH": "8",
            "PITREE_SONS": "16",
            "PITREE_PROBE": "3",
            "PITREE_WORKERS": "2",
            "PITREE_SEED": "42",
            "PITREE_SEARCH_CAP": "64",
            "PITREE_LOG": "debug",
        }
        with mock.patch.dict(os.environ, env_vars, clear=False):
            config = PitreeConfig()
            assert config.depth == 8
            assert config.sons == 16
            assert config.probe == 3
            assert config.workers == 2
            assert config.seed == 42
            assert config.search_cap == 64
            assert config.log_level == "DEBUG"

    def test_strict_scope_values(self) -> None:
        """Test boolean parsing of PITREE_STRICT_SCOPE."""
        for value, expected in [("true", True), ("1", True), ("YES", True), ("false", False)]:
            with mock.patch.dict(os.environ, {"PITREE_STRICT_SCOPE": value}):
                assert PitreeConfig().strict_scope is expected

    def test_explicit_values_override_environment(self) -> None:
        """Test that constructor arguments win over the environment."""
        with mock.patch.dict(os.environ, {"PITREE_DEPTH": "9"}):
            config = PitreeConfig(depth=3)
            assert config.depth == 3
