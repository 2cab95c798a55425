"""Tests for construction terms and sample files."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from pitree.config import PitreeConfig
from pitree.constructions import PipelineTree, ProductTree, SorgenfreyTree, StandardTree
from pitree.errors import ConfigError
from pitree.hybrid import HybridFoliageTree
from pitree.points import SorgPoint
from pitree.symsets import SorgIv
from pitree.terms import build_alpha, build_cert, build_tree, load_samples, load_tree
from pitree.verify import FaultyTree


class TestBuildTree:
    """Tests for build_tree."""

    def test_factor_trees(self) -> None:
        """Test the two base constructions."""
        assert isinstance(build_tree({"standard": {}}), StandardTree)
        assert isinstance(build_tree({"sorgenfrey": {}}), SorgenfreyTree)
        assert isinstance(build_tree("standard"), StandardTree)

    def test_product_lambda_alias(self) -> None:
        """Test that products take "lambda" and "omega"."""
        term = {"product": {"lambda": 2, "components": [{"standard": {}}, {"sorgenfrey": {}}]}}
        tree = build_tree(term)
        assert isinstance(tree, ProductTree)
        assert tree.lam == 2
        omega = build_tree({"product": {"lambda": "omega", "components": [{"standard": {}}]}})
        assert omega.lam is None

    def test_cocountable(self) -> None:
        """Test removal of points given as JSON."""
        term = {"cocountable": {"base": {"sorgenfrey": {}}, "points": [{"sorg": "0"}]}}
        tree = build_tree(term)
        assert isinstance(tree, HybridFoliageTree)
        assert tree.loss == (SorgPoint(Fraction(0)),)

    def test_rescale(self) -> None:
        """Test rescaling by a named alpha."""
        tree = build_tree({"rescale": {"base": {"standard": {}}, "alpha": "2n+1"}})
        assert isinstance(tree, HybridFoliageTree)
        assert tree.grafts.alpha(3) == 7

    def test_pipeline(self) -> None:
        """Test the pipeline with default and explicit certificates."""
        term = {
            "pipeline": {
                "components": [
                    {"tree": {"sorgenfrey": {}}},
                    {"tree": {"sorgenfrey": {}}, "gamma": {"cofinite_upto": 8}},
                ]
            }
        }
        tree = build_tree(term, PitreeConfig(workers=1))
        assert isinstance(tree, PipelineTree)
        assert tree.lam == 2

    def test_faulty(self) -> None:
        """Test a seeded faulty tree."""
        tree = build_tree({"faulty": {"base": {"standard": {}}, "fault": "overlap", "seed": 4}})
        assert isinstance(tree, FaultyTree)
        assert tree.seed == 4

    @pytest.mark.parametrize(
        "term, message",
        [
            ({"ball": {}}, "Unknown construction"),
            ({"standard": {}, "sorgenfrey": {}}, "single-key"),
            ({"product": {"lambda": 2}}, "Invalid product term"),
            ({"faulty": {"base": {"standard": {}}, "fault": "flip"}}, "Invalid faulty term"),
            ({"cocountable": {"base": {"standard": {}}, "points": [{"sorg": "x"}]}}, "point"),
        ],
    )
    def test_invalid_terms(self, term: dict, message: str) -> None:
        """Test that malformed terms raise ConfigError."""
        with pytest.raises(ConfigError, match=message):
            build_tree(term)


class TestCatalogs:
    """Tests for alphas and certificates."""

    def test_alphas(self) -> None:
        """Test the alpha catalog."""
        assert build_alpha("identity")(4) == 4
        assert build_alpha("2n+1")(4) == 9
        assert build_alpha({"affine": {"scale": 3, "offset": 0}})(2) == 6
        assert build_alpha({"table": {"values": [0, 2], "tail_step": 3}})(3) == 8

    def test_bad_alphas(self) -> None:
        """Test rejection of unknown or incomplete alphas."""
        with pytest.raises(ConfigError, match="Unknown alpha"):
            build_alpha("square")
        with pytest.raises(ConfigError, match="Invalid affine alpha"):
            build_alpha({"affine": {"scale": 2}})

    def test_certificates(self) -> None:
        """Test the certificate catalog."""
        assert build_cert("cofinite").name == "cofinite"
        assert build_cert({"cofinite_upto": 4}).size == 5
        assert build_cert({"progression": 3}).member(1).contains(3)
        with pytest.raises(ConfigError, match="Unknown certificate"):
            build_cert("ultra")
        with pytest.raises(ConfigError, match="Invalid cofinite_upto"):
            build_cert({"cofinite_upto": "many"})


class TestFiles:
    """Tests for loading terms and samples from disk."""

    def test_load_tree(self, tmp_path: Path) -> None:
        """Test loading a term file."""
        path = tmp_path / "tree.json"
        path.write_text(json.dumps({"standard": {}}))
        assert isinstance(load_tree(path), StandardTree)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that unreadable files raise ConfigError."""
        with pytest.raises(ConfigError, match="Cannot read"):
            load_tree(tmp_path / "missing.json")

    def test_load_samples(self, tmp_path: Path) -> None:
        """Test loading (point, neighborhood) pairs."""
        path = tmp_path / "samples.json"
        path.write_text(json.dumps([{"point": {"sorg": "1/3"}, "nbhd": {"sorg": ["1/3", "7/12"]}}]))
        samples = load_samples(path)
        assert samples[0].point == SorgPoint(Fraction(1, 3))
        assert samples[0].nbhd == SorgIv(Fraction(1, 3), Fraction(7, 12))

    def test_invalid_samples(self, tmp_path: Path) -> None:
        """Test that samples must be a list of valid pairs."""
        path = tmp_path / "samples.json"
        path.write_text(json.dumps({"point": {"sorg": "0"}}))
        with pytest.raises(ConfigError, match="JSON list"):
            load_samples(path)
        path.write_text(json.dumps([{"point": {"sorg": "0"}}]))
        with pytest.raises(ConfigError, match="Invalid sample"):
            load_samples(path)
