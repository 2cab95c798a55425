"""Tests for the pitree command-line interface."""

import json
import os
from collections.abc import Iterator
from pathlib import Path
from unittest import mock

import pytest

from pitree.core import RiseSet
from pitree.verify import ExitCode
from scripts.pitree import build_parser, format_rise, main

ZERO = '{"baire": {"prefix": [], "tail": 0}}'


@pytest.fixture(autouse=True)
def clean_env() -> Iterator[None]:
    """Run every command with default settings."""
    with mock.patch.dict(os.environ, {}, clear=True):
        yield


def write_term(tmp_path: Path, term: dict, name: str = "tree.json") -> str:
    path = tmp_path / name
    path.write_text(json.dumps(term))
    return str(path)


class TestParser:
    """Tests for argument parsing."""

    def test_check_defaults(self) -> None:
        """Test default suite and unset overrides."""
        args = build_parser().parse_args(["check", "--config", "t.json"])
        assert args.suite == "baire"
        assert args.depth is None
        assert args.samples is None

    def test_unknown_suite(self) -> None:
        """Test that suites are restricted to the known ones."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["check", "--suite", "everything"])

    def test_command_required(self) -> None:
        """Test that a subcommand must be given."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestBuild:
    """Tests for the build command."""

    def test_jsonl_to_file(self, tmp_path: Path) -> None:
        """Test JSON-lines export into a new directory."""
        config = write_term(tmp_path, {"standard": {}})
        output = tmp_path / "out" / "standard.jsonl"
        argv = ["build", "--config", config, "--depth", "3", "--sons", "2", "-o", str(output)]
        assert main(argv) == ExitCode.OK
        lines = output.read_text().splitlines()
        assert len(lines) == 10
        assert json.loads(lines[0])["path"] == []

    def test_dot_to_stdout(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test DOT export to stdout."""
        config = write_term(tmp_path, {"sorgenfrey": {}})
        argv = ["build", "--config", config, "--depth", "2", "--sons", "3", "--format", "dot"]
        assert main(argv) == ExitCode.OK
        assert capsys.readouterr().out.startswith('digraph "sorgenfrey"')

    def test_missing_config(self) -> None:
        """Test that build needs a construction term."""
        assert main(["build"]) == ExitCode.CONFIG

    def test_invalid_term(self, tmp_path: Path) -> None:
        """Test that an unknown construction is a config error."""
        config = write_term(tmp_path, {"ball": {}})
        assert main(["build", "--config", config]) == ExitCode.CONFIG


class TestCheck:
    """Tests for the check command."""

    def test_baire_suite(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the standard tree passes."""
        config = write_term(tmp_path, {"standard": {}})
        argv = ["check", "--config", config, "--depth", "3", "--sons", "4", "-w", "1"]
        assert main(argv) == ExitCode.OK
        report = json.loads(capsys.readouterr().out)
        assert report["suite"] == "baire"
        assert report["status"] == "pass"

    def test_faulty_tree(self, tmp_path: Path) -> None:
        """Test that an injected fault exits with a violation."""
        term = {"faulty": {"base": {"standard": {}}, "fault": "overlap", "seed": 1}}
        config = write_term(tmp_path, term)
        argv = ["check", "--config", config, "--depth", "4", "--sons", "6"]
        assert main(argv) == ExitCode.VIOLATION

    def test_hybrid_oracle(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the oracle suite needs no construction term."""
        assert main(["check", "--suite", "hybrid-oracle", "--seed", "7"]) == ExitCode.OK
        assert json.loads(capsys.readouterr().out)["tree"] == "random(100, seed=7)"

    def test_grows_into_with_samples(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test a samples file on a point-removed Sorgenfrey tree."""
        config = write_term(
            tmp_path, {"cocountable": {"base": {"sorgenfrey": {}}, "points": [{"sorg": "0"}]}}
        )
        samples = write_term(
            tmp_path,
            [{"point": {"sorg": "1/3"}, "nbhd": {"sorg": ["1/3", "7/12"]}}],
            "samples.json",
        )
        argv = ["check", "--config", config, "--suite", "grows-into", "--samples", samples]
        argv += ["--depth", "10", "--sons", "8"]
        assert main(argv) in (ExitCode.OK, ExitCode.INCONCLUSIVE)
        report = json.loads(capsys.readouterr().out)
        assert "(♦)" in {e["clause"] for e in report["entries"]}
        assert "fail" not in {e["status"] for e in report["entries"]}

    def test_fip(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the FIP check over generated samples."""
        config = write_term(tmp_path, {"standard": {}})
        argv = ["check", "--config", config, "--suite", "fip", "--depth", "6"]
        assert main(argv) in (ExitCode.OK, ExitCode.INCONCLUSIVE)
        report = json.loads(capsys.readouterr().out)
        assert report["suite"] == "fip"
        assert report["tree"] == "standard"


class TestRise:
    """Tests for the rise command."""

    def test_standard_rise(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the rise of constant 0 in S<0,0>."""
        config = write_term(tmp_path, {"standard": {}})
        argv = ["rise", "--config", config, "--depth", "6", "--point", ZERO]
        argv += ["--nbhd", '{"cyl": [0, 0]}']
        assert main(argv) == ExitCode.OK
        assert capsys.readouterr().out.strip() == "known=[2,3,4,5] undecided=[] unknown_beyond=6"

    def test_bad_point_json(self, tmp_path: Path) -> None:
        """Test that unparsable JSON is a config error."""
        config = write_term(tmp_path, {"standard": {}})
        argv = ["rise", "--config", config, "--point", "{bad", "--nbhd", '{"cyl": []}']
        assert main(argv) == ExitCode.CONFIG

    def test_point_from_another_space(self, tmp_path: Path) -> None:
        """Test that a Sorgenfrey point is refused for the standard tree."""
        config = write_term(tmp_path, {"standard": {}})
        argv = ["rise", "--config", config, "--point", '{"sorg": "0"}', "--nbhd", '{"cyl": []}']
        assert main(argv) == ExitCode.CONFIG

    def test_neighborhood_from_another_space(self, tmp_path: Path) -> None:
        """Test that a Sorgenfrey neighborhood is refused for the standard tree."""
        config = write_term(tmp_path, {"standard": {}})
        argv = ["rise", "--config", config, "--point", ZERO, "--nbhd", '{"sorg": ["0", "1"]}']
        assert main(argv) == ExitCode.CONFIG


class TestFormatRise:
    """Tests for format_rise."""

    def test_format(self) -> None:
        """Test the one-line rise format."""
        line = format_rise(RiseSet(frozenset({3, 1}), 5, frozenset({4})))
        assert line == "known=[1,3] undecided=[4] unknown_beyond=5"
