"""Declarative construction terms (JSON) and the trees they build.

A term is a single-key object naming a construction:

    {"standard": {}}
    {"sorgenfrey": {}}
    {"cocountable": {"base": T, "points": [P, ...]}}
    {"product": {"lambda": 2 | "omega", "components": [T, ...]}}
    {"rescale": {"base": T, "alpha": A}}
    {"pipeline": {"components": [{"tree": T, "gamma": C}, ...]}}
    {"faulty": {"base": T, "fault": "overlap" | "escape" | "retain", "seed": s}}

Alphas A are "identity", "2n+1", {"affine": {"scale": a, "offset": b}} or
{"table": {"values": [...], "tail_step": k}}; certificates C are "cofinite",
{"cofinite_upto": m} or {"progression": k}.
"""

import json
import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError

from .config import PitreeConfig
from .constructions import (
    Alpha,
    FilterCert,
    affine,
    cocountable_tree,
    cofinite,
    cofinite_upto,
    identity,
    pipeline_tree,
    product_tree,
    progression,
    rescale_tree,
    sorgenfrey_tree,
    standard_tree,
    table,
)
from .core.tree import FoliageTree
from .errors import ConfigError, PitreeError, SerializationError
from .symsets import from_json, point_from_json
from .verify.faults import FaultyTree
from .verify.samples import Sample

logger = logging.getLogger(__name__)

TermData = dict[str, Any]


class CocountableTerm(BaseModel):
    base: TermData
    points: list[Any] = Field(..., description="Points to remove, in cut order")

    model_config = {"extra": "ignore"}


class ProductTerm(BaseModel):
    lam: int | Literal["omega"] = Field(..., alias="lambda", description="2, 3, ... or omega")
    components: list[TermData] = Field(..., min_length=1)

    model_config = {"extra": "ignore", "populate_by_name": True}


class RescaleTerm(BaseModel):
    base: TermData
    alpha: str | dict[str, Any] = "identity"

    model_config = {"extra": "ignore"}


class PipelineComponent(BaseModel):
    tree: TermData
    gamma: str | dict[str, Any] = "cofinite"

    model_config = {"extra": "ignore"}


class PipelineTerm(BaseModel):
    components: list[PipelineComponent]

    model_config = {"extra": "ignore"}


class FaultyTerm(BaseModel):
    base: TermData
    fault: Literal["overlap", "escape", "retain"]
    seed: int = 0

    model_config = {"extra": "ignore"}


class SampleData(BaseModel):
    """One (point, neighborhood) pair of a samples file."""

    point: dict[str, Any] = Field(..., description="Point JSON")
    nbhd: dict[str, Any] = Field(..., description="Neighborhood (ClopenSet JSON)")

    model_config = {"extra": "ignore"}


def _single(data: Any, what: str) -> tuple[str, Any]:
    if isinstance(data, str):
        return data, {}
    if not isinstance(data, dict) or len(data) != 1:
        raise ConfigError(f"A {what} must be a single-key object, got {data!r}")
    tag, body = next(iter(data.items()))
    return str(tag), body


def build_alpha(data: Any) -> Alpha:
    tag, body = _single(data, "alpha")
    try:
        if tag == "identity":
            return identity()
        if tag == "2n+1":
            return affine(2, 1)
        if tag == "affine":
            return affine(int(body["scale"]), int(body["offset"]))
        if tag == "table":
            return table([int(x) for x in body["values"]], int(body["tail_step"]))
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"Invalid {tag} alpha: {body!r}") from err
    raise ConfigError(f"Unknown alpha {tag!r}")


def build_cert(data: Any) -> FilterCert:
    tag, body = _single(data, "certificate")
    try:
        if tag == "cofinite":
            return cofinite()
        if tag == "cofinite_upto":
            return cofinite_upto(int(body))
        if tag == "progression":
            return progression(int(body))
    except (TypeError, ValueError) as err:
        raise ConfigError(f"Invalid {tag} certificate: {body!r}") from err
    raise ConfigError(f"Unknown certificate {tag!r}")


def build_tree(data: Any, config: PitreeConfig | None = None) -> FoliageTree:
    """Build the lazy tree described by a construction term."""
    config = config or PitreeConfig()
    tag, body = _single(data, "construction term")
    try:
        if tag == "standard":
            return standard_tree()
        if tag == "sorgenfrey":
            return sorgenfrey_tree()
        if tag == "cocountable":
            cut = CocountableTerm.model_validate(body)
            return cocountable_tree(
                build_tree(cut.base, config),
                [point_from_json(p) for p in cut.points],
                probe=config.probe,
                search_cap=config.search_cap,
            )
        if tag == "product":
            prod = ProductTerm.model_validate(body)
            lam = None if prod.lam == "omega" else prod.lam
            return product_tree(lam, [build_tree(c, config) for c in prod.components])
        if tag == "rescale":
            resc = RescaleTerm.model_validate(body)
            return rescale_tree(
                build_tree(resc.base, config), build_alpha(resc.alpha), probe=config.probe
            )
        if tag == "pipeline":
            pipe = PipelineTerm.model_validate(body)
            components = [
                (build_tree(c.tree, config), build_cert(c.gamma)) for c in pipe.components
            ]
            return pipeline_tree(components, probe=config.probe, workers=config.workers)
        if tag == "faulty":
            fault = FaultyTerm.model_validate(body)
            return FaultyTree(
                build_tree(fault.base, config),
                fault.fault,
                fault.seed,
                depth=min(3, config.depth),
                probe=config.probe,
            )
    except ValidationError as err:
        raise ConfigError(f"Invalid {tag} term: {err}") from err
    except SerializationError as err:
        raise ConfigError(f"Invalid point in {tag} term: {err}") from err
    raise ConfigError(f"Unknown construction {tag!r}")


def load_json(path: Path) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"Cannot read {path}: {err}") from err


def load_tree(path: Path, config: PitreeConfig | None = None) -> FoliageTree:
    tree = build_tree(load_json(path), config)
    logger.info("Built %s from %s", tree.description, path)
    return tree


def load_samples(path: Path) -> list[Sample]:
    data = load_json(path)
    if not isinstance(data, list):
        raise ConfigError(f"{path} must hold a JSON list of samples")
    samples = []
    for item in data:
        try:
            parsed = SampleData.model_validate(item)
            samples.append(Sample(point_from_json(parsed.point), from_json(parsed.nbhd)))
        except (ValidationError, PitreeError) as err:
            raise ConfigError(f"Invalid sample {item!r}: {err}") from err
    return samples
