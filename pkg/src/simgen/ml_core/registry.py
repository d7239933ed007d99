"""Model family registry, construction and JSON persistence."""

# standard
import json
import logging
from pathlib import Path
from typing import Type

# internal
from ..exceptions import LearningError, UnknownModelFamily
from ..monitor import runmon
from .base import Regressor
from .forest import RandomForest
from .knn import KnnModel
from .linear import LinearModel
from .nn import NnModel
from .tree import RegressionTree
from .types import ModelFamily, ModelSpec
from .windows import WindowedDataset

event_logger = logging.getLogger("events")

MODEL_FORMAT = 1

MODEL_REGISTRY: dict[str, Type[Regressor]] = {
    ModelFamily.LINEAR.value: LinearModel,
    ModelFamily.KNN.value: KnnModel,
    ModelFamily.TREE.value: RegressionTree,
    ModelFamily.FOREST.value: RandomForest,
    ModelFamily.NN.value: NnModel,
}


def register_model(
    family: str, cls: Type[Regressor], *, replace: bool = False
) -> Type[Regressor]:
    """
    Make `cls` buildable from specs whose family is `family`.

    :raises LearningError: the family is taken and `replace` is False.
    """
    if family in MODEL_REGISTRY and not replace:
        raise LearningError(f"Model family {family!r} is already registered.")
    MODEL_REGISTRY[family] = cls
    return cls


def registered_families() -> list[str]:
    return sorted(MODEL_REGISTRY)


def build_model(spec: ModelSpec) -> Regressor:
    """:raises UnknownModelFamily: no model is registered for `spec.family`."""
    try:
        cls = MODEL_REGISTRY[spec.family]
    except KeyError:
        raise UnknownModelFamily(
            f"No model family {spec.family!r}; choose from {registered_families()}."
        ) from None
    return cls(spec)


def fit_model(spec: ModelSpec, ds: WindowedDataset) -> Regressor:
    model = build_model(spec).fit(ds)
    runmon.add_named_count("models_fitted", spec.family)
    return model


def save_model(model: Regressor, path: Path) -> None:
    """Write hyperparameters, seed and fitted state to a JSON file."""
    document = {
        "format": MODEL_FORMAT,
        "family": model.spec.family,
        "spec": model.spec.model_dump(mode="json"),
        "state": model.state_dict(),
    }
    Path(path).write_text(json.dumps(document))
    event_logger.info(f"Saved {model.spec.name} model to {path}.")


def load_model(path: Path) -> Regressor:
    """:raises LearningError: the file is not a saved model."""
    try:
        document = json.loads(Path(path).read_text())
        if document.get("format") != MODEL_FORMAT:
            raise LearningError(f"{path} has unsupported model format {document.get('format')}.")
        model = build_model(ModelSpec.model_validate(document["spec"]))
        model.load_state(document["state"])
    except (OSError, ValueError, KeyError) as e:
        raise LearningError(f"Cannot load model from {path}: {e}") from e
    return model
