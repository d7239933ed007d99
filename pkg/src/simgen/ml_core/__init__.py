"""Windowed forecasting datasets, model families, Student's t head and metrics."""

from .base import Regressor
from .forest import RandomForest, fit_forest, predict_forest
from .knn import KnnModel, fit_knn, nearest_indices, predict_knn, squared_distances
from .linear import LinearModel, fit_linear, predict_linear
from .metrics import metric_nrmse
from .nn import NnModel, fine_tune, init_params, nn_forward, nn_loss_and_grad, nn_train
from .registry import (
    MODEL_REGISTRY,
    build_model,
    fit_model,
    load_model,
    register_model,
    registered_families,
    save_model,
)
from .student_t import interval, nll_gradients, student_t_nll, t_cdf, t_quantile
from .tree import RegressionTree, fit_tree, predict_tree
from .types import ForecastDistribution, Head, Metrics, ModelFamily, ModelSpec, Scaling
from .windows import WindowedDataset, make_windows, window_count
