"""Point-forecast error metrics."""

# standard
from typing import Optional

# external
import numpy as np

# internal
from ..exceptions import LengthMismatch
from .student_t import student_t_nll
from .types import ForecastDistribution, Metrics


def metric_nrmse(
    y_true, y_pred, distribution: Optional[ForecastDistribution] = None
) -> Metrics:
    """
    RMSE and RMSE normalised by the range of `y_true`.

    A constant `y_true` has no range; nrmse then equals rmse. When a
    predictive distribution is given, the mean NLL per forecast row is
    reported too.

    :raises LengthMismatch: the arrays differ in shape or are empty.
    """
    y_true = np.asarray(y_true, dtype=float)
    y_pred = np.asarray(y_pred, dtype=float)
    if y_true.shape != y_pred.shape:
        raise LengthMismatch(
            f"Truth has shape {y_true.shape}, prediction {y_pred.shape}."
        )
    if y_true.size == 0:
        raise LengthMismatch("Cannot score empty predictions.")

    rmse = float(np.sqrt(np.mean((y_true - y_pred) ** 2)))
    spread = float(np.ptp(y_true))
    nrmse = rmse / spread if spread > 0 else rmse

    mean_nll = None
    if distribution is not None:
        rows = y_true.shape[0] if y_true.ndim > 1 else 1
        mean_nll = student_t_nll(distribution, y_true) / rows
    return Metrics(rmse=rmse, nrmse=nrmse, mean_nll=mean_nll)
