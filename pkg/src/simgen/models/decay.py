# standard
# external
import numpy as np

# internal
from ..exceptions import ModelError
from ..ode_engine.systems import OdeSystem
from ..ode_engine.types import ParameterSet


class ExponentialDecay(OdeSystem):
    """y' = -k y. Sampled windows of it are exactly linear in their inputs."""

    name = "exponential_decay"
    state_names = ("y",)
    parameter_names = ("k",)

    def validate_params(self, params: ParameterSet) -> None:
        super().validate_params(params)
        if not np.isfinite(params["k"]):
            raise ModelError(f"exponential_decay: k must be finite, got {params['k']}.")

    def rhs(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        return -params["k"] * y

    def jacobian(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        return np.array([[-params["k"]]])
