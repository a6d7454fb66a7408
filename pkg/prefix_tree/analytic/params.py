import math

import attrs

__all__ = (
    "LG_E",
    "GAMMA",
    "ALPHA",
    "DEPTH_OFFSET",
    "REDUCED_ALPHA",
    "FP_LIMIT",
    "ApproxParams",
    "EvalConfig",
    "DEFAULT_APPROX",
    "DEFAULT_CONFIG",
)

LG_E = 1 / math.log(2)
GAMMA = 0.5772156649015329
# bits per element of the minimal tree
ALPHA = 0.5 + (1 + GAMMA) * LG_E
# D_n - lg(n) for large n
DEPTH_OFFSET = 0.5 + GAMMA * LG_E
# bits per element of the reduced tree
REDUCED_ALPHA = ALPHA - math.log2(math.e / 2)
# F_n for large n
FP_LIMIT = LG_E / 2


@attrs.frozen
class ApproxParams:
    alpha: float = ALPHA
    # fitted oscillation amplitude and phase
    epsilon: float = 1.6e-6
    delta: float = 0.88
    gamma: float = GAMMA


@attrs.frozen
class EvalConfig:
    n_max_exact: int = attrs.field(
        default=4096, validator=[attrs.validators.instance_of(int), attrs.validators.ge(2)]
    )
    tail_tol: float = attrs.field(default=1e-15, validator=attrs.validators.gt(0))
    memoize: bool = True
    max_terms: int = attrs.field(default=4096, validator=attrs.validators.ge(64))


DEFAULT_APPROX = ApproxParams()
DEFAULT_CONFIG = EvalConfig()
