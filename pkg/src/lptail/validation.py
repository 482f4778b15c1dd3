"""Input validation helpers used by the estimators and the CLI.

These mirror the role scikit-learn's ``check_array`` plays: coerce
user input to a canonical form early and fail with a clear message.
"""

import numpy as np

from .errors import DomainError


def check_sample(x, name="sample"):
    """Coerce ``x`` to a finite, nonempty, read-only 1-d float array.

    2-d input with a single column is accepted and flattened, so the
    estimators compose with sklearn-style ``(n_samples, 1)`` matrices.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DomainError(f"{name} must be 1-d (got shape {arr.shape})")
    if arr.size == 0:
        raise DomainError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must contain only finite values")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def check_prob(value, name, *, inclusive_low=False, inclusive_high=False):
    """Validate a probability-like scalar against (0, 1) with optional closures."""
    v = float(value)
    if not np.isfinite(v):
        raise DomainError(f"{name} must be finite, got {value!r}")
    low_ok = v >= 0.0 if inclusive_low else v > 0.0
    high_ok = v <= 1.0 if inclusive_high else v < 1.0
    if not (low_ok and high_ok):
        lo = "[" if inclusive_low else "("
        hi = "]" if inclusive_high else ")"
        raise DomainError(f"{name} must lie in {lo}0, 1{hi}, got {value!r}")
    return v


def check_positive(value, name):
    v = float(value)
    if not np.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return v


def check_order(value, name="p"):
    """Loss-power orders must satisfy p >= 1."""
    v = float(value)
    if not np.isfinite(v) or v < 1.0:
        raise DomainError(f"{name} must be >= 1, got {value!r}")
    return v


def check_count(value, name, minimum=1):
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be an integer, got {value!r}") from None
    if v != float(value) or v < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return v
