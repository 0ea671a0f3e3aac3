"""Input validation helpers shared by the estimators."""

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import ValidationError


def check_columns(X, n_columns, name="X"):
    """
    Coerce ``X`` to a finite float64 2-D array with ``n_columns`` columns.

    A 1-D input is accepted when a single column is expected.
    """
    X = np.asarray(X, dtype=np.float64) if not hasattr(X, "iloc") else X
    if n_columns == 1 and np.ndim(X) == 1:
        X = np.reshape(X, (-1, 1))
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_all_finite=True, input_name=name)
    if X.shape[1] != n_columns:
        raise ValidationError(f"{name} must have {n_columns} column(s), got {X.shape[1]}")
    return X


def check_bounds(values, low, high, name, inclusive=True):
    values = np.asarray(values)
    if inclusive:
        bad = (values < low) | (values > high)
    else:
        bad = (values <= low) | (values >= high)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise ValidationError(f"{name} value {values[row]!r} at row {row} is outside [{low}, {high}]")


def check_nonnegative(values, name):
    values = np.asarray(values)
    if (values < 0).any():
        row = int(np.flatnonzero(values < 0)[0])
        raise ValidationError(f"{name} must be >= 0; row {row} holds {values[row]!r}")
