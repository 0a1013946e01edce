"""
Backbone current feature: mean shift between the two halves of the last 24 hours.
"""
from typing import Optional, Sequence

import numpy as np

from ..schemas.stats import AffineStats
from .normalization import affine_normalize

SAMPLE_INTERVAL_MINUTES = 10
WINDOW_HOURS = 24


def backbone_current_feature(
    samples: Sequence[float],
    bounds: Optional[AffineStats] = None,
    interval_minutes: int = SAMPLE_INTERVAL_MINUTES,
    window_hours: int = WINDOW_HOURS,
) -> Optional[float]:
    """
    Absolute difference between the mean current of two 12 hour sub-windows.

    Args:
        samples: Time-ordered currents, one every interval_minutes, oldest first,
            the last one taken at the fault time
        bounds: Dataset min/max of the statistic; when given the result is
            affine-normalized into [0, 1]
        interval_minutes: Sampling period
        window_hours: Main window length, split in two equal halves

    Returns:
        The statistic, or None ("not applicable") when a sub-window is empty
    """
    values = np.asarray(samples, dtype=np.float64)
    per_window = (window_hours * 60) // interval_minutes
    values = values[-per_window:]
    # the last sample closes the window; short histories fill the most recent slots
    times = (np.arange(values.shape[0]) + per_window - values.shape[0]) * interval_minutes
    split = (window_hours * 60) / 2.0
    first = values[times < split]
    second = values[times >= split]
    if first.size == 0 or second.size == 0:
        return None
    statistic = float(abs(first.mean() - second.mean()))
    if bounds is not None:
        return affine_normalize(statistic, bounds.min, bounds.max)
    return statistic
