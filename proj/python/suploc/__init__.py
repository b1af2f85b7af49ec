"""Support recovery of measures from moments via orthogonal-polynomial roots."""

try:
    from ._suploc import (  # installed wheel
        SuplocError,
        hausdorff,
        interval_iou,
        moments,
        recover,
        recover_moments,
        recurrence,
    )
except ImportError:  # in-tree build with the extension on PYTHONPATH
    from _suploc import (  # type: ignore[no-redef]
        SuplocError,
        hausdorff,
        interval_iou,
        moments,
        recover,
        recover_moments,
        recurrence,
    )

__all__ = [
    "SuplocError",
    "hausdorff",
    "interval_iou",
    "moments",
    "recover",
    "recover_moments",
    "recurrence",
]
