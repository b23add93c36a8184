"""File-based artifact storage for one experiment run."""

import json
import logging
import math
import time
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from quench_lab.core.exceptions import ArtifactWriteError
from quench_lab.core.settings import settings
from quench_lab.models.phase import TimeAveragedHistogram
from quench_lab.models.quantum import QuenchDistribution
from quench_lab.services.dynamics import wrap_centered
from quench_lab.services.histogram import histogram_rows

logger = logging.getLogger(__name__)

COLOR_LEVELS = 256


def make_run_dir(experiment: str, seed: int, root: Optional[Path] = None) -> Path:
    """Fresh timestamped directory under the output root."""
    timestamp = time.strftime("%Y%m%dT%H%M%SZ", time.gmtime())
    return Path(root or settings.output_root) / experiment / f"{timestamp}_seed{seed}"


def format_float(value: float, digits: Optional[int] = None) -> str:
    """``g`` formatting with ``digits`` significant digits."""
    return format(float(value), f".{digits or settings.float_digits}g")


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return _jsonable(obj.model_dump(mode="json"))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def snapshot_rows(coords: np.ndarray, initial_phase: np.ndarray) -> List[tuple]:
    """(phi, n, color_index) rows; color follows phi(0) over 256 levels."""
    phi = wrap_centered(coords[:, 0])
    color = np.floor(
        COLOR_LEVELS * (initial_phase + math.pi) / (2.0 * math.pi)
    ).astype(np.int64)
    color = np.clip(color, 0, COLOR_LEVELS - 1)
    return list(zip(phi.tolist(), coords[:, 1].tolist(), color.tolist()))


class ArtifactWriter:
    """Writes CSV and JSON artifacts into one run directory.

    CSV uses ``,`` separators and LF line endings; floats carry
    ``settings.float_digits`` significant digits. JSON is indented with
    sorted keys.
    """

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)
        self.written: List[str] = []
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactWriteError(
                f"Cannot create output directory {self.out_dir}: {e}",
                details={"path": str(self.out_dir)},
            )

    def _write(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        try:
            # bytes keep LF endings on every platform
            path.write_bytes(text.encode("utf-8"))
        except OSError as e:
            raise ArtifactWriteError(
                f"Failed to write {path}: {e}", details={"path": str(path)}
            )
        if name not in self.written:
            self.written.append(name)
        logger.debug("Artifact written", extra={"path": str(path), "bytes": len(text)})
        return path

    def write_csv(
        self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Path:
        lines = [",".join(header)]
        for row in rows:
            lines.append(
                ",".join(
                    format_float(v) if isinstance(v, float) else str(v) for v in row
                )
            )
        return self._write(name, "\n".join(lines) + "\n")

    def write_json(self, name: str, obj: Any) -> Path:
        text = json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False)
        return self._write(name, text + "\n")

    def write_histogram(
        self, hist: TimeAveragedHistogram, name: Optional[str] = None
    ) -> Path:
        """``hist_<observable>.csv`` with (bin_center, density) rows."""
        return self.write_csv(
            name or f"hist_{hist.name}.csv",
            ("bin_center", "density"),
            histogram_rows(hist),
        )

    def write_distribution(
        self, dist: QuenchDistribution, name: Optional[str] = None
    ) -> Path:
        """``dist_<observable>.csv`` with (m, probability) rows."""
        return self.write_csv(
            name or f"dist_{dist.observable}.csv", ("m", "probability"), dist.rows()
        )

    def write_snapshot(
        self, t: float, coords: np.ndarray, initial_phase: np.ndarray
    ) -> Path:
        return self.write_csv(
            f"snapshots_{format_float(t, 6)}.csv",
            ("phi", "n", "color_index"),
            snapshot_rows(coords, initial_phase),
        )

    def write_text(self, name: str, text: str) -> Path:
        return self._write(name, text)
