"""CSV rendering for sweep rows. Locale independent, nine significant digits."""
from __future__ import annotations

import math

from .capacity import SweepRow

SWEEP_COLUMNS = ("snr_db", "lower", "upper", "low_snr", "high_snr", "exact", "mc_mean", "mc_stderr", "trials")
CAPACITY_COLUMNS = ("lower", "upper", "low_snr", "high_snr", "exact", "mc_mean", "mc_stderr")


def fmt(x: float) -> str:
    if x == 0:
        x = 0.0  # drop the sign of -0.0
    return format(x, ".9g")


def sweep_header(with_config: bool = False) -> str:
    cols = ("config",) + SWEEP_COLUMNS if with_config else SWEEP_COLUMNS
    return ",".join(cols)


def sweep_line(row: SweepRow, units: str = "nats", config: str | None = None) -> str:
    scale = 1.0 / math.log(2.0) if units == "bits" else 1.0
    fields = [fmt(row.snr_db)]
    fields += [fmt(getattr(row, c) * scale) for c in CAPACITY_COLUMNS]
    fields.append(str(row.trials))
    if config is not None:
        fields.insert(0, config)
    return ",".join(fields)


def sweep_csv(rows, units: str = "nats", config: str | None = None, header: bool = True) -> str:
    if units not in ("nats", "bits"):
        raise ValueError(f"units must be 'nats' or 'bits', got {units!r}")
    lines = [sweep_header(config is not None)] if header else []
    lines += [sweep_line(r, units, config) for r in rows]
    return "\n".join(lines) + "\n"
