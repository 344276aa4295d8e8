"""Unit constants and conversions shared by the models.

All byte units are decimal: 1 GB = 10**9 bytes = 8 Gb, 1 TB = 1000 GB.
"""

from __future__ import annotations

BITS_PER_BYTE = 8
GB_PER_TB = 1000.0
J_PER_KWH = 3.6e6
W_PER_KW = 1000.0
HOURS_PER_DAY = 24.0
DAYS_PER_YEAR = 365.0
HOURS_PER_YEAR = DAYS_PER_YEAR * HOURS_PER_DAY  # 8760, no leap years
TB_PER_PB = 1000.0
MB_PER_TB = 1e6


def j_per_gbit_to_j_per_gbyte(j_per_gbit: float) -> float:
    return j_per_gbit * BITS_PER_BYTE


def kj_per_gb_to_kwh_per_tb(kj_per_gb: float) -> float:
    """1 kJ/GB = 1000 kJ/TB = 1000/3600 kWh/TB."""
    return kj_per_gb * 1000.0 / 3600.0


def j_per_gb_to_kwh_per_tb(j_per_gb: float) -> float:
    return j_per_gb * GB_PER_TB / J_PER_KWH


def watt_hours_to_kwh(watts: float, hours: float) -> float:
    return watts * hours / W_PER_KW
