"""Weighted Motzkin numbers, complementary Bell numbers and their 2-adic structure."""
from .engine import f_exact, f_mod, motzkin_number, scan_mod, series_from_cf
from .weights import ParityPoly, WeightSystem, fold_fall, preset, weight_at

__version__ = "0.1.0"

__all__ = ["ParityPoly", "WeightSystem", "f_exact", "f_mod", "fold_fall", "motzkin_number",
           "preset", "scan_mod", "series_from_cf", "weight_at"]
