"""Root-location tables, exclusion regions and monotone families."""

from .registry import ALL_ROWS, EXCLUDED, TABLES, Row, get_row, registry_hash
from .harness import (
    Verdict,
    applicable_rows,
    check_excluded,
    check_row,
    check_table,
    in_row,
    sample_params,
    sweep_excluded,
)
