"""Runtime knobs."""

import os

# Largest group order the brute-force oracles will enumerate.  The default
# admits B_5 (3840 elements), hence also D_5 and S_6.
DEFAULT_ORACLE_LIMIT = 3840


def oracle_limit() -> int:
    raw = os.environ.get("NCPART_ORACLE_LIMIT")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ORACLE_LIMIT
