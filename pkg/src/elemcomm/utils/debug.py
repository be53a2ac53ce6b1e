"""Debug utility for elemcomm.

Provides a single debug() function that can be toggled via the
ELEMCOMM_DEBUG environment variable. Used for low-level tracing inside the
closure and rewriting loops, where structured log events would be too noisy.

Usage:
    from elemcomm.utils.debug import debug

    debug(f"closure frontier {len(frontier)}")

Environment:
    ELEMCOMM_DEBUG: Set to '1', 'true', 'yes' (case-insensitive) to enable
                    debug output. Any other value or unset disables it.
"""

import os
import sys
from typing import Any

_DEBUG_ENABLED = os.environ.get("ELEMCOMM_DEBUG", "").lower() in (
    "1",
    "true",
    "yes",
)


def debug(msg: Any) -> None:
    """Print debug message if ELEMCOMM_DEBUG is enabled.

    Args:
        msg: Message to print. Will be converted to string.

    Note:
        The environment variable is read at import time.
    """
    if _DEBUG_ENABLED:
        print(f"[DEBUG] {msg}", file=sys.stderr)
