# Where command results go: a file under the output directory, or stdout
from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any

from ccgame.config import RunConfig
from ccgame.utils.json_io import canonical_json, write_text

logger = logging.getLogger(__name__)


def emit(payload: Any, out: str | None, config: RunConfig) -> None:
    text = canonical_json(payload)
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(out)
    if not target.is_absolute():
        target = config.output_dir / target
    write_text(target, text)
    logger.info(f"Wrote {target}")
