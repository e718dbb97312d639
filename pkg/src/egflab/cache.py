"""Disk cache for expensive class sums.

One JSON record per line: {"key": ..., "value": ..., "timestamp": ...}.
Writes go through a temp file in the same directory followed by an atomic
rename, so readers never see a torn file.  Corrupted lines are skipped
with a warning and never trusted; the cache is advisory and hits must be
bit-identical to recomputation.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
import warnings
from pathlib import Path


class CoefficientCache:
    def __init__(self, path):
        self.path = Path(path)
        self._records: dict[str, tuple[str, float]] = {}
        self._load()

    def _load(self):
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    key = record["key"]
                    value = record["value"]
                    stamp = float(record.get("timestamp", 0.0))
                    if not isinstance(key, str) or not isinstance(value, str):
                        raise TypeError("key and value must be strings")
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    warnings.warn(
                        f"{self.path}: skipping corrupted cache line {lineno}: {exc}"
                    )
                    continue
                self._records[key] = (value, stamp)

    def __len__(self):
        return len(self._records)

    def get(self, key: str) -> str | None:
        entry = self._records.get(key)
        return entry[0] if entry else None

    def put(self, key: str, value: str):
        old = self._records.get(key)
        if old is not None and old[0] == value:
            return
        self._records[key] = (value, time.time())
        self._flush()

    def _flush(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(
            prefix=self.path.name + ".", dir=self.path.parent
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                for key, (value, stamp) in self._records.items():
                    handle.write(
                        json.dumps({"key": key, "value": value, "timestamp": stamp})
                        + "\n"
                    )
            os.replace(tmp_name, self.path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise
