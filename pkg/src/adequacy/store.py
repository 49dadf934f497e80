"""Content-addressed on-disk store for computed scenario results.

A scenario request is canonicalized to JSON (sorted keys) and hashed; the
hash is both the job id and the directory name. Results are written to a
temp directory first and renamed into place, so readers never observe a
partially written result. Formats match the CLI artifacts (JSON + CSV).
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from pathlib import Path

__all__ = ["canonical_request_hash", "ResultStore"]


def canonical_request_hash(request: dict) -> str:
    blob = json.dumps(request, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ResultStore:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root) / "store"
        self.root.mkdir(parents=True, exist_ok=True)

    def dir_for(self, job_id: str) -> Path:
        return self.root / job_id

    def is_complete(self, job_id: str) -> bool:
        return (self.dir_for(job_id) / "metrics.json").is_file()

    def read_json(self, job_id: str, name: str) -> dict:
        return json.loads((self.dir_for(job_id) / name).read_text(encoding="utf-8"))

    def write_result(self, job_id: str, files: dict[str, str]) -> None:
        """Atomically publish {filename: content} as the job's result."""
        final = self.dir_for(job_id)
        if final.exists():
            return
        tmp = Path(tempfile.mkdtemp(dir=self.root, prefix=f".{job_id[:12]}-"))
        try:
            for name, content in files.items():
                (tmp / name).write_text(content, encoding="utf-8", newline="")
            os.replace(tmp, final)
        except OSError:
            # lost a publish race or rename failed; clean up the temp dir
            shutil.rmtree(tmp, ignore_errors=True)
            if not final.exists():
                raise
