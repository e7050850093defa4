# src/coinvariants/db/cache.py
"""
Persistent FA-matrix cache (SQLite + platformdirs).

Computed matrices are stored one row per (spec hash, kind, key), where the
spec hash is `VoaSpec.fingerprint` (SHA-256 of its fields). Payloads are JSON
encoded integer rows stored as BLOBs, tagged with SCHEMA_VERSION; rows written
under another version are purged when the store opens.

Location
--------
- FA_RANK_CACHE_DIR, when set, always enables the cache in that directory.
- Otherwise the cache is enabled only by `cache.enabled` in settings.yaml and
  lives in the platform user data dir:

  macOS:   ~/Library/Application Support/coinvariants/
  Linux:   ~/.local/share/coinvariants/
  Windows: C:\\Users\\<user>\\AppData\\Local\\coinvariants\\
"""

from __future__ import annotations

import json
import logging
import os
import sqlite3
import threading
from functools import lru_cache
from pathlib import Path
from typing import Optional

from platformdirs import user_data_dir

from coinvariants.config.loader import get_section
from coinvariants.fusion.spec import Rows

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CACHE_DIR_ENV_VAR = "FA_RANK_CACHE_DIR"
DB_FILENAME = "fa_matrices.db"


# ============================================================================
# Paths / connection helpers
# ============================================================================

def _get_data_dir(app_name: str) -> Path:
    data_dir = Path(user_data_dir(appname=app_name))
    data_dir.mkdir(parents=True, exist_ok=True)
    return data_dir


def resolve_cache_dir() -> Optional[Path]:
    """
    Return the cache directory, or None when persistence is disabled.
    """
    env_path = os.getenv(CACHE_DIR_ENV_VAR)
    if env_path:
        path = Path(env_path).expanduser()
        path.mkdir(parents=True, exist_ok=True)
        return path
    app_name = _configured_app_name()
    if app_name is None:
        return None
    return _get_data_dir(app_name)


@lru_cache(maxsize=1)
def _configured_app_name() -> Optional[str]:
    """App name for the user data dir when settings enable the cache, else None."""
    try:
        cfg = get_section("cache")
    except FileNotFoundError:
        return None
    if not bool(cfg.get("enabled", False)):
        return None
    return str(cfg.get("app_name", "coinvariants"))


# ============================================================================
# Store
# ============================================================================

class MatrixStore:
    """
    Thread-safe key/value store of integer matrices.

    A single connection is shared behind a lock (``check_same_thread=False``).
    """

    def __init__(self, directory: Path) -> None:
        self.path = Path(directory) / DB_FILENAME
        self._lock = threading.Lock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self.init_db()

    def init_db(self) -> None:
        """
        Create the table if needed and drop rows from other schema versions.
        Safe to call multiple times.
        """
        with self._lock:
            self._conn.execute(
                """
                CREATE TABLE IF NOT EXISTS fa_matrices (
                    spec_hash TEXT NOT NULL,
                    kind TEXT NOT NULL,
                    key TEXT NOT NULL,
                    schema_version INTEGER NOT NULL,
                    payload BLOB NOT NULL,
                    created_at DATETIME DEFAULT CURRENT_TIMESTAMP,
                    PRIMARY KEY (spec_hash, kind, key)
                )
                """
            )
            purged = self._conn.execute(
                "DELETE FROM fa_matrices WHERE schema_version != ?", (SCHEMA_VERSION,)
            ).rowcount
            self._conn.commit()
        if purged:
            logger.info("purged %d cached matrices from older schema versions", purged)

    def get(self, spec_hash: str, kind: str, key: str) -> Optional[Rows]:
        with self._lock:
            row = self._conn.execute(
                "SELECT payload FROM fa_matrices WHERE spec_hash = ? AND kind = ? AND key = ? AND schema_version = ?",
                (spec_hash, kind, key, SCHEMA_VERSION),
            ).fetchone()
        if row is None:
            return None
        try:
            data = json.loads(bytes(row[0]).decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            logger.warning("ignoring unreadable cache entry %s/%s/%s", spec_hash[:12], kind, key)
            return None
        return tuple(tuple(int(x) for x in r) for r in data)

    def put(self, spec_hash: str, kind: str, key: str, rows: Rows) -> None:
        payload = json.dumps([list(r) for r in rows]).encode("utf-8")
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO fa_matrices (spec_hash, kind, key, schema_version, payload) VALUES (?, ?, ?, ?, ?)",
                (spec_hash, kind, key, SCHEMA_VERSION, sqlite3.Binary(payload)),
            )
            self._conn.commit()

    def count(self) -> int:
        with self._lock:
            return int(self._conn.execute("SELECT COUNT(*) FROM fa_matrices").fetchone()[0])

    def close(self) -> None:
        with self._lock:
            self._conn.close()


_STORES: dict[Path, MatrixStore] = {}
_STORES_LOCK = threading.Lock()


def get_store() -> Optional[MatrixStore]:
    """
    Return the store for the currently configured directory (None if disabled).
    """
    directory = resolve_cache_dir()
    if directory is None:
        return None
    directory = directory.resolve()
    with _STORES_LOCK:
        store = _STORES.get(directory)
        if store is None:
            logger.debug("opening fa-matrix cache at %s", directory)
            store = MatrixStore(directory)
            _STORES[directory] = store
        return store
