"""
On-disk persistence of the Hecke basis-product memo table.

Loading is advisory: a missing or unreadable file means an empty cache. An
evenly spaced sample of at most VERIFY_SAMPLE entries is recomputed on load
and one wrong value rejects the whole file; the remaining entries are trusted.
"""
import json
import logging
import os
import shutil
import traceback
from typing import Optional

from .errors import IwahoriError, VerificationError
from .hecke import HeckeAlgebra, HeckeElement

logger = logging.getLogger(__name__)

CACHE_SCHEMA = "iwahori-kit/cache/1"
VERIFY_SAMPLE = 32


class ProductCache:
    """Helper class to load and save the products of one HeckeAlgebra"""

    def __init__(self, cache_dir: str, algebra: HeckeAlgebra):
        self.cache_dir = cache_dir
        self.algebra = algebra
        kind, d = algebra.rd.key
        self.path = os.path.join(cache_dir, f"products_{kind}_{d}.json")

    @property
    def backup_path(self) -> str:
        return f"{self.path}.bak"

    def load(self) -> int:
        """Load stored products into the algebra; returns the number of entries loaded"""
        if not os.path.exists(self.path):
            logger.info(f"No product cache at {self.path}, starting empty")
            return 0
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                payload = json.load(f)
            if payload.get("schema") != CACHE_SCHEMA:
                raise ValueError(f"unexpected schema {payload.get('schema')!r}")
            if [payload.get("group"), payload.get("d")] != list(self.algebra.rd.key):
                raise ValueError(f"cache belongs to {payload.get('group')}({payload.get('d')})")
            entries = payload.get("entries", [])
            self._verify_sample(entries)
            loaded = self.algebra.import_products(entries)
        except (OSError, ValueError, KeyError, TypeError, AttributeError, IwahoriError) as e:
            logger.warning(f"Ignoring unreadable product cache {self.path}: {e}")
            return 0
        logger.info(f"Loaded {loaded} cached products from {self.path}")
        return loaded

    def _verify_sample(self, entries) -> None:
        """Recompute evenly spaced entries with a fresh algebra; any mismatch rejects the file."""
        reference = HeckeAlgebra(self.algebra.W)
        step = max(1, len(entries) // VERIFY_SAMPLE)
        sample = entries[::step][:VERIFY_SAMPLE]
        for entry in sample:
            x = self.algebra.W.element_from_word(*entry["x"])
            y = self.algebra.W.element_from_word(*entry["y"])
            expected = HeckeElement(self.algebra, reference.basis_product(x, y))
            if self.algebra.from_json(entry["value"]) != expected:
                raise VerificationError(f"stored product for x={entry['x']}, y={entry['y']} is wrong")
        logger.debug(f"Verified {len(sample)} of {len(entries)} cached products")

    def save(self) -> bool:
        """Write the current memo table, keeping a backup of the previous file"""
        try:
            os.makedirs(self.cache_dir, exist_ok=True)
            self._backup()
            kind, d = self.algebra.rd.key
            payload = {
                "schema": CACHE_SCHEMA,
                "group": kind,
                "d": d,
                "entries": self.algebra.export_products(),
            }
            with open(self.path, "w", encoding="utf-8") as f:
                json.dump(payload, f, sort_keys=True)
            logger.info(f"Saved {len(payload['entries'])} products to {self.path}")
            return True
        except Exception as e:
            logger.error(f"Error saving product cache: {e}")
            logger.error(traceback.format_exc())
            self._restore_backup()
            return False

    def _backup(self) -> None:
        if os.path.exists(self.path):
            logger.debug(f"Creating backup at {self.backup_path}")
            shutil.copyfile(self.path, self.backup_path)

    def _restore_backup(self) -> None:
        if os.path.exists(self.backup_path):
            logger.info("Restoring product cache from backup...")
            shutil.copyfile(self.backup_path, self.path)


def open_cache(cache_dir: Optional[str], algebra: HeckeAlgebra) -> Optional[ProductCache]:
    """ProductCache for the directory with its contents loaded, or None when caching is off."""
    if not cache_dir:
        return None
    cache = ProductCache(cache_dir, algebra)
    cache.load()
    return cache
