"""
Measured-dataset downloader with local caching.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import hashlib
import logging
from pathlib import Path
from urllib.parse import urlparse

import requests

logger = logging.getLogger(__name__)


def is_remote(location: str) -> bool:
    return urlparse(str(location)).scheme in ("http", "https")


class DatasetDownloader:
    """Fetch dataset CSVs over HTTP once and reuse the cached copy."""

    TIMEOUT_SECONDS = 60

    def __init__(self, cache_dir: Path):
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def cache_path(self, url: str) -> Path:
        """Stable cache file name: URL basename plus a short URL digest."""
        stem = Path(urlparse(url).path).stem or "dataset"
        digest = hashlib.sha256(url.encode("utf-8")).hexdigest()[:12]
        return self.cache_dir / f"{stem}-{digest}.csv"

    def download(self, url: str) -> Path:
        """Download ``url`` if not cached, return the path to the local file."""
        cache_file = self.cache_path(url)
        if cache_file.exists():
            logger.info("using cached dataset: %s", cache_file)
            return cache_file

        logger.info("downloading dataset %s", url)
        response = requests.get(url, timeout=self.TIMEOUT_SECONDS)
        response.raise_for_status()

        partial = cache_file.with_suffix(".part")
        with open(partial, "wb") as f:
            f.write(response.content)
        partial.replace(cache_file)

        logger.info("dataset downloaded and cached to %s", cache_file)
        return cache_file
