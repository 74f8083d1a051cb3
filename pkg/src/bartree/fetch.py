"""HTTP fetching with per-host politeness."""
from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass
from urllib.parse import urlsplit

import requests

from .errors import FetchTimeout, HttpStatus, NetworkError

log = logging.getLogger(__name__)

MAX_REDIRECTS = 5
DEFAULT_TIMEOUT = 30.0
DEFAULT_USER_AGENT = "bartree-harvest/1.0"


@dataclass(frozen=True)
class FetchResult:
    body: bytes
    final_url: str
    status: int


def env_timeout() -> float:
    return float(os.environ.get("HARVEST_TIMEOUT_SECS", DEFAULT_TIMEOUT))


def env_user_agent() -> str:
    return os.environ.get("HARVEST_USER_AGENT", DEFAULT_USER_AGENT)


def valid_url(url: str) -> bool:
    parts = urlsplit(url)
    return parts.scheme in ("http", "https") and bool(parts.netloc)


class Fetcher:
    """Fetches pages with at most one request in flight per host and a
    minimum delay between consecutive requests to the same host."""

    def __init__(
        self,
        timeout: float | None = None,
        user_agent: str | None = None,
        delay: float = 1.0,
    ):
        self.timeout = env_timeout() if timeout is None else timeout
        self.user_agent = user_agent or env_user_agent()
        self.delay = delay
        self._guard = threading.Lock()
        self._host_locks: dict[str, threading.Lock] = {}
        self._last: dict[str, float] = {}

    def _lock_for(self, host: str) -> threading.Lock:
        with self._guard:
            return self._host_locks.setdefault(host, threading.Lock())

    def fetch(self, url: str) -> FetchResult:
        host = urlsplit(url).netloc
        with self._lock_for(host):
            wait = self._last.get(host, float("-inf")) + self.delay - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            try:
                return fetch(url, timeout=self.timeout, user_agent=self.user_agent)
            finally:
                self._last[host] = time.monotonic()

    __call__ = fetch


def fetch(url: str, *, timeout: float | None = None, user_agent: str | None = None) -> FetchResult:
    """GET *url*, following at most five redirects; 2xx bodies only."""
    if not valid_url(url):
        raise NetworkError(f"not an http(s) URL: {url!r}")
    session = requests.Session()
    session.max_redirects = MAX_REDIRECTS
    headers = {"User-Agent": user_agent or env_user_agent()}
    try:
        resp = session.get(url, headers=headers, timeout=env_timeout() if timeout is None else timeout)
    except requests.Timeout as exc:
        raise FetchTimeout(f"timed out fetching {url}") from exc
    except requests.TooManyRedirects as exc:
        raise NetworkError(f"more than {MAX_REDIRECTS} redirects for {url}") from exc
    except requests.RequestException as exc:
        raise NetworkError(f"{type(exc).__name__} fetching {url}: {exc}") from exc
    finally:
        session.close()
    if not 200 <= resp.status_code < 300:
        raise HttpStatus(resp.status_code, url)
    log.debug("fetched %s -> %s (%d bytes)", url, resp.url, len(resp.content))
    return FetchResult(resp.content, resp.url, resp.status_code)
