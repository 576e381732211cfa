"""Completion backends: live chat API, scripted mock, record/replay.

Every backend exposes a single method, ``complete(prompt) -> str``, is safe
to call from multiple threads, and keeps no conversational state: identical
prompts yield independent, order-insensitive results.

Cassettes are JSON-lines files keyed by a fingerprint (SHA-256 over model
name and full prompt text); sampling parameters are deliberately excluded
from the fingerprint so recorded runs survive configuration tweaks.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import re
import threading
import time
from dataclasses import dataclass, field

import requests

from .errors import BackendError, CassetteMissError


@dataclass
class RetryPolicy:
    max_attempts: int = 4
    backoff_base: float = 0.5  # seconds; doubles per attempt, with jitter


@dataclass
class BackendConfig:
    endpoint: str = "https://api.openai.com/v1/chat/completions"
    model: str = "gpt-4o"
    temperature: float = 1.0
    top_p: float = 1.0
    max_completion_tokens: int = 2048
    frequency_penalty: float = 0.0
    presence_penalty: float = 0.0
    api_key_env: str = "LLM_API_KEY"
    retry: RetryPolicy = field(default_factory=RetryPolicy)
    max_in_flight: int = 16
    timeout: float = 60.0


def fingerprint(model: str, prompt: str) -> str:
    digest = hashlib.sha256()
    digest.update(model.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(prompt.encode("utf-8"))
    return digest.hexdigest()


class LiveBackend:
    """Single-turn chat completions over HTTP with retry and backoff."""

    def __init__(self, config: BackendConfig | None = None, session=None, sleeper=time.sleep):
        self.config = config or BackendConfig()
        self._session = session or requests.Session()
        self._sleep = sleeper
        self._gate = threading.BoundedSemaphore(self.config.max_in_flight)
        key = os.environ.get(self.config.api_key_env, "")
        if not key:
            raise BackendError(
                f"no API key: set the {self.config.api_key_env} environment variable"
            )
        self._headers = {
            "Authorization": f"Bearer {key}",
            "Content-Type": "application/json",
        }

    def complete(self, prompt: str) -> str:
        payload = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
            "top_p": self.config.top_p,
            "max_completion_tokens": self.config.max_completion_tokens,
            "frequency_penalty": self.config.frequency_penalty,
            "presence_penalty": self.config.presence_penalty,
        }
        last_error = "unknown error"
        for attempt in range(self.config.retry.max_attempts):
            if attempt:
                delay = self.config.retry.backoff_base * (2 ** (attempt - 1))
                self._sleep(delay * (1.0 + random.random()))
            try:
                with self._gate:
                    response = self._session.post(
                        self.config.endpoint,
                        json=payload,
                        headers=self._headers,
                        timeout=self.config.timeout,
                    )
            except requests.RequestException as exc:
                last_error = f"transport error: {exc}"
                continue
            if response.status_code == 429 or response.status_code >= 500:
                last_error = f"HTTP {response.status_code}"
                retry_after = response.headers.get("Retry-After")
                if retry_after:
                    try:
                        self._sleep(float(retry_after))
                    except ValueError:
                        pass
                continue
            if response.status_code != 200:
                raise BackendError(f"HTTP {response.status_code}: {response.text[:200]}")
            try:
                return response.json()["choices"][0]["message"]["content"]
            except (KeyError, IndexError, ValueError) as exc:
                raise BackendError(f"malformed completion response: {exc}") from None
        raise BackendError(f"gave up after {self.config.retry.max_attempts} attempts ({last_error})")


class MockBackend:
    """Scripted backend: ordered regex rules over the prompt text.

    The script is a JSON array of ``{"pattern": ..., "answer": ...}``
    objects; the first matching pattern wins, anything unmatched answers
    "Not Sure".
    """

    DEFAULT_ANSWER = "Not Sure."

    def __init__(self, rules: list[tuple[str, str]], model: str = "mock"):
        self.model = model
        self._rules = [(re.compile(pattern, re.DOTALL), answer) for pattern, answer in rules]

    @classmethod
    def from_script(cls, path: str) -> "MockBackend":
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
        rules = [(entry["pattern"], entry["answer"]) for entry in raw]
        return cls(rules)

    def complete(self, prompt: str) -> str:
        for pattern, answer in self._rules:
            if pattern.search(prompt):
                return answer
        return self.DEFAULT_ANSWER


class CountingBackend:
    """Wrapper that counts calls; handy for query-budget tests."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0
        self.prompts: list[str] = []
        self._lock = threading.Lock()

    def complete(self, prompt: str) -> str:
        with self._lock:
            self.calls += 1
            self.prompts.append(prompt)
        return self.inner.complete(prompt)


class Cassette:
    """Order-independent fingerprint -> completion store."""

    def __init__(self, model: str = "gpt-4o", entries: dict[str, str] | None = None):
        self.model = model
        self.entries = dict(entries or {})

    @classmethod
    def load(cls, path: str) -> "Cassette":
        model = "gpt-4o"
        entries: dict[str, str] = {}
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                if "model" in record and "fingerprint" not in record:
                    model = record["model"]
                    continue
                entries[record["fingerprint"]] = record["completion"]
        return cls(model=model, entries=entries)

    def save(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            handle.write(json.dumps({"model": self.model}) + "\n")
            for print_, completion in sorted(self.entries.items()):
                handle.write(
                    json.dumps({"fingerprint": print_, "completion": completion}) + "\n"
                )
        os.replace(tmp, path)


class ReplayBackend:
    """Serve recorded completions; unknown prompts are an error when strict."""

    def __init__(self, cassette: Cassette, strict: bool = True):
        self.cassette = cassette
        self.strict = strict

    @classmethod
    def from_file(cls, path: str, strict: bool = True) -> "ReplayBackend":
        return cls(Cassette.load(path), strict=strict)

    def complete(self, prompt: str) -> str:
        key = fingerprint(self.cassette.model, prompt)
        try:
            return self.cassette.entries[key]
        except KeyError:
            if self.strict:
                raise CassetteMissError(key) from None
            return MockBackend.DEFAULT_ANSWER


class RecordingBackend:
    """Delegate to another backend and persist every completion."""

    def __init__(self, inner, path: str, model: str = "gpt-4o"):
        self.inner = inner
        self.path = path
        self.cassette = Cassette(model=model)
        self._lock = threading.Lock()

    def complete(self, prompt: str) -> str:
        completion = self.inner.complete(prompt)
        with self._lock:
            self.cassette.entries[fingerprint(self.cassette.model, prompt)] = completion
        return completion

    def flush(self) -> None:
        with self._lock:
            self.cassette.save(self.path)

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.flush()
        return False


def record(backend, cassette_path: str, model: str = "gpt-4o") -> RecordingBackend:
    """Wrap ``backend`` so every completion is persisted to ``cassette_path``."""
    return RecordingBackend(backend, cassette_path, model=model)
