"""Text embedding backends for the VQA similarity score.

Production deployments point `HttpEmbedder` at an external embedding
service; the in-repo default is a deterministic character-n-gram hashing
embedder, which is what the test suite runs against.
"""
from __future__ import annotations

import hashlib
import json
from typing import Protocol

import numpy as np

from .text import normalize_text


class EmbedderError(RuntimeError):
    """Backend failure, carrying the offending text for diagnostics."""


class TextEmbedder(Protocol):
    def embed(self, text: str) -> np.ndarray: ...


class HashingEmbedder:
    """Character-n-gram hashing embedder, L2-normalized.

    Deterministic across processes (bucket index comes from blake2b, not
    the salted builtin hash). Texts over disjoint character sets produce
    disjoint n-gram sets, hence (collision-free) orthogonal embeddings.
    """

    def __init__(self, dim: int = 65536, ngram_sizes: tuple[int, ...] = (2, 3)):
        self.dim = dim
        self.ngram_sizes = ngram_sizes

    def _bucket(self, gram: str) -> int:
        h = hashlib.blake2b(gram.encode(), digest_size=8).digest()
        return int.from_bytes(h, "big") % self.dim

    def embed(self, text: str) -> np.ndarray:
        norm = normalize_text(text)
        if not norm:
            raise EmbedderError(f"cannot embed empty text: {text!r}")
        vec = np.zeros(self.dim, dtype=np.float64)
        padded = f" {norm} "
        for n in self.ngram_sizes:
            for i in range(max(0, len(padded) - n + 1)):
                vec[self._bucket(padded[i : i + n])] += 1.0
        length = np.linalg.norm(vec)
        if length == 0.0:
            raise EmbedderError(f"cannot embed empty text: {text!r}")
        return vec / length


class HttpEmbedder:
    """One-shot call to an external embedding endpoint.

    Request/response are line-delimited JSON: {"id", "text"} in,
    {"id", "vector"} out.
    """

    def __init__(self, url: str, timeout: float = 30.0, retries: int = 2):
        self.url = url
        self.timeout = timeout
        self.retries = retries

    def embed(self, text: str) -> np.ndarray:
        import urllib.request

        payload = json.dumps({"id": "0", "text": text}).encode()
        last: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                req = urllib.request.Request(
                    self.url, data=payload, headers={"Content-Type": "application/json"}
                )
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    body = json.loads(resp.read())
                vec = np.asarray(body["vector"], dtype=np.float64)
                return vec / np.linalg.norm(vec)
            except Exception as exc:
                last = exc
        raise EmbedderError(f"embedding service failed for {text!r}: {last}")
