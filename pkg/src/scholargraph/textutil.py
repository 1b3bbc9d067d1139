"""Text normalization and tokenization shared by search, embeddings and indexing."""

from __future__ import annotations

import re
import unicodedata

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_WS_RE = re.compile(r"\s+")


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def label_key(text: str) -> str:
    """Search key for labels: NFC-normalized plus case folding."""
    return nfc(text).casefold()


def normalize_label(text: str) -> str:
    """Canonical form used for exact-string similarity of labels."""
    return _WS_RE.sub(" ", nfc(text).casefold().strip())


def tokenize(text: str) -> list[str]:
    """Lowercase terms split on runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(nfc(text).lower())
