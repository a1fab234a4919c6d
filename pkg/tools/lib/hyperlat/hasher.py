"""Content hashing of certificates.

The hash covers the canonical JSON of a document with its ``hash`` field
removed, so that storing the hash inside the document does not change it.
"""

import hashlib
from typing import Any, Dict

from hyperlat._internal.json_codec import canonical_json

HASH_FIELD = 'hash'
HASH_PREFIX = 'sha256:'


def hash_text(text: str) -> str:
    """SHA256 hex digest of UTF-8 text."""
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def content_hash(document: Dict[str, Any]) -> str:
    """Returns ``sha256:<hex>`` of the canonical document without its hash.

    Example:
        >>> content_hash({'a': 1}) == content_hash({'a': 1, 'hash': 'x'})
        True
    """
    body = {k: v for k, v in document.items() if k != HASH_FIELD}
    return HASH_PREFIX + hash_text(canonical_json(body))


def with_hash(document: Dict[str, Any]) -> Dict[str, Any]:
    """Returns a copy of the document carrying its content hash."""
    stamped = dict(document)
    stamped[HASH_FIELD] = content_hash(document)
    return stamped


def hash_matches(document: Dict[str, Any]) -> bool:
    return document.get(HASH_FIELD) == content_hash(document)
