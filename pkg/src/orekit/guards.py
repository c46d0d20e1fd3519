"""Search and size guards.

Every exhaustive loop in the package is bounded by one of these limits so
that universal checks stay at desk scale and fail loudly instead of
spinning.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Guards:
    max_ring_card: int = 65536
    max_terms: int = 1_000_000
    max_search: int = 1_000_000


DEFAULT_GUARDS = Guards()
