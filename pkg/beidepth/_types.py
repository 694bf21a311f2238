from __future__ import annotations

from typing import Union

StrOrBytes = Union[str, bytes]
# vertices are the 1-indexed labels used in every public signature
VertexSet = frozenset[int]
Edge = tuple[int, int]
# exponent vector over x_1..x_n, y_1..y_n
Monomial = tuple[int, ...]
# (homological degree i, internal degree j)
BettiIndex = tuple[int, int]
