"""Stored finite semiring tables, valid and deliberately broken."""

from __future__ import annotations

from .formats import parse_semiring
from .semiring import Semiring

DIAMOND = """\
# four-element Boolean lattice: join and meet
semiring table
elements 0 a b 1
zero 0
one 1
add
0 a b 1
a a 1 1
b 1 b 1
1 1 1 1
mul
0 0 0 0
0 a 0 a
0 0 b b
0 a b 1
"""

SATURATED = """\
# max-plus on {-inf, 0, 1, 2} with + clamped at 2
semiring table
elements -inf 0 1 2
zero -inf
one 0
add
-inf 0 1 2
0 0 1 2
1 1 1 2
2 2 2 2
mul
-inf -inf -inf -inf
-inf 0 1 2
-inf 1 2 2
-inf 2 2 2
"""

SIGN = """\
# {-inf, 0, +inf} inside the max-plus reals completed by +inf
semiring table
elements -inf 0 +inf
zero -inf
one 0
add
-inf 0 +inf
0 0 +inf
+inf +inf +inf
mul
-inf -inf -inf
-inf 0 +inf
-inf +inf +inf
"""

BROKEN_IDEMPOTENT = """\
# a + a = b breaks idempotency
semiring table
elements 0 a b
zero 0
one b
add
0 a b
a b b
b b b
mul
0 0 0
0 a a
0 a b
"""

BROKEN_DISTRIBUTIVE = """\
# chain 0 < a < b < 1 with min, except a * b = 0
semiring table
elements 0 a b 1
zero 0
one 1
add
0 a b 1
a a b 1
b b b 1
1 1 1 1
mul
0 0 0 0
0 a 0 a
0 0 b b
0 a b 1
"""

STORED = {"diamond": DIAMOND, "saturated": SATURATED, "sign": SIGN}
BROKEN = {"broken_idempotent": BROKEN_IDEMPOTENT, "broken_distributive": BROKEN_DISTRIBUTIVE}


def stored_tables() -> dict[str, Semiring]:
    return {name: parse_semiring(text) for name, text in STORED.items()}


def broken_tables() -> dict[str, Semiring]:
    return {name: parse_semiring(text) for name, text in BROKEN.items()}
