"""The documented CLI examples: argv, expected exit code, and an stderr fragment.

Expected stdout lives in ``tests/golden/<name>.out``.
"""

from pathlib import Path

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def d(name):
    return str(DATA / name)


CASES = {
    "validate_chain3": (["validate", d("chain3.sr")], 0, ""),
    "validate_broken_idempotent": (["validate", d("broken_idempotent.sr")], 1, ""),
    "validate_malformed": (["validate", d("malformed.sr")], 2, "add table"),
    "apply_identity": (["apply", d("rmax_id2.kernel"), d("rmax_v.vec")], 0, ""),
    "apply_1234": (["apply", d("rmax_1234.kernel"), d("rmax_00.vec")], 0, ""),
    "apply_mismatch": (["apply", d("rmax_1234.kernel"), d("rmax_abc.vec")], 1, "does not match"),
    "compose_1x1": (["compose", d("rmax_a.kernel"), d("rmax_ab.kernel")], 0, ""),
    "kron_1x1": (["kron", d("rmax_a.kernel"), d("rmax_b.kernel")], 0, ""),
    "nuclear_identity": (["nuclear", d("rmax_id2.kernel")], 0, ""),
    "outer_2x2": (["outer", d("rmax_01.vec"), d("rmax_23.vec")], 0, ""),
    "closure_empty": (["closure", d("bool_cube2.mod"), d("empty.pts")], 0, ""),
    "closure_example4": (["closure", d("bool_cube2.mod"), d("bool_cube2.mod"),
                          d("example4.pts")], 0, ""),
    "closure_rmax": (["closure", d("rmax.mod"), d("rmax.pts")], 1,
                     "extensional engine requires finite semiring"),
    "check_prop5_seed7": (["check", "prop5", "--seed", "7"], 0, ""),
    "check_theorem1_size2": (["check", "theorem1", "--size", "2"], 0, ""),
    "check_unknown": (["check", "nosuch"], 2, "unknown suite"),
}


def golden(name: str) -> str:
    return (GOLDEN / f"{name}.out").read_text()
