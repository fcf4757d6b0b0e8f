"""Deterministic seed derivation for independent runs."""

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int) -> int:
    """Seed of the ``index``-th sub-run under ``master``: splitmix64(master XOR index)."""
    return splitmix64((int(master) ^ int(index)) & MASK64)


def normalize_seed(seed: int) -> int:
    return int(seed) & MASK64
