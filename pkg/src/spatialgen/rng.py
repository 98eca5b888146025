"""Deterministic random source shared by every generator.

The stream is PCG32 (the XSH-RR 64/32 permuted congruential generator):
a 64-bit linear congruential state whose top bits are xor-folded and
rotated into a 32-bit output.  Its integer state transitions are exactly
reproducible across platforms, which is the whole point here: a (seed,
parameters) pair must pin byte-exact dataset output everywhere.

``next_unit`` scales the 32-bit output by 2**-32, so draws lie in
[0, 1).  Distribution primitives are built directly on unit draws rather
than delegating to library samplers, because draw accounting is part of
the contract: ``bernoulli``, ``uniform`` and ``dice5`` consume exactly
one draw, ``normal`` exactly two.  Consumers that peel a known number of
draws per geometry rely on this to stay aligned with the stream.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .errors import ParameterError

_MULTIPLIER = 6364136223846793005
_INCREMENT = 1442695040888963407  # any odd constant works; this one is conventional
_MASK64 = (1 << 64) - 1
_UNIT_SCALE = 2.0 ** -32

MAX_SEED = (1 << 64) - 1

# Block evaluation of the LCG: state_{i} = _JUMP_MUL[i] * state_0 +
# _JUMP_ADD[i] (mod 2**64), so a whole block of successor states can be
# computed from one starting state with vectorized uint64 arithmetic
# (numpy wraps on overflow, which is exactly the mod-2**64 we need).
_BLOCK = 8192
_jump_mul: np.ndarray | None = None
_jump_add: np.ndarray | None = None


def _jump_tables() -> tuple[np.ndarray, np.ndarray]:
    global _jump_mul, _jump_add
    if _jump_mul is None:
        mul = np.empty(_BLOCK, dtype=np.uint64)
        add = np.empty(_BLOCK, dtype=np.uint64)
        a, c = 1, 0
        for i in range(_BLOCK):
            mul[i] = a
            add[i] = c
            a = (a * _MULTIPLIER) & _MASK64
            c = (c * _MULTIPLIER + _INCREMENT) & _MASK64
        _jump_mul, _jump_add = mul, add
    return _jump_mul, _jump_add


def check_seed(seed: int) -> int:
    """Validate a seed value; seeds are unsigned 64-bit integers."""
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed <= MAX_SEED:
        raise ParameterError(
            f"seed must be an integer in [0, 2**64 - 1], got {seed!r}", field="seed"
        )
    return seed


class RngState:
    """One PCG32 stream, owned by a single consumer.

    Equal seeds yield equal draw sequences of any length.  ``state`` is
    the raw 64-bit LCG state; two instances seeded alike that have
    consumed the same number of draws compare equal on it.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        check_seed(seed)
        self.state = 0
        self._step()
        self.state = (self.state + seed) & _MASK64
        self._step()

    def _step(self) -> None:
        self.state = (self.state * _MULTIPLIER + _INCREMENT) & _MASK64

    def next_unit(self) -> float:
        """Next draw in [0, 1); advances the state by exactly one step."""
        old = self.state
        self.state = (old * _MULTIPLIER + _INCREMENT) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        out = ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF
        return out * _UNIT_SCALE

    def take_units(self, n: int) -> list[float]:
        """The next ``n`` draws as a list.

        Exactly equivalent to ``[self.next_unit() for _ in range(n)]``,
        same values and same final state, but evaluated block-wise with
        numpy.  Hot loops pull draws through this.
        """
        if n <= 0:
            return []
        mul, add = _jump_tables()
        u32 = np.uint64(0xFFFFFFFF)
        out: list[float] = []
        state = self.state
        remaining = n
        while remaining > 0:
            k = min(remaining, _BLOCK)
            states = mul[:k] * np.uint64(state) + add[:k]
            x = (((states >> np.uint64(18)) ^ states) >> np.uint64(27)) & u32
            rot = states >> np.uint64(59)
            draws = ((x >> rot) | (x << ((np.uint64(32) - rot) & np.uint64(31)))) & u32
            out.extend((draws.astype(np.float64) * _UNIT_SCALE).tolist())
            state = (int(states[-1]) * _MULTIPLIER + _INCREMENT) & _MASK64
            remaining -= k
        self.state = state
        return out

    # --- distribution primitives -------------------------------------

    def bernoulli(self, p: float) -> int:
        """1 with probability ``p``, else 0.  Consumes one draw.

        The draw is compared strictly against ``p``, so p=0 never fires
        and p=1 always does (draws never reach 1.0).
        """
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"probability must be in [0, 1], got {p}", field="p")
        return 1 if self.next_unit() < p else 0

    def uniform(self, a: float, b: float) -> float:
        """Uniform in [a, b): computed as (b - a) * draw + a.  One draw.

        a == b is allowed and returns a while still consuming the draw;
        generators lean on that to keep draw counts shape-independent.
        """
        if a > b:
            raise ParameterError(f"uniform bounds must satisfy a <= b, got a={a}, b={b}")
        return (b - a) * self.next_unit() + a

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Gaussian sample via Box-Muller.  Consumes exactly two draws.

        The radius draw r1 enters the logarithm as (1 - r1): draws lie in
        [0, 1), so the argument stays in (0, 1] and the log stays finite.
        sigma == 0 still consumes both draws and returns mu exactly.
        """
        if sigma < 0.0:
            raise ParameterError(f"sigma must be non-negative, got {sigma}")
        r1 = self.next_unit()
        r2 = self.next_unit()
        return mu + sigma * math.sqrt(-2.0 * math.log(1.0 - r1)) * math.sin(2.0 * math.pi * r2)

    def dice5(self) -> int:
        """Integer in 1..5: floor of a U(0, 5) draw, plus one.  One draw."""
        return int(5.0 * self.next_unit()) + 1


def derive_seed(base_seed: int, ordinal: int) -> int:
    """Mix a base seed and a part ordinal into an independent stream seed.

    SHA-256 of the decimal rendering "base:ordinal", truncated to its
    first 8 bytes (big-endian).  Parts of a compound dataset get their
    own streams this way, so the compound is reproducible from a single
    seed plus part order, and reordering or editing one part never
    perturbs the others' streams.
    """
    digest = hashlib.sha256(f"{base_seed}:{ordinal}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")
