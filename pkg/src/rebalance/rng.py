"""Portable seeded random stream.

Every random decision in the package goes through :class:`Xoshiro256`, a
xoshiro256** generator whose 256-bit state is filled from the user seed by
four successive splitmix64 outputs.  Both algorithms use only 64-bit integer
arithmetic, so the same seed yields the same stream on every platform.

Derived streams (pipeline stages, ensemble subsets) use
``derive_seed(master, i) = (master + i) mod 2**64``; splitmix64 seeding
decorrelates adjacent seeds.
"""

import math

MASK64 = (1 << 64) - 1
_TWO_POW_M53 = 1.0 / (1 << 53)


def splitmix64(state):
    """Advance a splitmix64 state; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def derive_seed(master, index):
    """Seed for the ``index``-th derived stream of ``master``."""
    return (check_seed(master) + index) & MASK64


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise TypeError(f"seed must be an int, got {type(seed).__name__}")
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** generator seeded through splitmix64.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.
    """

    def __init__(self, seed):
        sm = check_seed(seed)
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self._s = s

    def next_u64(self):
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self):
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * _TWO_POW_M53

    def uniform(self, low=0.0, high=1.0):
        return low + (high - low) * self.random()

    def randbelow(self, n):
        """Unbiased integer in ``[0, n)`` by rejection of the low residue."""
        if n <= 0:
            raise ValueError("randbelow requires n > 0")
        threshold = ((1 << 64) - n) % n
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % n

    def choice_indices(self, n, k):
        """``k`` distinct positions from ``range(n)`` in draw order.

        Partial Fisher-Yates shuffle; consumes exactly ``k`` bounded draws.
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} distinct items from {n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def permutation(self, n):
        return self.choice_indices(n, n)

    def normal_pair(self):
        """Two independent standard normals (Box-Muller)."""
        u1 = 1.0 - self.random()  # (0, 1]
        u2 = self.random()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        return r * math.cos(theta), r * math.sin(theta)

    def normals(self, count):
        out = []
        while len(out) < count:
            out.extend(self.normal_pair())
        return out[:count]
