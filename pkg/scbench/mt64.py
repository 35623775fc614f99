# 64-bit Mersenne Twister (MT19937-64), the generator behind std::mt19937_64
import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


def _int64(x: int) -> int:
    # Get the 64 least significant bits.
    return x & _MASK64


class MT64:
    w = 64
    n = 312
    m = 156
    r = 31
    a = 0xB5026F5AA96619E9
    u = 29
    d = 0x5555555555555555
    s = 17
    b = 0x71D67FFFEDA60000
    t = 37
    c = 0xFFF7EEE000000000
    l = 43
    f = 6364136223846793005

    lower_mask = (1 << r) - 1
    upper_mask = _MASK64 & ~lower_mask

    DEFAULT_SEED = 5489

    def __init__(self, seed: int = DEFAULT_SEED):
        self.mt = [0] * MT64.n
        self.index = MT64.n
        self.seed_mt(seed)

    def seed_mt(self, seed: int):
        self.index = MT64.n
        self.mt[0] = _int64(seed)
        for i in range(1, MT64.n):
            prev = self.mt[i - 1]
            self.mt[i] = _int64(MT64.f * (prev ^ (prev >> (MT64.w - 2))) + i)

    def twist(self):
        mt = self.mt
        for i in range(MT64.n):
            x = (mt[i] & MT64.upper_mask) | (mt[(i + 1) % MT64.n] & MT64.lower_mask)
            x_a = x >> 1
            if x & 1:
                x_a ^= MT64.a
            mt[i] = mt[(i + MT64.m) % MT64.n] ^ x_a
        self.index = 0

    def next_u64(self) -> int:
        """Next raw 64-bit draw"""
        if self.index >= MT64.n:
            self.twist()

        y = self.mt[self.index]
        y ^= (y >> MT64.u) & MT64.d
        y ^= (y << MT64.s) & MT64.b
        y ^= (y << MT64.t) & MT64.c
        y ^= y >> MT64.l
        self.index += 1
        return _int64(y)

    def random_bits(self, count: int) -> np.ndarray:
        """`count` bits taken MSB-first from consecutive 64-bit draws"""
        words = -(-count // 64)
        draws = np.array([self.next_u64() for _ in range(words)], dtype=np.uint64)
        # big-endian bytes so unpackbits yields each word MSB-first
        bits = np.unpackbits(np.frombuffer(draws.astype(">u8").tobytes(), dtype=np.uint8))
        return bits[:count].astype(np.int8)
