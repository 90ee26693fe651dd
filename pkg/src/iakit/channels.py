"""Interference-channel instances: sampling, structured families, JSON io.

An instance bundles the forward matrix H plus, depending on the interaction
mode, the reverse matrix G (out-of-band) or the source-source / dest-dest
matrices U and W (in-band).  Exact instances carry Gaussian-rational entries
and feed the feasibility engine; float instances carry complex entries and
feed the rate simulator.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra.scalars import GaussianRational, mpq

OOB = "oob"
IB = "ib"

# exact sampling range: numerators in [-100, 100] \ {0}, denominators in [1, 100]
NUM_RANGE = 100
DEN_RANGE = 100


class ChannelError(ValueError):
    pass


class StructuredFamilyError(ChannelError):
    """A structured family's hypotheses are violated (distinct from runtime degeneracies)."""


@dataclass
class ChannelInstance:
    K: int
    M: int = 1
    mode: str = OOB
    reciprocal: bool = False
    scalar: str = "exact"
    H: list = field(default_factory=list)
    G: list | None = None
    U: list | None = None
    W: list | None = None

    def __post_init__(self):
        self.validate()

    @property
    def n(self) -> int:
        return self.K * self.M

    def validate(self):
        if self.K < 2 or self.M < 1:
            raise ChannelError(f"need K >= 2 and M >= 1, got K={self.K} M={self.M}")
        if self.mode not in (OOB, IB):
            raise ChannelError(f"unknown mode {self.mode!r}")
        if self.scalar not in ("exact", "float"):
            raise ChannelError(f"unknown scalar kind {self.scalar!r}")
        n = self.n
        for name, mat, wanted in (
            ("H", self.H, True),
            ("G", self.G, self.mode == OOB),
            ("U", self.U, self.mode == IB),
            ("W", self.W, self.mode == IB),
        ):
            if wanted:
                if mat is None:
                    raise ChannelError(f"mode {self.mode!r} requires matrix {name}")
                if len(mat) != n or any(len(r) != n for r in mat):
                    raise ChannelError(f"{name} must be {n}x{n}")
            elif mat is not None:
                raise ChannelError(f"mode {self.mode!r} forbids matrix {name}")
        if self.reciprocal and self.mode == OOB:
            for i in range(n):
                for j in range(n):
                    if self.G[i][j] != self.H[j][i]:
                        raise ChannelError("reciprocal flag requires G = H^T exactly")

    def reverse_matrix(self):
        """The matrix seen destination-to-source: G out-of-band, H^T in-band."""
        if self.mode == OOB:
            return self.G
        return [list(col) for col in zip(*self.H)]


def _exact_entry(rng: random.Random) -> GaussianRational:
    def part():
        num = rng.randint(-NUM_RANGE, NUM_RANGE - 1)
        if num >= 0:
            num += 1  # skip zero, keep the draw uniform over +/- NUM_RANGE
        den = rng.randint(1, DEN_RANGE)
        return mpq(num, den)

    return GaussianRational(part(), part())


def _float_entry(rng: np.random.Generator) -> complex:
    return complex(rng.standard_normal() / np.sqrt(2), rng.standard_normal() / np.sqrt(2))


def _sample_matrix(n, scalar, rng):
    entry = _exact_entry if scalar == "exact" else _float_entry
    return [[entry(rng) for _ in range(n)] for _ in range(n)]


def sample_integer_instance(K, M=1, mode=OOB, reciprocal=False, seed=None,
                            bound=30) -> ChannelInstance:
    """Exact instance with nonzero Gaussian-integer entries.

    Equally generic for feasibility purposes but much friendlier to exact
    elimination than fraction entries (no denominator buildup), which matters
    for the larger multi-antenna systems.
    """
    if seed is None:
        raise ChannelError("a seed is required for sampled instances")
    rng = random.Random(seed)

    def entry():
        def part():
            v = rng.randint(-bound, bound - 1)
            return v + 1 if v >= 0 else v

        return GaussianRational(part(), part())

    n = K * M
    def mat():
        return [[entry() for _ in range(n)] for _ in range(n)]

    H = mat()
    G = U = W = None
    if mode == OOB:
        G = [list(col) for col in zip(*H)] if reciprocal else mat()
    else:
        U, W = mat(), mat()
    return ChannelInstance(K=K, M=M, mode=mode, reciprocal=reciprocal and mode == OOB,
                           scalar="exact", H=H, G=G, U=U, W=W)


def sample_generic(K, M=1, mode=OOB, reciprocal=False, seed=None, scalar_kind="exact") -> ChannelInstance:
    """Draw an i.i.d. generic instance, deterministically per seed.

    Matrices are drawn in row-major order, H first, then G (out-of-band,
    non-reciprocal only), then U and W (in-band).
    """
    if seed is None:
        raise ChannelError("a seed is required for sampled instances")
    rng = random.Random(seed) if scalar_kind == "exact" else np.random.default_rng(seed)
    n = K * M
    H = _sample_matrix(n, scalar_kind, rng)
    G = U = W = None
    if mode == OOB:
        if reciprocal:
            G = [list(col) for col in zip(*H)]
        else:
            G = _sample_matrix(n, scalar_kind, rng)
    else:
        U = _sample_matrix(n, scalar_kind, rng)
        W = _sample_matrix(n, scalar_kind, rng)
    return ChannelInstance(K=K, M=M, mode=mode, reciprocal=reciprocal and mode == OOB,
                           scalar=scalar_kind, H=H, G=G, U=U, W=W)


# -- structured families -----------------------------------------------------


@dataclass
class AllOnesFamily:
    kind = "all-ones-zero-diagonal"
    K: int


@dataclass
class Rank1PlusDiagonalFamily:
    kind = "rank1-plus-diagonal"
    diagonal: list
    u: list
    v: list


@dataclass
class SymmetricZeroDiag4Family:
    kind = "symmetric-zero-diagonal-4user"
    h: list  # six upper-triangle entries h1..h6


def build_structured(family) -> ChannelInstance:
    """Exact out-of-band reciprocal instance for a structured family."""
    if isinstance(family, AllOnesFamily):
        K = family.K
        if K < 2:
            raise StructuredFamilyError("all-ones family needs K >= 2")
        one, zero = GaussianRational(1), GaussianRational(0)
        H = [[zero if i == j else one for j in range(K)] for i in range(K)]
    elif isinstance(family, Rank1PlusDiagonalFamily):
        D, u, v = family.diagonal, family.u, family.v
        K = len(D)
        if len(u) != K or len(v) != K:
            raise StructuredFamilyError("rank-1 family needs matching lengths for D, u, v")
        if any(not d for d in D):
            raise StructuredFamilyError("rank-1 family needs an invertible diagonal part")
        if any(not x for x in u) or any(not x for x in v):
            raise StructuredFamilyError("rank-1 family needs u and v componentwise nonzero")
        H = [[u[i] * v[j] + (D[i] if i == j else GaussianRational(0)) for j in range(K)]
             for i in range(K)]
    elif isinstance(family, SymmetricZeroDiag4Family):
        h = family.h
        if len(h) != 6:
            raise StructuredFamilyError("symmetric zero-diagonal family takes six entries")
        z = GaussianRational(0)
        H = [
            [z, h[0], h[1], h[2]],
            [h[0], z, h[3], h[4]],
            [h[1], h[3], z, h[5]],
            [h[2], h[4], h[5], z],
        ]
        K = 4
    else:
        raise StructuredFamilyError(f"unknown family {family!r}")
    G = [list(col) for col in zip(*H)]
    return ChannelInstance(K=K, M=1, mode=OOB, reciprocal=True, scalar="exact", H=H, G=G)


def sample_rank1_family(K, seed) -> Rank1PlusDiagonalFamily:
    """Random exact rank-1 family parameters with all hypotheses satisfied."""
    rng = random.Random(seed)
    draw = lambda: _exact_entry(rng)
    return Rank1PlusDiagonalFamily(
        diagonal=[draw() for _ in range(K)],
        u=[draw() for _ in range(K)],
        v=[draw() for _ in range(K)],
    )


def sample_sym4_family(seed) -> SymmetricZeroDiag4Family:
    rng = random.Random(seed)
    return SymmetricZeroDiag4Family(h=[_exact_entry(rng) for _ in range(6)])


# -- JSON interchange --------------------------------------------------------


def _scalar_to_json(x, scalar):
    if scalar == "exact":
        return {
            "re": [int(x.re.numerator), int(x.re.denominator)],
            "im": [int(x.im.numerator), int(x.im.denominator)],
        }
    return {"re": float(x.real), "im": float(x.imag)}


def _scalar_from_json(obj, scalar):
    if scalar == "exact":
        return GaussianRational(mpq(*obj["re"]), mpq(*obj["im"]))
    return complex(obj["re"], obj["im"])


def to_json_dict(ch: ChannelInstance) -> dict:
    out = {
        "K": ch.K,
        "M": ch.M,
        "mode": ch.mode,
        "reciprocal": ch.reciprocal,
        "scalar": ch.scalar,
        "H": [[_scalar_to_json(x, ch.scalar) for x in row] for row in ch.H],
    }
    for name in ("G", "U", "W"):
        mat = getattr(ch, name)
        if mat is not None:
            out[name] = [[_scalar_to_json(x, ch.scalar) for x in row] for row in mat]
    return out


def from_json_dict(obj: dict) -> ChannelInstance:
    scalar = obj["scalar"]
    mats = {}
    for name in ("H", "G", "U", "W"):
        if name in obj and obj[name] is not None:
            mats[name] = [[_scalar_from_json(x, scalar) for x in row] for row in obj[name]]
    return ChannelInstance(
        K=obj["K"], M=obj.get("M", 1), mode=obj["mode"],
        reciprocal=obj.get("reciprocal", False), scalar=scalar,
        H=mats.get("H"), G=mats.get("G"), U=mats.get("U"), W=mats.get("W"),
    )


def save(ch: ChannelInstance, path):
    with open(path, "w") as fh:
        json.dump(to_json_dict(ch), fh, indent=1)
        fh.write("\n")


def load(path) -> ChannelInstance:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
