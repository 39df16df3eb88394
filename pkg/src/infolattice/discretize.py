"""Equal-width graining and the sparse empirical joint distribution.

Each variable j is divided into N_j equal-width bins spanning its observed
[min, max] range.  Bins are half-open [lo, hi) with the top bin closed, so
every observation lands in exactly one box.  The joint law is the box
occupancy count divided by m, kept as exact integer counts until a float
probability is actually needed.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ShapeError, SubsetError


@dataclass(frozen=True)
class BinSpec:
    """Per-variable bin counts and observed value ranges."""

    counts: tuple          # N_j >= 1
    mins: tuple
    maxs: tuple
    labels: tuple = None

    @property
    def n(self):
        return len(self.counts)

    def box_bounds(self, j, a):
        """[lo, hi] bounds of bin a (1-based) of variable j in data units."""
        n_j, lo, hi = self.counts[j], self.mins[j], self.maxs[j]
        if not 1 <= a <= n_j:
            raise ConfigError(f"bin {a} out of range 1..{n_j}")
        width = (hi - lo) / n_j
        return lo + (a - 1) * width, lo + a * width

    def edges(self, j):
        """All N_j + 1 bin edges of variable j."""
        n_j = self.counts[j]
        return np.linspace(self.mins[j], self.maxs[j], n_j + 1)


@dataclass(frozen=True)
class DiscretizedSample:
    """m x n grid of 1-based bin indices plus the spec that produced it."""

    indices: np.ndarray
    spec: BinSpec
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        if idx.ndim != 2:
            raise ShapeError("bin index grid must be 2-d")
        if idx.shape[1] != self.spec.n:
            raise ShapeError(
                f"{idx.shape[1]} columns of indices for {self.spec.n} variables")
        for j, n_j in enumerate(self.spec.counts):
            col = idx[:, j]
            if col.min(initial=1) < 1 or col.max(initial=1) > n_j:
                raise ShapeError(f"bin index out of range for variable {j}")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def m(self):
        return self.indices.shape[0]

    @property
    def n(self):
        return self.indices.shape[1]


def make_bin_spec(d, bins):
    """Build a BinSpec from observed per-variable ranges.

    ``bins`` is a single positive int broadcast to every variable, or a
    sequence of per-variable counts.
    """
    if np.isscalar(bins):
        counts = [int(bins)] * d.n
    else:
        counts = [int(b) for b in bins]
        if len(counts) != d.n:
            raise ConfigError(f"{len(counts)} bin counts for {d.n} variables")
    for c in counts:
        if c < 1:
            raise ConfigError(f"bin count must be >= 1, got {c}")
    return BinSpec(counts=tuple(counts),
                   mins=tuple(float(x) for x in d.values.min(axis=0)),
                   maxs=tuple(float(x) for x in d.values.max(axis=0)),
                   labels=d.col_labels)


def discretize(d, spec):
    """Assign every observation to its box: a = 1 + floor(N (x-min)/(max-min)).

    The top of the range maps into bin N (closed top bin); a constant
    variable (min == max) puts all mass in bin 1.
    """
    if spec.n != d.n:
        raise ShapeError(f"bin spec has {spec.n} variables, data has {d.n}")
    counts = np.asarray(spec.counts, dtype=np.int64)
    mins = np.asarray(spec.mins)
    spans = np.asarray(spec.maxs) - mins
    safe = np.where(spans > 0, spans, 1.0)
    raw = 1 + np.floor(counts * (d.values - mins) / safe).astype(np.int64)
    idx = np.clip(raw, 1, counts)
    idx[:, spans == 0] = 1
    return DiscretizedSample(idx, spec, d.row_labels, d.col_labels)


class JointDistribution:
    """Sparse joint law: map from n-tuples of bin indices to mass.

    Data-path instances carry positive integer counts with ``total`` = m;
    analytic instances built by :meth:`from_probabilities` carry float
    masses with ``total`` = 1.0.  The probability of a box is mass/total.
    Immutable once built; the entropy memo attached by `infocore` is the
    only mutable state and is a pure function of the subset mask, so
    concurrent readers always agree.
    """

    __slots__ = ("support", "total", "n", "N", "labels", "_hcache")

    def __init__(self, support, total, N, labels=None):
        support = dict(support)
        N = tuple(int(x) for x in N)
        n = len(N)
        acc = 0
        for box, w in support.items():
            if len(box) != n:
                raise ShapeError(f"box {box} has {len(box)} coordinates, expected {n}")
            if w <= 0:
                raise ValueError(f"non-positive mass {w} at {box}")
            for a, n_j in zip(box, N):
                if not 1 <= a <= n_j:
                    raise ShapeError(f"bin index {a} out of range 1..{n_j}")
            acc += w
        if isinstance(total, (int, np.integer)):
            if acc != total:
                raise ValueError(f"counts sum to {acc}, expected {total}")
        elif abs(acc - total) > 1e-12 * max(1.0, abs(total)):
            raise ValueError(f"masses sum to {acc}, expected {total}")
        self.support = support
        self.total = total
        self.n = n
        self.N = N
        self.labels = tuple(labels) if labels is not None else None
        self._hcache = {}

    @classmethod
    def from_probabilities(cls, probs, N=None, labels=None):
        """Joint law from a {box: probability} map; total is 1.0."""
        probs = {box: float(p) for box, p in probs.items() if p != 0.0}
        if N is None:
            if not probs:
                raise ValueError("empty distribution")
            n = len(next(iter(probs)))
            N = tuple(max(box[j] for box in probs) for j in range(n))
        return cls(probs, 1.0, N, labels)

    def probability(self, box):
        return self.support.get(tuple(box), 0) / self.total

    def boxes(self):
        """Support boxes in lexicographic order (deterministic)."""
        return sorted(self.support)

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return (self.support == other.support and self.total == other.total
                and self.N == other.N)

    def __repr__(self):
        return (f"JointDistribution(n={self.n}, boxes={len(self.support)}, "
                f"total={self.total})")

    def to_json_dict(self):
        return {
            "m": self.total,
            "N": list(self.N),
            "boxes": [{"idx": list(box), "count": self.support[box]}
                      for box in self.boxes()],
        }


def estimate_joint(s):
    """Count box occupancy of a discretized sample (probability = count/m)."""
    support = {}
    for row in s.indices:
        box = tuple(int(a) for a in row)
        support[box] = support.get(box, 0) + 1
    return JointDistribution(support, s.m, s.spec.counts, s.col_labels)


def marginalize(j, subset):
    """Sum the joint law over all variables outside ``subset``.

    ``subset`` is a bitmask over variables 0..n-1; kept coordinates stay in
    ascending variable order.  Marginalizing by the full set returns an
    equal distribution.
    """
    if subset == 0:
        raise SubsetError("cannot marginalize to the empty subset")
    if subset >> j.n:
        raise SubsetError(f"subset {bin(subset)} outside 0..{j.n - 1}")
    keep = [i for i in range(j.n) if subset >> i & 1]
    support = {}
    for box, w in j.support.items():
        small = tuple(box[i] for i in keep)
        support[small] = support.get(small, 0) + w
    labels = tuple(j.labels[i] for i in keep) if j.labels else None
    return JointDistribution(support, j.total, [j.N[i] for i in keep], labels)
