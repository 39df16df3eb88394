"""Analytic distributions and dense brute-force ground truth for tests.

Everything here recomputes information quantities by direct dense
summation over full probability tables: no sparsity, no memoization, no
shared code with the sparse engine.  Named families carry exact rational
atoms so extremal values are exact.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .discretize import BinSpec, DiscretizedSample, JointDistribution
from .errors import ConfigError
from .infocore import indices_of, popcount, submasks

FAMILIES = ("identical-coins", "opposite-coins", "even-parity", "odd-parity",
            "product-of-marginals", "uniform", "single-atom")


@dataclass(frozen=True)
class AnalyticDistribution:
    """Dense joint law with exact rational atoms.

    ``probs`` is the flat C-order table over the box grid given by
    ``sizes``; the atoms must sum to exactly 1.
    """

    sizes: tuple
    probs: tuple

    def __post_init__(self):
        expect = 1
        for s in self.sizes:
            expect *= s
        if len(self.probs) != expect:
            raise ConfigError(f"{len(self.probs)} atoms for a {expect}-box grid")
        if sum(self.probs, Fraction(0)) != 1:
            raise ConfigError("atom probabilities must sum to exactly 1")
        if any(p < 0 for p in self.probs):
            raise ConfigError("negative atom probability")

    @property
    def n(self):
        return len(self.sizes)

    def table(self):
        """Dense float table, shape = sizes."""
        return np.array([float(p) for p in self.probs]).reshape(self.sizes)

    def to_joint(self, labels=None):
        """Sparse engine view of the same law (float masses, total 1)."""
        probs = {}
        for coords in product(*(range(s) for s in self.sizes)):
            p = self.probs[int(np.ravel_multi_index(coords, self.sizes))]
            if p:
                probs[tuple(c + 1 for c in coords)] = float(p)
        return JointDistribution.from_probabilities(probs, self.sizes, labels)


def _atoms(sizes, entries):
    """Flat rational table from a {coords: prob} dict."""
    size = 1
    for s in sizes:
        size *= s
    flat = [Fraction(0)] * size
    for coords, p in entries.items():
        flat[int(np.ravel_multi_index(coords, sizes))] = Fraction(p)
    return AnalyticDistribution(tuple(sizes), tuple(flat))


def make_named(family, **params):
    """Construct a named analytic family.

    identical-coins(n): mass 1/2 on all-zeros and all-ones.
    opposite-coins(n, flips): mass 1/2 on the flip pattern and its complement.
    even-parity(n) / odd-parity(n): uniform on binary tuples of that parity.
    product-of-marginals(marginals): independent law from per-variable vectors.
    uniform(sizes): equiprobable boxes.
    single-atom(sizes, atom): all mass on one box.
    """
    if family == "identical-coins":
        n = int(params.get("n", 3))
        if n < 1:
            raise ConfigError("need n >= 1")
        half = Fraction(1, 2)
        return _atoms((2,) * n, {(0,) * n: half, (1,) * n: half})
    if family == "opposite-coins":
        n = int(params.get("n", 3))
        flips = tuple(params.get("flips", (0,) * (n - 1) + (1,)))
        if len(flips) != n or any(f not in (0, 1) for f in flips):
            raise ConfigError("flips must be n values in {0,1}")
        comp = tuple(1 - f for f in flips)
        half = Fraction(1, 2)
        return _atoms((2,) * n, {flips: half, comp: half})
    if family in ("even-parity", "odd-parity"):
        n = int(params.get("n", 3))
        if n < 2:
            raise ConfigError("parity needs n >= 2")
        want = 0 if family == "even-parity" else 1
        p = Fraction(1, 2 ** (n - 1))
        entries = {c: p for c in product((0, 1), repeat=n) if sum(c) % 2 == want}
        return _atoms((2,) * n, entries)
    if family == "product-of-marginals":
        marginals = params.get("marginals")
        if not marginals:
            raise ConfigError("need per-variable marginal vectors")
        margs = [[Fraction(x) for x in m] for m in marginals]
        margs = [[x / sum(m) for x in m] for m in margs]
        sizes = tuple(len(m) for m in margs)
        entries = {}
        for coords in product(*(range(s) for s in sizes)):
            p = Fraction(1)
            for j, c in enumerate(coords):
                p *= margs[j][c]
            if p:
                entries[coords] = p
        return _atoms(sizes, entries)
    if family == "uniform":
        sizes = tuple(int(s) for s in params.get("sizes", (2, 2)))
        total = 1
        for s in sizes:
            if s < 1:
                raise ConfigError("box counts must be >= 1")
            total *= s
        p = Fraction(1, total)
        return _atoms(sizes, {c: p for c in product(*(range(s) for s in sizes))})
    if family == "single-atom":
        sizes = tuple(int(s) for s in params.get("sizes", (2, 2)))
        atom = tuple(int(a) for a in params.get("atom", (0,) * len(sizes)))
        if len(atom) != len(sizes) or any(not 0 <= a < s for a, s in zip(atom, sizes)):
            raise ConfigError(f"atom {atom} outside grid {sizes}")
        return _atoms(sizes, {atom: Fraction(1)})
    raise ConfigError(f"unknown family {family!r}; choose from {FAMILIES}")


# ---------------------------------------------------------------------------
# dense brute-force recomputation

def _table_of(dist):
    if isinstance(dist, AnalyticDistribution):
        return dist.table()
    return np.asarray(dist, dtype=np.float64)


def _dense_entropy(table):
    acc = 0.0
    for p in table.ravel():
        if p > 0:
            acc -= p * math.log2(p)
    return acc


def brute_entropy(dist, subset):
    """Joint entropy of a subset by dense marginalization and summation."""
    table = _table_of(dist)
    drop = tuple(i for i in range(table.ndim) if not subset >> i & 1)
    return _dense_entropy(table.sum(axis=drop) if drop else table)


def brute_mutual_information(dist, subset):
    """Interaction information by the alternating sum, each term dense."""
    table = _table_of(dist)
    acc = 0.0
    for s in submasks(subset):
        h = brute_entropy(table, s)
        acc += h if popcount(s) & 1 else -h
    return acc


def brute_total_correlation(dist, subset):
    table = _table_of(dist)
    acc = -brute_entropy(table, subset)
    for i in indices_of(subset):
        acc += brute_entropy(table, 1 << i)
    return acc


def _conditional_tables(table, given):
    """Yield (weight, conditional dense table) for outcomes of ``given``."""
    axes = indices_of(given)
    moved = np.moveaxis(table, axes, range(len(axes)))
    lead = moved.shape[:len(axes)]
    for coords in product(*(range(s) for s in lead)):
        block = moved[coords]
        w = float(block.sum())
        if w > 0:
            cond = np.zeros(table.shape)
            idx = [slice(None)] * table.ndim
            for ax, c in zip(axes, coords):
                idx[ax] = c
            cond[tuple(idx)] = block / w
            yield w, cond


def brute_conditional_entropy(dist, target, given):
    """H(target | given) as the weighted average over conditioning outcomes."""
    table = _table_of(dist)
    acc = 0.0
    for w, cond in _conditional_tables(table, given):
        acc += w * brute_entropy(cond, target)
    return acc


def brute_conditional_mutual_information(dist, subset, given=0):
    table = _table_of(dist)
    if given == 0:
        return brute_mutual_information(table, subset)
    acc = 0.0
    for w, cond in _conditional_tables(table, given):
        acc += w * brute_mutual_information(cond, subset)
    return acc


def brute_eta(dist, subset):
    """Atom coordinate via its conditional definition (not via inversion)."""
    table = _table_of(dist)
    rest = ((1 << table.ndim) - 1) & ~subset
    return brute_conditional_mutual_information(table, subset, rest)


# ---------------------------------------------------------------------------
# random laws and sampling

def random_table(rng, sizes):
    """Dense random law: normalized seeded exponential draws (flat Dirichlet)."""
    x = rng.exponential(size=tuple(sizes))
    return x / x.sum()


def table_to_joint(table, labels=None):
    """Sparse engine view of a dense float table."""
    table = np.asarray(table, dtype=np.float64)
    probs = {}
    for coords in zip(*np.nonzero(table)):
        probs[tuple(int(c) + 1 for c in coords)] = float(table[coords])
    return JointDistribution.from_probabilities(probs, table.shape, labels)


def sample_from(dist, m, seed):
    """m i.i.d. draws from an analytic law, as a discretized sample.

    The emitted bin spec spans [0, size-1] per variable so that writing the
    sample as raw values and re-graining with the same box counts
    reproduces it.
    """
    if m < 1:
        raise ConfigError("need m >= 1")
    if isinstance(dist, AnalyticDistribution):
        sizes = dist.sizes
        p = np.array([float(x) for x in dist.probs])
    else:
        table = np.asarray(dist, dtype=np.float64)
        sizes = table.shape
        p = table.ravel()
    rng = np.random.default_rng(seed)
    flat = rng.choice(p.size, size=m, p=p / p.sum())
    coords = np.column_stack(np.unravel_index(flat, sizes)) + 1
    spec = BinSpec(counts=tuple(int(s) for s in sizes),
                   mins=(0.0,) * len(sizes),
                   maxs=tuple(float(s - 1) for s in sizes),
                   labels=tuple(f"V{j + 1}" for j in range(len(sizes))))
    rows = tuple(f"R{i + 1}" for i in range(m))
    return DiscretizedSample(coords, spec, rows, spec.labels)


def sample_values(dist, m, seed):
    """Raw-value view of :func:`sample_from` (box coordinates as floats)."""
    s = sample_from(dist, m, seed)
    return (s.indices - 1).astype(np.float64), s.row_labels, s.col_labels


# ---------------------------------------------------------------------------
# exhaustive verifications

def simplex_entropy_fraction(boxes, draws, seed, threshold_bits):
    """Fraction of uniform-simplex laws over ``boxes`` atoms with H >= threshold."""
    rng = np.random.default_rng(seed)
    x = rng.exponential(size=(draws, boxes))
    p = x / x.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0, p * np.log2(p), 0.0)
    h = -t.sum(axis=1)
    return float((h >= threshold_bits).mean())


def _compositions(total, parts):
    """All length-``parts`` tuples of non-negative ints summing to total."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    rows = []
    for first in range(total + 1):
        rest = _compositions(total - first, parts - 1)
        block = np.empty((rest.shape[0], parts), dtype=np.int64)
        block[:, 0] = first
        block[:, 1:] = rest
        rows.append(block)
    return np.concatenate(rows)


def _xlog2x(a):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(a > 0, a * np.log2(np.maximum(a, 1e-300)), 0.0)


def binary3_grid_independence_check(resolution=32, ik_tol=1e-12,
                                    product_tol=1e-6):
    """Scan the full grid of binary 3-variable laws at step 1/resolution.

    Returns (number of laws with every interaction information of degree
    >= 2 below ``ik_tol`` in magnitude, worst max-norm distance of those
    laws from the product of their marginals).  A worst distance above
    ``product_tol`` would witness a failure of the independence criterion.
    """
    worst = 0.0
    hits = 0
    quarters = [_compositions(s, 4) for s in range(resolution + 1)]
    for s in range(resolution + 1):
        left = quarters[s]
        right = quarters[resolution - s]
        nl, nr = left.shape[0], right.shape[0]
        counts = np.empty((nl * nr, 8), dtype=np.int64)
        counts[:, :4] = np.repeat(left, nr, axis=0)
        counts[:, 4:] = np.tile(right, (nl, 1))
        p = counts.astype(np.float64) / resolution
        cube = p.reshape(-1, 2, 2, 2)
        h123 = -_xlog2x(p).sum(axis=1)
        p12 = cube.sum(axis=3).reshape(-1, 4)
        p13 = cube.sum(axis=2).reshape(-1, 4)
        p23 = cube.sum(axis=1).reshape(-1, 4)
        h12 = -_xlog2x(p12).sum(axis=1)
        h13 = -_xlog2x(p13).sum(axis=1)
        h23 = -_xlog2x(p23).sum(axis=1)
        p1 = cube.sum(axis=(2, 3))
        p2 = cube.sum(axis=(1, 3))
        p3 = cube.sum(axis=(1, 2))
        h1 = -_xlog2x(p1).sum(axis=1)
        h2 = -_xlog2x(p2).sum(axis=1)
        h3 = -_xlog2x(p3).sum(axis=1)
        i12 = h1 + h2 - h12
        i13 = h1 + h3 - h13
        i23 = h2 + h3 - h23
        i123 = h1 + h2 + h3 - h12 - h13 - h23 + h123
        flat = (np.abs(i12) < ik_tol) & (np.abs(i13) < ik_tol) \
            & (np.abs(i23) < ik_tol) & (np.abs(i123) < ik_tol)
        if flat.any():
            sel = np.flatnonzero(flat)
            hits += sel.size
            prod = (p1[sel, :, None, None] * p2[sel, None, :, None]
                    * p3[sel, None, None, :])
            dev = np.abs(cube[sel] - prod).max()
            worst = max(worst, float(dev))
    if worst > product_tol:
        raise AssertionError(
            f"grid law with vanishing interactions deviates from product "
            f"law by {worst}")
    return hits, worst
