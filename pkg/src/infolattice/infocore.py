"""Information functions of a sparse joint distribution.

All quantities are in bits (log base 2) with the 0*log(0) = 0 convention;
boxes of zero mass never enter a sum.  Variable subsets are bitmasks over
variable indices 0..n-1.  Per-subset joint entropies are memoized on the
distribution, so the alternating sums behind the higher-order quantities
evaluate each marginal entropy once.
"""

import math
from itertools import combinations

import numpy as np

from .errors import ConfigError, DistributionError, SubsetError

# Default absolute tolerance for identity checks; sums of <= 2^21
# double-precision terms of size O(10) stay well inside it.
IDENTITY_TOL = 1e-9


# ---------------------------------------------------------------------------
# subset masks

def mask_of(indices):
    """Bitmask for an iterable of variable indices."""
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask):
    """Ascending variable indices packed in a bitmask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return int(mask).bit_count()


def submasks(mask, include_empty=False):
    """All submasks of ``mask``, descending; empty excluded by default."""
    s = mask
    while s:
        yield s
        s = (s - 1) & mask
    if include_empty:
        yield 0


def _check_subset(j, mask, name="subset"):
    if mask == 0:
        raise SubsetError(f"empty {name}")
    if mask >> j.n:
        raise SubsetError(f"{name} {bin(mask)} outside variables 0..{j.n - 1}")


# ---------------------------------------------------------------------------
# plain entropy of a probability vector

def entropy(p, tol=1e-9):
    """Shannon entropy -sum(p log2 p) of a probability vector, in bits."""
    p = np.asarray(p, dtype=np.float64).ravel()
    if (p < 0).any():
        raise DistributionError(f"negative mass {p.min()}")
    s = p.sum()
    if abs(s - 1.0) > tol:
        raise DistributionError(f"probabilities sum to {s}, expected 1")
    q = p[p > 0]
    return float(-(q * np.log2(q)).sum())


# ---------------------------------------------------------------------------
# joint entropies

def _project(j, mask):
    """Marginal masses onto ``mask`` as a dict keyed by projected boxes."""
    keep = indices_of(mask)
    out = {}
    for box, w in j.support.items():
        key = tuple(box[i] for i in keep)
        out[key] = out.get(key, 0) + w
    return out


def _H(j, mask):
    """Memoized joint entropy of the marginal onto ``mask``; H(empty) = 0."""
    if mask == 0:
        return 0.0
    cached = j._hcache.get(mask)
    if cached is not None:
        return cached
    total = j.total
    acc = 0.0
    groups = _project(j, mask)
    for key in sorted(groups):  # fixed order for bit-stable sums
        w = groups[key]
        acc += w * math.log2(w)
    h = math.log2(total) - acc / total
    j._hcache[mask] = h
    return h


def joint_entropy(j, subset):
    """Entropy of the joint variable over a non-empty subset."""
    _check_subset(j, subset)
    return _H(j, subset)


def sum_entropy(j, variables, degree):
    """Sum of joint entropies over all ``degree``-sized sub-collections.

    ``variables`` is a list of subset masks (each may itself be a joint
    block); each term is the entropy of the union of a sub-collection.
    """
    if not 1 <= degree <= len(variables):
        raise ConfigError(f"degree {degree} out of range 1..{len(variables)}")
    for v in variables:
        _check_subset(j, v, "variable block")
    acc = 0.0
    for combo in combinations(variables, degree):
        u = 0
        for v in combo:
            u |= v
        acc += _H(j, u)
    return acc


def mutual_information(j, subset):
    """Interaction information over a subset: alternating sum of joint entropies.

    I over {i} is the entropy H(X_i); over pairs the usual (non-negative)
    mutual information; from triples on the value may be negative.
    """
    _check_subset(j, subset)
    acc = 0.0
    for s in submasks(subset):
        acc += _H(j, s) if popcount(s) & 1 else -_H(j, s)
    return acc


def conditional_entropy(j, target, given):
    """H(target | given) = sum_y P(given=y) H(target | given=y).

    Equals H(target, given) - H(given); both masks must be non-empty and
    disjoint.
    """
    _check_subset(j, target, "target")
    _check_subset(j, given, "conditioning subset")
    if target & given:
        raise SubsetError("target and conditioning subsets overlap")
    keep_y = indices_of(given)
    keep_z = indices_of(target)
    groups = {}
    for box, w in j.support.items():
        y = tuple(box[i] for i in keep_y)
        z = tuple(box[i] for i in keep_z)
        inner = groups.setdefault(y, {})
        inner[z] = inner.get(z, 0) + w
    acc = 0.0
    for y in sorted(groups):
        inner = groups[y]
        wy = sum(inner[z] for z in sorted(inner))
        s = 0.0
        for z in sorted(inner):
            w = inner[z]
            s += w * math.log2(w)
        acc += wy * (math.log2(wy) - s / wy)
    return acc / j.total


def conditional_mutual_information(j, subset, given=0):
    """Average over conditioning outcomes of the interaction information.

    sum_z P(given=z) * I(subset variables ; law | given=z); an empty
    ``given`` reduces to :func:`mutual_information`.  Computed through the
    equivalent alternating sum of conditional entropies.
    """
    _check_subset(j, subset)
    if given == 0:
        return mutual_information(j, subset)
    if subset & given:
        raise SubsetError("subset overlaps conditioning variables")
    if given >> j.n:
        raise SubsetError("conditioning subset out of range")
    acc = 0.0
    for s in submasks(subset):
        term = conditional_entropy(j, s, given)
        acc += term if popcount(s) & 1 else -term
    return acc


def total_correlation(j, subset):
    """Sum of marginal entropies minus the joint entropy; always >= 0."""
    _check_subset(j, subset)
    acc = -_H(j, subset)
    for i in indices_of(subset):
        acc += _H(j, 1 << i)
    return acc


def eta(j, subset):
    """Lattice atom coordinate of a face: interaction information of the
    subset's variables conditioned on all remaining variables.

    Obtained by Moebius inversion of the joint entropies; reconstruction
    identities: I over S equals the sum of eta over supersets of S, and
    H over S the sum of eta over subsets meeting S.
    """
    _check_subset(j, subset)
    rest = ((1 << j.n) - 1) & ~subset
    acc = -_H(j, rest)
    for s in submasks(subset):
        h = _H(j, s | rest)
        acc += h if popcount(s) & 1 else -h
    return acc


def general_information(j, blocks, given=0, check=False, tol=IDENTITY_TOL):
    """Interaction information of joint variable blocks, optionally conditioned.

    ``blocks`` is a list of masks; each mask is treated as one joint
    variable.  With ``check`` the value is recomputed as the sum of eta
    over all faces meeting every block and avoiding ``given``, and the two
    routes must agree within ``tol``.
    """
    if not blocks:
        raise SubsetError("need at least one block")
    for b in blocks:
        _check_subset(j, b, "block")
        if b & given:
            raise SubsetError("block overlaps conditioning subset")
    if given >> j.n:
        raise SubsetError("conditioning subset out of range")
    k = len(blocks)
    direct = -_H(j, given)
    for r in range(1, k + 1):
        for combo in combinations(range(k), r):
            u = given
            for i in combo:
                u |= blocks[i]
            direct += _H(j, u) if r & 1 else -_H(j, u)
    if check:
        acc = 0.0
        for face in range(1, 1 << j.n):
            if face & given:
                continue
            if all(face & b for b in blocks):
                acc += eta(j, face)
        if abs(direct - acc) > tol:
            raise AssertionError(
                f"direct route {direct} and eta route {acc} disagree by "
                f"{abs(direct - acc)}")
    return direct


def markov_check(j, ordering, tol=IDENTITY_TOL):
    """Whether variables fit a Markov chain in the given order.

    True iff for every subset T of the middle variables, the interaction
    information over {first} + T + {last} equals the pairwise information
    of first and last, within ``tol``.  Returns (ok, worst violation).
    """
    ordering = list(ordering)
    if sorted(ordering) != list(range(j.n)):
        raise ConfigError("ordering must be a permutation of 0..n-1")
    if j.n <= 2:
        return True, 0.0
    first, last = ordering[0], ordering[-1]
    ends = (1 << first) | (1 << last)
    middle = mask_of(ordering[1:-1])
    i2 = mutual_information(j, ends)
    worst = 0.0
    for t in submasks(middle, include_empty=True):
        worst = max(worst, abs(mutual_information(j, ends | t) - i2))
    return worst <= tol, worst


# ---------------------------------------------------------------------------
# identity battery

def identity_suite(j, tol=IDENTITY_TOL, samples=50, seed=12345,
                   decomposition_vars=12, moebius_vars=6):
    """Max absolute residuals of the core algebraic identities on a joint law.

    Exhaustive over subsets when n is small, otherwise over a seeded,
    deterministic sample of subset combinations.  The full alternating-sum
    decomposition is restricted to the first ``decomposition_vars``
    variables and the Moebius round trip to the first ``moebius_vars``
    (their cost grows as 2^n and 4^n respectively).
    """
    rng = np.random.default_rng(seed)
    n = j.n
    full = (1 << n) - 1

    def random_disjoint(parts):
        while True:
            assign = rng.integers(0, parts + 1, size=n)
            masks = [mask_of(np.flatnonzero(assign == p + 1)) for p in range(parts)]
            if all(masks):
                return masks

    res = {}

    # chain rule: H(Y,Z) = H(Y) + H(Z|Y)
    worst = 0.0
    pairs = []
    if n <= 5:
        for y in range(1, full + 1):
            for z in submasks(full & ~y):
                pairs.append((y, z))
    else:
        pairs = [random_disjoint(2) for _ in range(samples)]
    for y, z in pairs:
        lhs = _H(j, y | z)
        rhs = _H(j, y) + conditional_entropy(j, z, y)
        worst = max(worst, abs(lhs - rhs))
    res["chain-rule"] = worst

    # recursion: I(S + x0) = I(S) - I(S | x0)
    worst = 0.0
    if n <= 5:
        cases = [(s, x) for s in range(1, full + 1) for x in range(n)
                 if not s >> x & 1]
    else:
        cases = []
        for _ in range(samples):
            s, x0 = random_disjoint(2)
            x = indices_of(x0)[0]
            cases.append((s, x))
    for s, x in cases:
        lhs = mutual_information(j, s | (1 << x))
        rhs = mutual_information(j, s) - conditional_mutual_information(
            j, s, 1 << x)
        worst = max(worst, abs(lhs - rhs))
    res["recursion"] = worst

    # cocycle: I(X;(Y,Z)) + I(Y;Z) = I((X,Y);Z) + I(X;Y)
    worst = 0.0
    triples = ([t for t in _disjoint_triples(n)] if n <= 5
               else [tuple(random_disjoint(3)) for _ in range(samples)])
    for x, y, z in triples:
        lhs = (general_information(j, [x, y | z]) + general_information(j, [y, z]))
        rhs = (general_information(j, [x | y, z]) + general_information(j, [x, y]))
        worst = max(worst, abs(lhs - rhs))
    res["cocycle"] = worst

    # G_2 = I_2 over variable pairs
    worst = 0.0
    idx_pairs = list(combinations(range(n), 2))[:100]
    for a, b in idx_pairs:
        pair = (1 << a) | (1 << b)
        worst = max(worst, abs(total_correlation(j, pair)
                               - mutual_information(j, pair)))
    res["pairwise-total-correlation"] = worst

    # alternating-sum decomposition of the top entropy
    nd = min(n, decomposition_vars)
    sub = full if nd == n else (1 << nd) - 1
    from .discretize import marginalize
    jd = j if nd == n else marginalize(j, sub)
    fulld = (1 << nd) - 1
    acc = 0.0
    for s in range(1, fulld + 1):
        i_val = mutual_information(jd, s)
        acc += i_val if popcount(s) & 1 else -i_val
    res["entropy-decomposition"] = abs(acc - _H(jd, fulld))

    # total correlation from the same alternating sums
    acc = 0.0
    for s in range(1, fulld + 1):
        if popcount(s) >= 2:
            i_val = mutual_information(jd, s)
            acc += -i_val if popcount(s) & 1 else i_val
    res["total-correlation-decomposition"] = abs(
        acc - total_correlation(jd, fulld))

    # Moebius round trip: eta from entropies, then H and I rebuilt from eta
    nm = min(n, moebius_vars)
    subm = full if nm == n else (1 << nm) - 1
    jm = j if nm == n else marginalize(j, subm)
    fullm = (1 << nm) - 1
    etas = {s: eta(jm, s) for s in range(1, fullm + 1)}
    worst = 0.0
    for s in range(1, fullm + 1):
        i_back = sum(etas[t] for t in range(1, fullm + 1) if t & s == s)
        h_back = sum(etas[t] for t in range(1, fullm + 1) if t & s)
        worst = max(worst, abs(i_back - mutual_information(jm, s)))
        worst = max(worst, abs(h_back - _H(jm, s)))
    res["moebius-round-trip"] = worst

    return res


def _disjoint_triples(n):
    full = (1 << n) - 1
    for x in range(1, full + 1):
        rest = full & ~x
        for y in submasks(rest):
            for z in submasks(rest & ~y):
                yield x, y, z
