"""Exact dimension-group arithmetic for the substitution subshift.

Everything here is integer or rational arithmetic, exact by construction:
powers of the 4x4 occurrence matrix and their closed form, the nested
lattices G_n / H_n / (G_n)+ of rational 4-vectors, the quotient maps onto
(1/2^n)Z (+) Z, the dyadic scaled-ordered-group normal form with its
positive cone, the order-two twist forced on it, and the running
1s-minus-0s discrepancy that witnesses the twist is not the identity.

Randomised property checks take explicit seeds; since all arithmetic is
exact, sampling is sound (no tolerances) and reports are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ResourceError
from .paperfold import pf_prefix
from .report import CheckReport, Stopwatch
from .words import Word

__all__ = [
    "PAPERFOLD_MATRIX",
    "mat_pow",
    "closed_form_power",
    "verify_matrix_closed_form",
    "in_G",
    "in_H",
    "in_G_plus",
    "closed_form_membership",
    "alpha",
    "alpha_preimage",
    "DyadicRational",
    "DyadicPair",
    "cone_membership",
    "staged_cone_witness",
    "rescale_unit",
    "DyadicInvolution",
    "involution_apply",
    "one_plus_sigma_image",
    "one_plus_sigma_preimage",
    "TorsionDyadicPair",
    "TORSION_UNIT_BRANCHES",
    "torsion_add",
    "torsion_is_positive",
    "torsion_state_value",
    "torsion_rescale_unit",
    "birkhoff_discrepancy",
    "discrepancy_profile",
    "coboundary_partial_sums",
    "m_sequence",
    "verify_unbounded_discrepancy",
    "verify_coboundary_bound",
    "verify_lattice_properties",
    "verify_cone_identity",
    "verify_involution_algebra",
]

# occurrence matrix of the substitution 3->31, 2->30, 1->21, 0->20:
# entry (i, j) counts letter j in the image of letter i
PAPERFOLD_MATRIX = (
    (1, 0, 1, 0),
    (0, 1, 1, 0),
    (1, 0, 0, 1),
    (0, 1, 0, 1),
)


def _mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(4)) for j in range(4))
        for i in range(4)
    )


_IDENTITY = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))


def mat_pow(M, n: int):
    """Exact n-th power of a 4x4 integer matrix (arbitrary precision)."""
    if n < 0:
        raise DomainError("matrix power exponent must be non-negative")
    M = tuple(tuple(int(x) for x in row) for row in M)
    result = _IDENTITY
    base = M
    while n:
        if n & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        n >>= 1
    return result


def closed_form_power(n: int):
    """The closed form of the n-th power of the occurrence matrix, n >= 2:
    with e = 2^(n-2) the rows are (e+1, e-1, e, e), (e, e, e, e),
    (e, e, e, e), (e-1, e+1, e, e)."""
    if n < 2:
        raise DomainError("closed form starts at power 2")
    e = 2 ** (n - 2)
    return (
        (e + 1, e - 1, e, e),
        (e, e, e, e),
        (e, e, e, e),
        (e - 1, e + 1, e, e),
    )


def verify_matrix_closed_form(n_max: int = 20) -> CheckReport:
    """Exact entrywise equality of iterated powers with the closed form."""
    watch = Stopwatch()
    params = {"n_max": n_max}
    certifies = "matrix powers match the closed form with entries 2^n, 2^n +/- 1"
    for n in range(0, n_max + 1):
        if mat_pow(PAPERFOLD_MATRIX, n + 2) != closed_form_power(n + 2):
            return CheckReport(
                check="dimgroup.matrix-closed-form",
                status="fail",
                params=params,
                witness={"n": n},
                elapsed_ms=watch.ms,
                certifies=certifies,
            )
    return CheckReport(
        check="dimgroup.matrix-closed-form",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        certifies=certifies,
    )


# ---------------------------------------------------------------------------
# lattices of rational 4-vectors


def _as_vec4(q):
    q = tuple(Fraction(x) for x in q)
    if len(q) != 4:
        raise DomainError("expected a rational 4-vector")
    return q


def _scaled(q):
    """(integer vector, common denominator) with q = v / d."""
    d = 1
    for x in q:
        d = math.lcm(d, x.denominator)
    return [x.numerator * (d // x.denominator) for x in q], d


_POWERS: dict = {}


def _power(n: int):
    if n not in _POWERS:
        _POWERS[n] = mat_pow(PAPERFOLD_MATRIX, n)
    return _POWERS[n]


def _image(q, n: int):
    v, d = _scaled(_as_vec4(q))
    M = _power(n)
    return [sum(M[i][j] * v[j] for j in range(4)) for i in range(4)], d


def _membership_triple(q, n: int):
    """(in G_n, in H_n, in (G_n)+) from a single matrix-vector product."""
    r, d = _image(q, n)
    integral = all(x % d == 0 for x in r)
    return (
        integral,
        all(x == 0 for x in r),
        integral and all(x >= 0 for x in r),
    )


def in_G(q, n: int) -> bool:
    """Whether the n-th matrix power maps q into Z^4 (n >= 1)."""
    if n < 1:
        raise DomainError("lattice index must be at least 1")
    r, d = _image(q, n)
    return all(x % d == 0 for x in r)


def in_H(q, n: int) -> bool:
    """Whether the n-th matrix power kills q (n >= 1)."""
    if n < 1:
        raise DomainError("lattice index must be at least 1")
    r, _ = _image(q, n)
    return all(x == 0 for x in r)


def in_G_plus(q, n: int) -> bool:
    """Whether the n-th matrix power maps q into Z^4 with all entries >= 0."""
    if n < 1:
        raise DomainError("lattice index must be at least 1")
    r, d = _image(q, n)
    return all(x % d == 0 and x >= 0 for x in r)


def closed_form_membership(q, n: int):
    """(in G_n, in H_n, in (G_n)+) computed from the closed-form conditions
    only, for lattice index n >= 2: with e = 2^(n-2), membership in G_n is
    "e * sum(q) and q1 - q2 are integers", in H_n is "sum(q) = 0 and
    q1 = q2", and in (G_n)+ additionally needs |q1 - q2| <= e * sum(q).

    Note the cone condition inherits the integrality constraints of G_n;
    the inequality alone does not imply them.
    """
    if n < 2:
        raise DomainError("closed-form membership starts at index 2")
    v, d = _scaled(_as_vec4(q))
    e = 2 ** (n - 2)
    S = sum(v)
    D = v[0] - v[1]
    in_g = (e * S) % d == 0 and D % d == 0
    in_h = S == 0 and D == 0
    in_gp = in_g and S >= 0 and abs(D) <= e * S
    return in_g, in_h, in_gp


def alpha(q, n: int) -> "DyadicPair":
    """Quotient map at stage n: q in G_{n+2} goes to (sum(q), q1 - q2)
    inside (1/2^n)Z (+) Z.  Kernel is H_{n+2}."""
    if n < 0:
        raise DomainError("stage must be non-negative")
    q = _as_vec4(q)
    if not in_G(q, n + 2):
        raise DomainError("vector is not in the stage's lattice G_{n+2}")
    s = sum(q)
    m = q[0] - q[1]
    sd = DyadicRational.from_fraction(s)
    if sd.exp > n:
        raise DomainError("sum lands outside (1/2^n)Z")  # unreachable given G-membership
    if m.denominator != 1:
        raise DomainError("q1 - q2 is not an integer")  # unreachable likewise
    return DyadicPair(sd, int(m))


def alpha_preimage(s, m: int):
    """A canonical preimage (m, 0, s - m, 0) of the target (s, m); it lies
    in G_{n+2} whenever 2^n * s is an integer, and in (G_{n+2})+ exactly
    when the target satisfies the stage's cone inequality."""
    s = Fraction(s) if not isinstance(s, DyadicRational) else s.to_fraction()
    return (Fraction(m), Fraction(0), s - m, Fraction(0))


# ---------------------------------------------------------------------------
# dyadic normal forms


@dataclass(frozen=True)
class DyadicRational:
    """num / 2^exp in canonical form: exp == 0 or num odd; zero is (0, 0)."""

    num: int
    exp: int

    def __post_init__(self):
        num, exp = int(self.num), int(self.exp)
        if exp < 0:
            raise DomainError("exponent must be non-negative")
        if num == 0:
            exp = 0
        else:
            while num % 2 == 0 and exp > 0:
                num //= 2
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_fraction(cls, f) -> "DyadicRational":
        f = Fraction(f)
        k = f.denominator.bit_length() - 1
        if f.denominator != 2**k:
            raise DomainError(f"{f} is not dyadic (denominator not a power of 2)")
        return cls(f.numerator, k)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 2**self.exp)

    def _cmp(self, other) -> int:
        other = _as_dyadic(other)
        lhs = self.num << other.exp
        rhs = other.num << self.exp
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __add__(self, other):
        other = _as_dyadic(other)
        e = max(self.exp, other.exp)
        return DyadicRational(
            (self.num << (e - self.exp)) + (other.num << (e - other.exp)), e
        )

    def __sub__(self, other):
        return self + (-_as_dyadic(other))

    def __neg__(self):
        return DyadicRational(-self.num, self.exp)

    def __mul__(self, other):
        other = _as_dyadic(other)
        return DyadicRational(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def halve(self) -> "DyadicRational":
        return DyadicRational(self.num, self.exp + 1)

    def __str__(self):
        return f"{self.num}/2^{self.exp}"

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        num, _, rest = text.partition("/2^")
        if not rest:
            raise DomainError(f"bad dyadic literal {text!r}")
        return cls(int(num), int(rest))

    def to_json(self):
        return str(self)


def _as_dyadic(x) -> DyadicRational:
    if isinstance(x, DyadicRational):
        return x
    if isinstance(x, int):
        return DyadicRational(x, 0)
    return DyadicRational.from_fraction(x)


DYADIC_ZERO = DyadicRational(0, 0)
DYADIC_ONE = DyadicRational(1, 0)


@dataclass(frozen=True)
class DyadicPair:
    """Element (s, m) of Z[1/2] (+) Z; positivity is the cone predicate
    below, not a structural invariant."""

    s: DyadicRational
    m: int

    def __add__(self, other):
        return DyadicPair(self.s + other.s, self.m + other.m)

    def __neg__(self):
        return DyadicPair(-self.s, -self.m)

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        return f"({self.s}, {self.m})"

    def to_json(self):
        return {"s": str(self.s), "m": self.m}


def cone_membership(p: DyadicPair) -> bool:
    """The positive cone: s > 0, together with the single boundary
    point (0, 0)."""
    return p.s > DYADIC_ZERO or (p.s == DYADIC_ZERO and p.m == 0)


def staged_cone_witness(p: DyadicPair):
    """Least stage n certifying cone membership: s lies in (1/2^n)Z,
    s >= 0 and |m| <= 2^n * s.  None when p is not in the cone; together
    with cone_membership this is the identity between the stagewise union
    and its closed description."""
    if p.s == DYADIC_ZERO:
        return 0 if p.m == 0 else None
    if p.s < DYADIC_ZERO:
        return None
    n, val = p.s.exp, p.s.num
    while val < abs(p.m):
        val *= 2
        n += 1
    return n


def rescale_unit(p: DyadicPair, old_unit_s: DyadicRational) -> DyadicPair:
    """Divide the dyadic component by a positive power-of-two unit value,
    e.g. map (4, 0) to (1, 0).  Order-preserving on the cone."""
    old_unit_s = _as_dyadic(old_unit_s)
    if old_unit_s <= DYADIC_ZERO:
        raise DomainError("unit value must be positive")
    if old_unit_s.num & (old_unit_s.num - 1):
        raise DomainError("unit value must be a power of 2 to keep values dyadic")
    shift = old_unit_s.num.bit_length() - 1 - old_unit_s.exp
    if shift >= 0:
        return DyadicPair(DyadicRational(p.s.num, p.s.exp + shift), p.m)
    return DyadicPair(DyadicRational(p.s.num << (-shift), p.s.exp), p.m)


@dataclass(frozen=True)
class DyadicInvolution:
    """The order-two twist (s, m) -> (s + m*a, -m) determined by one
    dyadic value a; squaring it is the identity for every a."""

    a: DyadicRational


def involution_apply(inv: DyadicInvolution, p: DyadicPair) -> DyadicPair:
    return DyadicPair(p.s + inv.a * DyadicRational(p.m, 0), -p.m)


def one_plus_sigma_image(inv: DyadicInvolution, p: DyadicPair) -> DyadicPair:
    """p plus its twist; always lands in the integer-component-zero copy
    of the dyadics."""
    return p + involution_apply(inv, p)


def one_plus_sigma_preimage(inv: DyadicInvolution, target: DyadicPair) -> DyadicPair:
    """A preimage of (q, 0) under p -> p + twist(p), namely (q/2, 0)."""
    if target.m != 0:
        raise DomainError("only targets with integer component 0 are attained")
    return DyadicPair(target.s.halve(), 0)


# ---------------------------------------------------------------------------
# torsion normal form


@dataclass(frozen=True)
class TorsionDyadicPair:
    """Element (x, q) of Z_2 (+) Z[1/2] with the cone {q > 0} plus (0, 0)."""

    x: int
    q: DyadicRational

    def __post_init__(self):
        if self.x not in (0, 1):
            raise DomainError("torsion component must be a bit")

    def __str__(self):
        return f"({self.x}, {self.q})"

    def to_json(self):
        return {"x": self.x, "q": str(self.q)}


# the order unit is one of these two; which one is genuinely ambiguous, so
# it stays a two-valued parameter and every consumer reports both branches
TORSION_UNIT_BRANCHES = (
    TorsionDyadicPair(0, DYADIC_ONE),
    TorsionDyadicPair(1, DYADIC_ONE),
)


def torsion_add(p1: TorsionDyadicPair, p2: TorsionDyadicPair) -> TorsionDyadicPair:
    return TorsionDyadicPair(p1.x ^ p2.x, p1.q + p2.q)


def torsion_is_positive(p: TorsionDyadicPair) -> bool:
    return p.q > DYADIC_ZERO or (p.x == 0 and p.q == DYADIC_ZERO)


def torsion_state_value(p: TorsionDyadicPair) -> DyadicRational:
    """The unique state: evaluation of the dyadic component.  Any
    real-valued homomorphism must vanish on the torsion bit."""
    return p.q


def torsion_rescale_unit(p: TorsionDyadicPair, old_unit_q: DyadicRational) -> TorsionDyadicPair:
    """Unit normalisation on the torsion form, e.g. (x, y) -> (x, y/4)."""
    scaled = rescale_unit(DyadicPair(p.q, 0), old_unit_q)
    return TorsionDyadicPair(p.x, scaled.s)


# ---------------------------------------------------------------------------
# Birkhoff discrepancy along the word


def birkhoff_discrepancy(prefix: Word, n: int) -> int:
    """count of 1s minus count of 0s over slots 0..n of the prefix."""
    if not 0 <= n < prefix.length:
        raise DomainError("n out of range for the prefix")
    ones = int(np.count_nonzero(prefix.to_array()[: n + 1]))
    return 2 * ones - (n + 1)


def discrepancy_profile(prefix: Word) -> np.ndarray:
    """Vector of discrepancies at every n, via one cumulative sum."""
    arr = prefix.to_array().astype(np.int64)
    return 2 * np.cumsum(arr) - np.arange(1, arr.size + 1)


def coboundary_partial_sums(prefix: Word, symbol: int = 1) -> np.ndarray:
    """Partial sums of g = f - f(shifted back) for the one-slot cylinder
    indicator f = [slot 0 reads ``symbol``], evaluated along the prefix.
    These telescope, so they stay bounded by 2*max|f| = 2, in contrast to
    the unbounded discrepancy sums."""
    f = (prefix.to_array() == symbol).astype(np.int64)
    if f.size < 2:
        raise DomainError("prefix too short")
    return np.cumsum(f[1:] - f[:-1])


def m_sequence(n: int) -> int:
    """The checkpoint positions: m(0) = 0 and m(n+1) = 2*m(n) + 2 for odd
    n, 2*m(n) + 1 for even n.  m(n) has the parity of n and is at most
    2^(n+1) - 2."""
    if n < 0:
        raise DomainError("index must be non-negative")
    if n > 60:
        raise ResourceError("m-sequence index capped at 60 to stay in machine range")
    m = 0
    for k in range(n):
        m = 2 * m + (2 if k % 2 == 1 else 1)
    return m


def verify_unbounded_discrepancy(N: int = 20) -> CheckReport:
    """The discrepancy at checkpoint m(n) equals n + 1 for 0 <= n <= N,
    so the discrepancy sums are unbounded along the word; that is the
    executable obstruction to the twist acting as the identity."""
    if N < 0:
        raise DomainError("N must be non-negative")
    if N > 24:
        raise ResourceError("discrepancy checkpoints capped at N = 24")
    watch = Stopwatch()
    checkpoints = [m_sequence(n) for n in range(N + 1)]
    profile = discrepancy_profile(pf_prefix(checkpoints[-1] + 1))
    params = {"N": N, "prefix_len": checkpoints[-1] + 1}
    certifies = "discrepancy at checkpoint m(n) equals n+1 (unbounded growth)"
    for n, mn in enumerate(checkpoints):
        if int(profile[mn]) != n + 1:
            return CheckReport(
                check="dimgroup.discrepancy-growth",
                status="fail",
                params=params,
                witness={"n": n, "m_n": mn, "observed": int(profile[mn])},
                elapsed_ms=watch.ms,
                certifies=certifies,
            )
    return CheckReport(
        check="dimgroup.discrepancy-growth",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        certifies=certifies,
    )


def verify_coboundary_bound(prefix_len: int = 2**16) -> CheckReport:
    """Coboundary control: for both one-slot cylinder indicators the
    partial sums stay bounded by 2 and agree with their telescoped form."""
    watch = Stopwatch()
    prefix = pf_prefix(prefix_len)
    params = {"prefix_len": prefix_len}
    certifies = "cylinder coboundary partial sums stay bounded by 2"
    arr = prefix.to_array()
    for symbol in (0, 1):
        sums = coboundary_partial_sums(prefix, symbol)
        f = (arr == symbol).astype(np.int64)
        telescoped = f[1:] - f[0]
        if not np.array_equal(sums, telescoped) or int(np.abs(sums).max()) > 2:
            return CheckReport(
                check="dimgroup.coboundary-bound",
                status="fail",
                params=params,
                witness={"symbol": symbol, "max_abs": int(np.abs(sums).max())},
                elapsed_ms=watch.ms,
                certifies=certifies,
            )
    return CheckReport(
        check="dimgroup.coboundary-bound",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        certifies=certifies,
    )


# ---------------------------------------------------------------------------
# seeded property batteries (exact, no tolerances)


def _random_fraction(rng) -> Fraction:
    return Fraction(rng.randint(-1024, 1024), rng.randint(1, 1024))


def _random_lattice_member(rng, n: int):
    """A random element of G_n: a canonical preimage of a random target
    plus a random element of the stage's kernel (sum 0, q1 = q2)."""
    s = Fraction(rng.randint(-1024, 1024), 2 ** rng.randint(0, n - 2)) if n > 2 else Fraction(rng.randint(-1024, 1024))
    m = rng.randint(-1024, 1024)
    a, b = _random_fraction(rng), _random_fraction(rng)
    kernel = (a, a, b, -2 * a - b)
    base = alpha_preimage(s, m)
    return tuple(x + y for x, y in zip(base, kernel)), s, m


def verify_lattice_properties(index_max: int = 12, samples: int = 10_000, seed: int = 42) -> CheckReport:
    """Battery over lattice indices 2..index_max with ``samples`` draws per
    index: definitional vs closed-form membership agreement, nesting of
    G/H/G+ across consecutive indices, the quotient-map kernel identity,
    surjectivity witnesses, stage-independence of the quotient map, and
    the cone correspondence for canonical preimages."""
    if index_max < 2:
        raise DomainError("index_max must be at least 2")
    watch = Stopwatch()
    rng = random.Random(seed)
    params = {"index_max": index_max, "samples": samples}
    certifies = "lattice membership, nesting, quotient kernel and cone all agree exactly"

    def fail(reason, n, payload):
        return CheckReport(
            check="dimgroup.lattice-properties",
            status="fail",
            params=params,
            witness={"reason": reason, "index": n, **payload},
            elapsed_ms=watch.ms,
            seed=seed,
            certifies=certifies,
        )

    for n in range(2, index_max + 1):
        for _ in range(samples):
            q = tuple(_random_fraction(rng) for _ in range(4))
            got = _membership_triple(q, n)
            if got != closed_form_membership(q, n):
                return fail("closed-form-disagrees", n, {"q": [str(x) for x in q]})
            # nesting into the next stage
            nxt = _membership_triple(q, n + 1)
            if any(a and not b for a, b in zip(got, nxt)):
                return fail("nesting-violated", n, {"q": [str(x) for x in q]})

            member, s, m = _random_lattice_member(rng, n)
            in_g, in_h, _ = _membership_triple(member, n)
            if not in_g:
                return fail("constructed-member-outside", n, {"q": [str(x) for x in member]})
            pair = alpha(member, n - 2)
            if pair.s.to_fraction() != s or pair.m != m:
                return fail("quotient-map-wrong-target", n, {"target": [str(s), m]})
            # the map does not depend on the stage it is computed at
            if alpha(member, n - 1) != pair:
                return fail("stage-dependence", n, {"target": [str(s), m]})
            # kernel identity
            if in_h != (pair.s == DYADIC_ZERO and pair.m == 0):
                return fail("kernel-identity", n, {"q": [str(x) for x in member]})
            # canonical preimage lies in the positive set iff the target
            # satisfies the stage's cone inequality
            base = alpha_preimage(s, m)
            staged_ok = s >= 0 and abs(m) <= 2 ** (n - 2) * s
            if in_G_plus(base, n) != staged_ok:
                return fail("cone-correspondence", n, {"target": [str(s), m]})
    return CheckReport(
        check="dimgroup.lattice-properties",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        seed=seed,
        certifies=certifies,
    )


def verify_cone_identity(samples: int = 10_000, seed: int = 42) -> CheckReport:
    """Staged-vs-direct cone membership agreement on the dyadic grid
    |num| <= 2^20, exp <= 20, |m| <= 2^20, with explicit stage witnesses,
    plus the unit normalisation facts: the all-ones vector maps to (4, 0)
    and rescaling by 4 makes it (1, 0)."""
    watch = Stopwatch()
    rng = random.Random(seed)
    params = {"samples": samples}
    certifies = "staged cone union equals {s > 0} plus the origin; unit maps to (1,0)"

    def fail(reason, payload):
        return CheckReport(
            check="dimgroup.cone-identity",
            status="fail",
            params=params,
            witness={"reason": reason, **payload},
            elapsed_ms=watch.ms,
            seed=seed,
            certifies=certifies,
        )

    unit_pair = alpha((1, 1, 1, 1), 0)
    if unit_pair != DyadicPair(DyadicRational(4, 0), 0):
        return fail("unit-image", {"got": str(unit_pair)})
    if rescale_unit(unit_pair, DyadicRational(4, 0)) != DyadicPair(DYADIC_ONE, 0):
        return fail("unit-rescale", {"got": str(rescale_unit(unit_pair, DyadicRational(4, 0)))})

    specials = [
        DyadicPair(DYADIC_ZERO, 0),
        DyadicPair(DYADIC_ZERO, 5),
        DyadicPair(DyadicRational(1, 3), 1000),
        DyadicPair(DyadicRational(-1, 2), 0),
    ]
    draws = (
        DyadicPair(
            DyadicRational(rng.randint(-(2**20), 2**20), rng.randint(0, 20)),
            rng.randint(-(2**20), 2**20),
        )
        for _ in range(samples)
    )
    for p in (*specials, *draws):
        direct = cone_membership(p)
        witness_n = staged_cone_witness(p)
        if (witness_n is not None) != direct:
            return fail("staged-vs-direct", {"p": str(p)})
        if witness_n is not None:
            ok = (
                p.s.exp <= witness_n
                and p.s >= DYADIC_ZERO
                and abs(p.m) <= p.s.num * 2 ** (witness_n - p.s.exp)
            )
            if not ok:
                return fail("witness-invalid", {"p": str(p), "witness": witness_n})
        # rescaling by a positive power of 2 preserves the cone
        if cone_membership(rescale_unit(p, DyadicRational(4, 0))) != direct:
            return fail("rescale-not-order-preserving", {"p": str(p)})
    return CheckReport(
        check="dimgroup.cone-identity",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        seed=seed,
        certifies=certifies,
    )


def verify_involution_algebra(samples: int = 1000, seed: int = 42) -> CheckReport:
    """For random dyadic twist values a: the twist squares to the
    identity and fixes every (q, 0); adding the twisted copy always lands
    in {(., 0)} and attains every sampled (q, 0) via the halved preimage."""
    watch = Stopwatch()
    rng = random.Random(seed)
    params = {"samples": samples}
    certifies = "twist is an exact involution fixing (q, 0); 1+twist maps onto {(., 0)}"

    def fail(reason, payload):
        return CheckReport(
            check="dimgroup.involution",
            status="fail",
            params=params,
            witness={"reason": reason, **payload},
            elapsed_ms=watch.ms,
            seed=seed,
            certifies=certifies,
        )

    for _ in range(samples):
        inv = DyadicInvolution(
            DyadicRational(rng.randint(-1024, 1024), rng.randint(0, 10))
        )
        p = DyadicPair(
            DyadicRational(rng.randint(-1024, 1024), rng.randint(0, 10)),
            rng.randint(-1024, 1024),
        )
        if involution_apply(inv, involution_apply(inv, p)) != p:
            return fail("not-an-involution", {"a": str(inv.a), "p": str(p)})
        fixed = DyadicPair(p.s, 0)
        if involution_apply(inv, fixed) != fixed:
            return fail("does-not-fix-dyadics", {"a": str(inv.a), "p": str(fixed)})
        image = one_plus_sigma_image(inv, p)
        if image.m != 0:
            return fail("image-not-integer-free", {"a": str(inv.a), "p": str(p)})
        target = DyadicPair(p.s, 0)
        pre = one_plus_sigma_preimage(inv, target)
        if one_plus_sigma_image(inv, pre) != target:
            return fail("preimage-wrong", {"a": str(inv.a), "target": str(target)})
    return CheckReport(
        check="dimgroup.involution",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        seed=seed,
        certifies=certifies,
    )
