"""Language-level certificates for the dihedral action on the subshift.

The shift together with the anti-reversal involution generate an infinite
dihedral action on the closure of the shifted source word.  Everything a
finite machine can certify about it lives here: closure of the factor
language under anti-reversal, the anti-palindrome bound behind freeness,
leftward extension of the one-sided word, and the even/odd window
separation that splits the space into two clopen halves.

Every check that depends on the factor language of an infinite word is
computed on a finite prefix; when the factor sets have not stabilised
between the reference prefix and the full one, checks answer
"inconclusive" rather than "pass".

Minimality of the subshift is not finitely certifiable; its finite
proxies are uniform recurrence (paperfold.verify_recurrence) and the
saturation bookkeeping here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, ExtensionError
from .paperfold import pf_word
from .report import CheckReport, Stopwatch
from .words import (
    BINARY,
    Window,
    Word,
    anti_reverse_code,
    code_to_word,
    is_anti_palindrome,
    window_codes,
)

__all__ = [
    "LanguageOracle",
    "FreenessCertificate",
    "check_closure_under_antireversal",
    "is_phi_sigma_fixed_window",
    "left_extend",
    "freeness_certificate",
    "parity_class_separation",
    "EVEN_WINDOW_PATTERNS",
    "ODD_WINDOW_PATTERNS",
]


class LanguageOracle:
    """Exact factor-language membership against a stored prefix.

    Membership answers are exact for queries of length <= max_len; whether
    they speak for the whole language is a separate question, tracked by
    per-length saturation: length ell is saturated when the prefix and a
    shorter reference prefix (by default the first half, or the previous
    generation) have identical factor sets of length ell.
    """

    def __init__(self, source: Word, max_len: int, reference_len: Optional[int] = None):
        if max_len < 1:
            raise DomainError("oracle max_len must be positive")
        if source.length < max_len:
            raise DomainError("oracle source shorter than max_len")
        self.source = source
        self.max_len = max_len
        self.reference_len = (
            (source.length + 1) // 2 if reference_len is None else reference_len
        )
        if not 0 < self.reference_len <= source.length:
            raise DomainError("bad reference length")
        self._raw = source.to_array().tobytes()
        self._codes: dict[int, set] = {}
        self._saturated: dict[int, bool] = {}

    @classmethod
    def from_generation(cls, generation: int, max_len: int) -> "LanguageOracle":
        """Oracle over paper-folding generation ``generation`` with the
        previous generation as saturation reference."""
        if generation < 1:
            raise DomainError("need generation >= 1")
        return cls(pf_word(generation), max_len, reference_len=2**generation - 1)

    def contains(self, v: Word) -> bool:
        """Exact membership of ``v`` in the factor set of the stored prefix."""
        if v.alphabet != self.source.alphabet:
            raise DomainError("query word over a different alphabet")
        if v.length > self.max_len:
            raise DomainError(f"query length {v.length} exceeds oracle max_len")
        if v.length == 0:
            return True
        return self._raw.find(v.to_array().tobytes()) >= 0

    def factor_codes(self, length: int) -> set:
        """Set of integer window codes of the given length (cached)."""
        if not 1 <= length <= self.max_len:
            raise DomainError("length outside the oracle's range")
        if length not in self._codes:
            arr = self.source.to_array()
            self._codes[length] = set(
                np.unique(window_codes(arr, length, self.source.alphabet.bits)).tolist()
            )
        return self._codes[length]

    def is_saturated(self, length: int) -> bool:
        if not 1 <= length <= self.max_len:
            raise DomainError("length outside the oracle's range")
        if length not in self._saturated:
            ref = self.source.to_array()[: self.reference_len]
            bits = self.source.alphabet.bits
            ref_codes = set(np.unique(window_codes(ref, length, bits)).tolist())
            self._saturated[length] = ref_codes == self.factor_codes(length)
        return self._saturated[length]

    def saturated_to(self, n: int) -> bool:
        return all(self.is_saturated(ell) for ell in range(1, n + 1))


def check_closure_under_antireversal(oracle: LanguageOracle, n_max: int) -> CheckReport:
    """Pass iff for every factor v with |v| <= n_max the anti-reversal of v
    is also a factor.  Inconclusive when any length up to n_max is not
    saturated."""
    if n_max > oracle.max_len:
        raise DomainError("n_max exceeds the oracle's max_len")
    if oracle.source.alphabet != BINARY:
        raise DomainError("closure under anti-reversal needs a binary oracle")
    watch = Stopwatch()
    params = {"n_max": n_max, "source_len": oracle.source.length}
    certifies = "factor language closed under anti-reversal up to n_max"
    for ell in range(1, n_max + 1):
        if not oracle.is_saturated(ell):
            return CheckReport(
                check="dihedral.antireversal-closure",
                status="inconclusive",
                params=params,
                witness={"unsaturated_length": ell},
                elapsed_ms=watch.ms,
                certifies=certifies,
            )
        codes = oracle.factor_codes(ell)
        for c in codes:
            if anti_reverse_code(c, ell) not in codes:
                return CheckReport(
                    check="dihedral.antireversal-closure",
                    status="fail",
                    params=params,
                    witness={"factor": str(code_to_word(c, ell))},
                    elapsed_ms=watch.ms,
                    certifies=certifies,
                )
    return CheckReport(
        check="dihedral.antireversal-closure",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        certifies=certifies,
    )


def is_phi_sigma_fixed_window(x: Window) -> bool:
    """Whether the window is consistent with a fixed point of
    shift-then-antireverse, i.e. x[j] = 1 - x[1-j] for every representable j.

    The window must cover exactly the slots -K+1 .. K for some K >= 1,
    which pairs every slot with its mirror; that holds precisely when the
    underlying word is an anti-palindrome.
    """
    n = x.word.length
    if n < 2 or n % 2 != 0 or x.origin != 1 - n // 2:
        raise DomainError("window must cover slots [-K+1, K] for some K >= 1")
    return is_anti_palindrome(x.word)


def left_extend(oracle: LanguageOracle, seed: Word, steps: int, horizon: int) -> Word:
    """Extend ``seed`` to the left by ``steps`` letters, keeping every
    window of length up to ``horizon`` inside the language.

    At each step the smallest admissible letter is chosen; a letter is
    admissible when the longest new window it creates (capped by the
    horizon) is a factor.  Raises ExtensionError with the stuck prefix
    when no letter works, which signals a too-small horizon or a
    non-recurrent source, not a contradiction.
    """
    if steps < 0 or horizon < 1:
        raise DomainError("need steps >= 0 and horizon >= 1")
    if steps + seed.length + horizon > oracle.max_len:
        raise DomainError("steps + |seed| + horizon must stay within oracle.max_len")
    if not oracle.contains(seed):
        raise DomainError("seed is not a factor of the oracle's language")
    alphabet = oracle.source.alphabet
    cur = seed.to_array()
    for _ in range(steps):
        probe_len = min(horizon, cur.size + 1)
        chosen = None
        for a in range(alphabet.size):
            head = np.concatenate([np.array([a], dtype=np.uint8), cur[: probe_len - 1]])
            if oracle.contains(Word.from_array(head, alphabet)):
                chosen = a
                break
        if chosen is None:
            raise ExtensionError(Word.from_array(cur, alphabet), horizon)
        cur = np.concatenate([np.array([chosen], dtype=np.uint8), cur])
    return Word.from_array(cur, alphabet)


@dataclass(frozen=True)
class FreenessCertificate:
    """Finite evidence that the dihedral action on the subshift is free:
    the factor language is closed under anti-reversal (so the involution
    preserves the subshift) and contains no anti-palindrome of length 8
    (so anti-palindromic factors are bounded, which is the standard
    freeness criterion for minimal subshifts)."""

    closure_checked_to: int
    antipalindrome_sup: int
    verdict: str  # pass | fail | inconclusive
    witnesses: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "closure_checked_to": self.closure_checked_to,
            "antipalindrome_sup": self.antipalindrome_sup,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


def freeness_certificate(oracle: LanguageOracle) -> FreenessCertificate:
    """Build the freeness certificate off a saturated oracle.

    The verdict is "pass" when closure holds up to length 8 and no
    length-8 anti-palindromic factor exists, "inconclusive" when the
    oracle is not saturated to length 8, and "fail" otherwise.
    """
    check_to = 8
    if oracle.max_len < check_to:
        raise DomainError("oracle must cover factors up to length 8")
    if not oracle.saturated_to(check_to):
        bad = next(ell for ell in range(1, check_to + 1) if not oracle.is_saturated(ell))
        return FreenessCertificate(
            closure_checked_to=check_to,
            antipalindrome_sup=0,
            verdict="inconclusive",
            witnesses={"unsaturated_length": bad},
        )
    closure = check_closure_under_antireversal(oracle, check_to)
    counts = {}
    examples = {}
    for ell in range(2, check_to + 1, 2):
        aps = sorted(
            c for c in oracle.factor_codes(ell) if c == anti_reverse_code(c, ell)
        )
        counts[ell] = len(aps)
        if aps:
            examples[ell] = [str(code_to_word(c, ell)) for c in aps]
    sup = max((ell for ell, c in counts.items() if c > 0), default=0)
    if closure.status == "pass" and counts[check_to] == 0:
        return FreenessCertificate(
            closure_checked_to=check_to,
            antipalindrome_sup=sup,
            verdict="pass",
            witnesses={"antipalindrome_counts": counts},
        )
    return FreenessCertificate(
        closure_checked_to=check_to,
        antipalindrome_sup=sup,
        verdict="fail",
        witnesses={
            "closure": closure.status,
            "closure_witness": closure.witness,
            "antipalindrome_counts": counts,
            "length_8_examples": examples.get(check_to, [])[:4],
        },
    )


def _compile_pattern(pat: str):
    """A 7-symbol pattern with free slots 'x'/'y' becomes a (mask, value)
    pair over window codes (first symbol in the least significant bit)."""
    mask = value = 0
    for j, ch in enumerate(pat):
        if ch in "xy":
            continue
        mask |= 1 << j
        value |= int(ch) << j
    return mask, value


# the eight 7-window shapes produced by the period-4 block structure
# "110 . 100 ." of the infinite word, split by offset parity
EVEN_WINDOW_PATTERNS = ("110x100", "0x100y1", "100x110", "0x110y1")
ODD_WINDOW_PATTERNS = ("10x100y", "x100y11", "00x110y", "x110y10")


def parity_class_separation(K: int, generation: int) -> CheckReport:
    """Even-offset and odd-offset 7-windows never coincide.

    Checks, for all offsets up to K: (a) the set of 7-windows at even
    positions is disjoint from the set at odd positions, and (b) every
    even window matches one of the four even patterns and every odd
    window one of the four odd patterns.
    """
    if K < 0:
        raise DomainError("K must be non-negative")
    n_len = 2 ** (generation + 1) - 1
    if 2 * K + 8 > n_len:
        raise DomainError("generation too small for the requested K")
    watch = Stopwatch()
    arr = pf_word(generation).to_array()
    codes = window_codes(arr, 7)
    even = codes[0 : 2 * K + 1 : 2]
    odd = codes[1 : 2 * K + 2 : 2]
    params = {"K": K, "generation": generation}
    certifies = "even and odd 7-windows are disjoint and match their pattern families"

    even_set, odd_set = set(even.tolist()), set(odd.tolist())
    clash = even_set & odd_set
    if clash:
        c = min(clash)
        k = int(np.nonzero(even == c)[0][0])
        ell = int(np.nonzero(odd == c)[0][0])
        return CheckReport(
            check="dihedral.parity-separation",
            status="fail",
            params=params,
            witness={"k": k, "l": ell, "window": str(code_to_word(c, 7))},
            elapsed_ms=watch.ms,
            certifies=certifies,
        )

    for name, vals, patterns in (
        ("even", even, EVEN_WINDOW_PATTERNS),
        ("odd", odd, ODD_WINDOW_PATTERNS),
    ):
        pairs = [_compile_pattern(p) for p in patterns]
        ok = np.zeros(vals.shape, dtype=bool)
        for mask, value in pairs:
            ok |= (vals & mask) == value
        if not ok.all():
            i = int(np.argmin(ok))
            return CheckReport(
                check="dihedral.parity-separation",
                status="fail",
                params=params,
                witness={
                    "family": name,
                    "offset_index": i,
                    "window": str(code_to_word(int(vals[i]), 7)),
                },
                elapsed_ms=watch.ms,
                certifies=certifies,
            )
    return CheckReport(
        check="dihedral.parity-separation",
        status="pass",
        params=params,
        elapsed_ms=watch.ms,
        certifies=certifies,
    )
