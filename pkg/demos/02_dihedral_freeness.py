# The dihedral action: the shift plus the anti-reversal involution act on
# the subshift generated by the folded word.  This demo builds the finite
# certificates behind freeness of that action and the even/odd split.
#
#     python demos/02_dihedral_freeness.py

import numpy as np

from pfkit import Word
from pfkit.dihedral import (
    LanguageOracle,
    check_closure_under_antireversal,
    freeness_certificate,
    left_extend,
    parity_class_separation,
)
from pfkit.paperfold import antipalindrome_census, pf_word

# An oracle answers exact factor-language membership against a stored
# prefix, and tracks whether the factor sets have stabilised (saturation)
# so that answers speak for the infinite word.
oracle = LanguageOracle.from_generation(14, 16)
print("oracle over generation 14, saturated to 16:", oracle.saturated_to(16))

# Closure under anti-reversal is what makes the involution preserve the
# subshift in the first place.
closure = check_closure_under_antireversal(oracle, 16)
print("closure under anti-reversal:", closure.status)

# Anti-palindromic factors would be fixed windows of the flipped shift;
# the census shows they stop at length 6.
census = antipalindrome_census(14, 8)
print("anti-palindromic factor counts:", census.counts, "| saturated:", census.saturated)

cert = freeness_certificate(LanguageOracle.from_generation(14, 8))
print("freeness certificate:", cert.verdict, "| largest anti-palindrome:", cert.antipalindrome_sup)

# Negative control: a random word is flooded with length-8 anti-palindromes.
rng = np.random.default_rng(42)
noise = Word.from_array(rng.integers(0, 2, size=2**16).astype(np.uint8))
noisy_cert = freeness_certificate(LanguageOracle(noise, 8))
print(
    "random-word control:",
    noisy_cert.verdict,
    "| length-8 anti-palindromes:",
    noisy_cert.witnesses["antipalindrome_counts"][8],
)

# The one-sided word extends to a bi-infinite point of the subshift; the
# construction below grows it to the left, letter by letter, keeping every
# window inside the language.
extended = left_extend(LanguageOracle.from_generation(16, 64), pf_word(3), steps=8, horizon=32)
print("left extension of t(3) by 8 letters:", extended)

# Finally, 7-windows at even offsets can never equal 7-windows at odd
# offsets; that separation splits the subshift into two clopen halves
# swapped by the shift.
parity = parity_class_separation(50_000, 17)
print("even/odd 7-window separation:", parity.status)
