"""
Generators for the shift families the workbench scans: primitive
substitution shifts (Fibonacci, Thue-Morse, anything read from a rule file),
Sturmian shifts through mechanical words, and exact word-complexity.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy

from dynamics.exceptions import (
    InvalidSturmianSpec,
    InvalidSubstitution,
    NotSelfProlongable,
    ParseError,
)
from dynamics.words import Alphabet, OrbitSegment, Word, stable_factor_codes

logger = logging.getLogger(__name__)

FIBONACCI_RULES = "0 -> 01\n1 -> 0\n"
THUE_MORSE_RULES = "0 -> 01\n1 -> 10\n"


# ----------------------------------------------------------
# 1. SUBSTITUTIONS
# ----------------------------------------------------------

@dataclass(frozen=True)
class Substitution:
    alphabet: Alphabet
    images: tuple
    seed: str = None

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.alphabet):
            raise InvalidSubstitution(f"{len(images)} images for {len(self.alphabet)} symbols")
        for image in images:
            if image.alphabet != self.alphabet:
                raise InvalidSubstitution(f"image {image} is over a different alphabet")
        if self.seed is not None and self.seed not in self.alphabet:
            raise InvalidSubstitution(f"seed {self.seed!r} not in alphabet")
        if not self.seeds():
            raise InvalidSubstitution("no symbol a has an image beginning with a")

    def image(self, symbol):
        return self.images[self.alphabet.index(symbol)]

    def seeds(self):
        """Self-prolongable symbols, in alphabet order."""
        return [s for i, s in enumerate(self.alphabet.symbols) if self.images[i].letters[0] == i]

    def apply(self, codes):
        table = [image.letters for image in self.images]
        return b"".join(table[c] for c in codes)

    def incidence_matrix(self):
        """M[i, j] = number of occurrences of letter i in the image of letter j."""
        size = len(self.alphabet)
        matrix = numpy.zeros((size, size), dtype=numpy.int64)
        for j, image in enumerate(self.images):
            for i in image.letters:
                matrix[i, j] += 1
        return matrix


class Primitivity(NamedTuple):
    primitive: bool
    power: int


def fixed_point_prefix(sub, length, seed=None):
    """First ``length`` letters of the fixed point lim chi^k(seed)."""
    seed = seed if seed is not None else (sub.seed or sub.seeds()[0])
    index = sub.alphabet.index(seed)
    if sub.images[index].letters[0] != index:
        raise NotSelfProlongable(f"image of seed {seed!r} does not begin with {seed!r}")
    if length < 1:
        raise InvalidSubstitution(f"prefix length must be positive, got {length}")
    current = bytes([index])
    while len(current) < length:
        grown = sub.apply(current)
        if len(grown) == len(current):
            raise NotSelfProlongable(f"iterates of seed {seed!r} stop growing at length {len(current)}")
        current = grown
    logger.debug("fixed point prefix of length %d from seed %s", length, seed)
    return OrbitSegment(Word(sub.alphabet, current[:length]))


def primitivity_check(sub):
    """Smallest k <= (|A|-1)^2 + 1 with M^k entrywise positive, if any."""
    pattern = (sub.incidence_matrix() > 0).astype(numpy.int64)
    bound = (len(sub.alphabet) - 1) ** 2 + 1
    power = pattern.copy()
    for k in range(1, bound + 1):
        if (power > 0).all():
            return Primitivity(True, k)
        power = ((power @ pattern) > 0).astype(numpy.int64)
    return Primitivity(False, None)


_RULE = re.compile(r"^\s*(\S+)\s*->\s*(\S.*?)\s*$")


def parse_substitution(text, seed=None):
    """Read ``symbol -> image`` rules; ``#`` starts a comment.

    The seed is the first self-prolongable rule unless ``seed`` is given.
    """
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _RULE.match(line)
        if not match:
            raise ParseError(f"line {lineno}: expected 'symbol -> image', got {raw!r}")
        rules.append(match.groups())
    if not rules:
        raise ParseError("substitution file has no rules")
    alphabet = Alphabet(tuple(symbol for symbol, _ in rules))
    images = []
    for symbol, image in rules:
        tokens = alphabet.tokens(image) if "," in image or alphabet.single_char else image.split()
        images.append(Word(alphabet, bytes(alphabet.index(t) for t in tokens)))
    sub = Substitution(alphabet, tuple(images), seed)
    if sub.seed is None:
        sub = Substitution(alphabet, sub.images, sub.seeds()[0])
    return sub


def format_substitution(sub):
    return "".join(f"{s} -> {sub.images[i].text}\n" for i, s in enumerate(sub.alphabet.symbols))


def fibonacci():
    return parse_substitution(FIBONACCI_RULES)


def thue_morse():
    return parse_substitution(THUE_MORSE_RULES)


# ----------------------------------------------------------
# 2. STURMIAN SHIFTS
# ----------------------------------------------------------

@dataclass(frozen=True)
class SturmianSpec:
    """alpha = [0; a1, ..., ak] truncated, intercept beta in [0, 1)."""

    quotients: tuple
    intercept: Fraction = Fraction(0)

    def __post_init__(self):
        quotients = tuple(int(a) for a in self.quotients)
        object.__setattr__(self, "quotients", quotients)
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        if not quotients or any(a < 1 for a in quotients):
            raise InvalidSturmianSpec(f"partial quotients must be positive integers, got {quotients}")
        if not 0 <= self.intercept < 1:
            raise InvalidSturmianSpec(f"intercept {self.intercept} not in [0, 1)")

    @property
    def alpha(self):
        value = Fraction(0)
        for a in reversed(self.quotients):
            value = 1 / (a + value)
        return value


BINARY = Alphabet(("0", "1"))


def mechanical_prefix(sturmian, length):
    """s_n = floor((n+1)alpha + beta) - floor(n alpha + beta), exactly."""
    alpha, beta = sturmian.alpha, sturmian.intercept
    den = alpha.denominator * beta.denominator
    a = alpha.numerator * beta.denominator
    b = beta.numerator * alpha.denominator
    letters = bytes((((n + 1) * a + b) // den) - ((n * a + b) // den) for n in range(length))
    return OrbitSegment(Word(BINARY, letters))


def parse_sturmian(text):
    """``sturmian:1,1,1@1/3`` or ``1,1,1@1/3``; the intercept is optional."""
    body = text.split(":", 1)[1] if text.startswith("sturmian:") else text
    quotients, _, intercept = body.partition("@")
    try:
        return SturmianSpec(
            tuple(int(a) for a in quotients.split(",") if a.strip()),
            Fraction(intercept.strip() or 0),
        )
    except ValueError as exc:
        raise InvalidSturmianSpec(f"cannot read sturmian shift {text!r}: {exc}") from exc


# ----------------------------------------------------------
# 3. WORD COMPLEXITY
# ----------------------------------------------------------

@dataclass(frozen=True)
class ComplexityProfile:
    counts: dict

    def __getitem__(self, n):
        return self.counts[n]

    def rows(self):
        return sorted(self.counts.items())


def complexity(segment, n_max):
    counts = {n: len(stable_factor_codes(segment, n)) for n in range(1, n_max + 1)}
    logger.debug("complexity on window %d: %s", len(segment), counts)
    return ComplexityProfile(counts)


def balance_profile(segment, n_max):
    """Per n, the spread between the largest and smallest count of the
    second letter over length-n factors. Balanced words keep every spread <= 1."""
    spreads = {}
    for n in range(1, n_max + 1):
        counts = {factor.count(1) for factor in stable_factor_codes(segment, n)}
        spreads[n] = max(counts) - min(counts)
    return spreads
