"""
Return words and derived sequences.

A return word R of w is a word such that Rw begins and ends with w and has no
other occurrence of w. Return words are numbered 1..N in order of first
occurrence in the window, never lexicographically.
"""
import logging
from dataclasses import dataclass

from dynamics.exceptions import InvalidWord, WindowTooShort
from dynamics.words import Alphabet, OrbitSegment, Word, occurrences

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReturnWordSystem:
    base: Word
    returns: tuple
    derived: tuple
    start: int

    def __post_init__(self):
        if not self.returns:
            raise InvalidWord("a return word system needs at least one return word")

    def reconstruction(self):
        """Concatenation R_{e_0} R_{e_1} ... of the derived sequence."""
        return b"".join(self.returns[e - 1].letters for e in self.derived)

    def lines(self):
        out = [f"base {self.base.text}"]
        out += [f"R{j} {word.text}" for j, word in enumerate(self.returns, 1)]
        out.append("derived " + " ".join(str(e) for e in self.derived))
        return out


def return_words(segment, w):
    starts = occurrences(segment, w)
    if len(starts) < 3:
        raise WindowTooShort(f"{w.text} occurs {len(starts)} times; at least 3 are needed")
    index, returns, derived = {}, [], []
    for left, right in zip(starts, starts[1:]):
        piece = segment.codes[left:right]
        if piece not in index:
            index[piece] = len(returns) + 1
            returns.append(Word(segment.alphabet, piece))
        derived.append(index[piece])
    logger.debug("%s has %d return words over %d returns", w.text, len(returns), len(derived))
    return ReturnWordSystem(w, tuple(returns), tuple(derived), starts[0])


@dataclass(frozen=True)
class BoundVerdict:
    count: int
    count_bound: object
    longest: int
    length_bound: object

    @property
    def count_holds(self):
        return self.count <= self.count_bound

    @property
    def length_holds(self):
        return self.longest <= self.length_bound

    @property
    def holds(self):
        return self.count_holds and self.length_holds


def return_bound_check(system, l_hat):
    """N <= L(L+1)^2 and max |R_j| <= L |w| for an empirical L."""
    return BoundVerdict(
        count=len(system.returns),
        count_bound=l_hat * (l_hat + 1) ** 2,
        longest=max(len(r) for r in system.returns),
        length_bound=l_hat * len(system.base),
    )


def derived_segment(system):
    alphabet = Alphabet.numbered(len(system.returns))
    return OrbitSegment(Word(alphabet, bytes(e - 1 for e in system.derived)))


def derived_gap_profile(system):
    """Largest gap, in derived letters, between reoccurrences of each return word."""
    last, gaps = {}, {}
    for position, e in enumerate(system.derived):
        if e in last:
            gaps[e] = max(gaps.get(e, 0), position - last[e])
        last[e] = position
    return {e: gaps.get(e) for e in range(1, len(system.returns) + 1)}
