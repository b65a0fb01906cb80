"""
Alphabets, finite words and orbit segments.

Symbols are interned to small integer indices and every word stores its
letters as ``bytes``, so scans are plain byte-string operations whatever the
symbols look like. Windows never wrap: a query past either end of an
:class:`OrbitSegment` raises :class:`OutOfWindow`.
"""
import logging
from dataclasses import dataclass, field

from dynamics.exceptions import AlphabetMismatch, InvalidWord, OutOfWindow, WindowTooShort

logger = logging.getLogger(__name__)

MAX_SYMBOLS = 256
FORBIDDEN_SYMBOL_CHARS = frozenset(" \t\r\n,#")


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InvalidWord("alphabet must not be empty")
        if len(set(symbols)) != len(symbols):
            raise InvalidWord(f"alphabet has duplicate symbols: {symbols}")
        if len(symbols) > MAX_SYMBOLS:
            raise InvalidWord(f"alphabet has {len(symbols)} symbols, at most {MAX_SYMBOLS} supported")
        for s in symbols:
            if not s or FORBIDDEN_SYMBOL_CHARS & set(s):
                raise InvalidWord(f"invalid symbol {s!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    @property
    def single_char(self):
        return all(len(s) == 1 for s in self.symbols)

    def index(self, symbol):
        try:
            return self._index[symbol]
        except KeyError:
            raise InvalidWord(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def tokens(self, text):
        """Split serialized word text into symbols."""
        text = text.strip()
        if "," in text:
            return [t.strip() for t in text.split(",")]
        if self.single_char:
            return list(text)
        return [text]

    def parse(self, text):
        return Word(self, bytes(self.index(t) for t in self.tokens(text)))

    @classmethod
    def numbered(cls, size):
        """The alphabet {1..size}, used for derived sequences."""
        return cls(tuple(str(i) for i in range(1, size + 1)))

    @classmethod
    def of_text(cls, text):
        """Sorted alphabet of the symbols occurring in ``text``."""
        tokens = [t.strip() for t in text.split(",")] if "," in text else list(text.strip())
        return cls(tuple(sorted(set(tokens))))


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: bytes

    def __post_init__(self):
        letters = bytes(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InvalidWord("the empty word is not a word")
        if max(letters) >= len(self.alphabet):
            raise InvalidWord(f"letter index {max(letters)} outside alphabet of size {len(self.alphabet)}")

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(self.alphabet, self.letters[key])
        return self.letters[key]

    def __add__(self, other):
        _same_alphabet(self.alphabet, other.alphabet)
        return Word(self.alphabet, self.letters + other.letters)

    def __str__(self):
        return self.text

    @property
    def symbols(self):
        return tuple(self.alphabet.symbols[i] for i in self.letters)

    @property
    def text(self):
        """Serialized form: plain text, comma-separated for multi-character symbols."""
        sep = "" if self.alphabet.single_char else ","
        return sep.join(self.symbols)

    @property
    def label(self):
        """Compact form used as a vertex or edge label for blocks."""
        sep = "" if self.alphabet.single_char else "."
        return sep.join(self.symbols)

    @classmethod
    def parse(cls, alphabet, text):
        return alphabet.parse(text)


@dataclass(frozen=True)
class OrbitSegment:
    """A finite window of a bi-infinite sequence; ``origin`` is the ambient
    index of position 0."""

    word: Word
    origin: int = field(default=0)

    @property
    def alphabet(self):
        return self.word.alphabet

    @property
    def codes(self):
        return self.word.letters

    @property
    def text(self):
        return self.word.text

    def __len__(self):
        return len(self.word)

    def _check(self, start, stop):
        if start < 0 or stop > len(self) or start > stop:
            raise OutOfWindow(f"range [{start}, {stop}) outside window of length {len(self)}")

    def letter(self, i):
        self._check(i, i + 1)
        return self.codes[i]

    def slice(self, start, stop):
        self._check(start, stop)
        return self.codes[start:stop]

    def factor(self, start, length):
        return Word(self.alphabet, self.slice(start, start + length))

    def window(self, start, stop):
        self._check(start, stop)
        return OrbitSegment(Word(self.alphabet, self.codes[start:stop]), self.origin + start)

    def prefix(self, length):
        return self.window(0, length)

    def first_half(self):
        return self.prefix(max(1, len(self) // 2))

    @classmethod
    def from_text(cls, text, alphabet=None, origin=0):
        alphabet = alphabet or Alphabet.of_text(text)
        return cls(alphabet.parse(text), origin)


def _same_alphabet(a, b):
    if a != b:
        raise AlphabetMismatch(f"alphabets differ: {a.symbols} vs {b.symbols}")


def occurrences(segment, w):
    """All start indices of ``w`` in the window, overlapping ones included."""
    _same_alphabet(segment.alphabet, w.alphabet)
    if len(w) > len(segment):
        raise OutOfWindow(f"word of length {len(w)} longer than window of length {len(segment)}")
    codes, needle = segment.codes, w.letters
    found = []
    i = codes.find(needle)
    while i != -1:
        found.append(i)
        i = codes.find(needle, i + 1)
    return found


def factor_codes(codes, n):
    """Distinct length-n factors of a byte string."""
    return {codes[i:i + n] for i in range(len(codes) - n + 1)}


def subwords(segment, n):
    if n < 1 or n > len(segment):
        raise OutOfWindow(f"factor length {n} out of range for window of length {len(segment)}")
    alphabet = segment.alphabet
    return frozenset(Word(alphabet, f) for f in factor_codes(segment.codes, n))


def stable_factor_codes(segment, n):
    """Length-n factors of the window, certified by window doubling.

    The factor set of the first half must already equal that of the whole
    window, otherwise :class:`WindowTooShort` names ``n``.
    """
    half = len(segment) // 2
    if n < 1 or n > half:
        raise WindowTooShort(f"window of length {len(segment)} too short for n={n}", n=n)
    full = factor_codes(segment.codes, n)
    if len(factor_codes(segment.codes[:half], n)) != len(full):
        logger.warning("factor set for n=%d not stabilized on window %d", n, len(segment))
        raise WindowTooShort(f"factor set for n={n} not stabilized on window of length {len(segment)}", n=n)
    return full
