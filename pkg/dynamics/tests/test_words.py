from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from dynamics.exceptions import AlphabetMismatch, InvalidWord, OutOfWindow, WindowTooShort
from dynamics.shiftspaces import fibonacci, fixed_point_prefix
from dynamics.words import Alphabet, OrbitSegment, Word, occurrences, stable_factor_codes, subwords

BINARY = Alphabet(("0", "1"))


class AlphabetTests(SimpleTestCase):
    def test_rejects_duplicate_symbols(self):
        with self.assertRaises(InvalidWord):
            Alphabet(("0", "0"))

    def test_rejects_separator_in_symbol(self):
        with self.assertRaises(InvalidWord):
            Alphabet(("a,b",))

    def test_unknown_symbol(self):
        with self.assertRaises(InvalidWord):
            BINARY.parse("012")

    def test_numbered(self):
        self.assertEqual(Alphabet.numbered(3).symbols, ("1", "2", "3"))


class WordTests(SimpleTestCase):
    def test_single_char_text(self):
        word = BINARY.parse("1001")
        self.assertEqual(word.letters, bytes([1, 0, 0, 1]))
        self.assertEqual(word.text, "1001")
        self.assertEqual(word.label, "1001")

    def test_multi_char_symbols(self):
        alphabet = Alphabet(("ab", "c"))
        word = alphabet.parse("ab,c,ab")
        self.assertEqual(word.symbols, ("ab", "c", "ab"))
        self.assertEqual(word.text, "ab,c,ab")
        self.assertEqual(word.label, "ab.c.ab")

    def test_empty_word(self):
        with self.assertRaises(InvalidWord):
            Word(BINARY, b"")

    def test_concatenation_needs_same_alphabet(self):
        with self.assertRaises(AlphabetMismatch):
            BINARY.parse("0") + Alphabet(("0", "2")).parse("2")

    def test_slice_is_word(self):
        self.assertEqual(BINARY.parse("0110")[1:3].text, "11")


class OrbitSegmentTests(SimpleTestCase):
    def setUp(self):
        self.segment = fixed_point_prefix(fibonacci(), 26)

    def test_occurrences_of_1001(self):
        self.assertEqual(occurrences(self.segment, BINARY.parse("1001")), [1, 6, 9, 14, 19, 22])

    def test_overlapping_occurrences(self):
        segment = OrbitSegment.from_text("aaaa")
        self.assertEqual(occurrences(segment, segment.alphabet.parse("aa")), [0, 1, 2])

    def test_out_of_window(self):
        with self.assertRaises(OutOfWindow):
            self.segment.letter(26)
        with self.assertRaises(OutOfWindow):
            self.segment.factor(24, 3)

    def test_window_keeps_origin(self):
        window = self.segment.window(5, 10)
        self.assertEqual(window.origin, 5)
        self.assertEqual(window.text, "01001")

    def test_subwords(self):
        self.assertEqual({w.text for w in subwords(self.segment, 2)}, {"00", "01", "10"})

    def test_stabilization_names_n(self):
        with self.assertRaises(WindowTooShort) as ctx:
            stable_factor_codes(self.segment, 20)
        self.assertEqual(ctx.exception.n, 20)

    @settings(deadline=None, max_examples=50)
    @given(text=st.text(alphabet="01", min_size=5, max_size=60), needle=st.text(alphabet="01", min_size=1, max_size=4))
    def test_occurrences_match_naive_scan(self, text, needle):
        segment = OrbitSegment.from_text(text, BINARY)
        naive = [i for i in range(len(text) - len(needle) + 1) if text.startswith(needle, i)]
        self.assertEqual(occurrences(segment, BINARY.parse(needle)), naive)
