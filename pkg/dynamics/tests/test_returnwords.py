from django.test import SimpleTestCase

from dynamics.exceptions import WindowTooShort
from dynamics.lr import recurrence_profile
from dynamics.returnwords import derived_gap_profile, derived_segment, return_bound_check, return_words
from dynamics.shiftspaces import fibonacci, fixed_point_prefix, parse_substitution, thue_morse


class ReturnWordTests(SimpleTestCase):
    def setUp(self):
        self.segment = fixed_point_prefix(fibonacci(), 2000)
        self.system = return_words(self.segment, self.segment.alphabet.parse("1001"))

    def test_return_words_of_1001(self):
        self.assertEqual([r.text for r in self.system.returns], ["10010", "100"])

    def test_derived_sequence_starts_like_the_fibonacci_word(self):
        self.assertEqual(self.system.derived[:7], (1, 2, 1, 1, 2, 1, 2))
        self.assertEqual(derived_segment(self.system).text[:7], "1211212")

    def test_reconstruction(self):
        last = self.system.start + len(self.system.reconstruction())
        self.assertEqual(self.system.reconstruction(), self.segment.codes[self.system.start:last])
        self.assertEqual(self.segment.codes[last:last + 4], bytes([1, 0, 0, 1]))

    def test_every_return_is_followed_by_w(self):
        for r in self.system.returns:
            self.assertTrue((r + self.system.base).text.startswith("1001"))
            self.assertNotIn("1001", (r + self.system.base).text[1:-1])

    def test_single_letter_base(self):
        system = return_words(self.segment, self.segment.alphabet.parse("0"))
        self.assertEqual([r.text for r in system.returns], ["01", "0"])
        self.assertEqual(system.derived[:5], (1, 2, 1, 1, 2))

    def test_constant_sequence(self):
        segment = fixed_point_prefix(parse_substitution("a -> aa\n"), 32)
        system = return_words(segment, segment.alphabet.parse("a"))
        self.assertEqual([r.text for r in system.returns], ["a"])
        self.assertEqual(set(system.derived), {1})
        self.assertEqual(set(derived_segment(system).text), {"1"})

    def test_too_few_occurrences(self):
        segment = fixed_point_prefix(fibonacci(), 8)
        with self.assertRaises(WindowTooShort):
            return_words(segment, segment.alphabet.parse("1001"))

    def test_bound_check(self):
        verdict = return_bound_check(self.system, 3)
        self.assertTrue(verdict.holds)
        self.assertEqual((verdict.count, verdict.count_bound), (2, 48))
        self.assertEqual((verdict.longest, verdict.length_bound), (5, 12))
        self.assertFalse(return_bound_check(self.system, 1).length_holds)

    def test_thue_morse_bound_with_its_own_constant(self):
        segment = fixed_point_prefix(thue_morse(), 4096)
        system = return_words(segment, segment.alphabet.parse("010"))
        self.assertTrue(return_bound_check(system, recurrence_profile(segment, 3).maximum()).holds)

    def test_derived_gaps_are_bounded(self):
        self.assertEqual(derived_gap_profile(self.system), {1: 2, 2: 3})
