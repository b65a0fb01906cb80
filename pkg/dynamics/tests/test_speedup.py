from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from dynamics.exceptions import InvalidJump, MissingJumpEntry, OrbitExit, ParseError
from dynamics.shiftspaces import fibonacci, fixed_point_prefix, parse_substitution
from dynamics.speedup import (
    JumpFunction,
    block_language,
    count_orbit_chains,
    ergodic_sum,
    first_return_jump,
    format_jump,
    inverse_landing,
    orbit_coloring,
    orbit_number,
    parse_jump,
    s_orbit,
    spattern_at,
    spatterns,
    speedup_complexity,
    validate_jump,
)

BAD_K0 = "K 0\n0 1\n1 2\n"


class JumpParsingTests(SimpleTestCase):
    def setUp(self):
        self.alphabet = fixed_point_prefix(fibonacci(), 10).alphabet

    def test_constant(self):
        jump = parse_jump("constant 3\n", self.alphabet)
        self.assertTrue(jump.is_constant)
        self.assertEqual(jump.p_max, 3)
        self.assertEqual(jump.radius, 0)

    def test_table(self):
        jump = parse_jump("# two values\nK 0\n0 1\n1 2\n", self.alphabet)
        self.assertEqual(jump.p_max, 2)
        self.assertEqual(format_jump(jump), BAD_K0)

    def test_bad_header(self):
        with self.assertRaises(ParseError):
            parse_jump("radius 1\n", self.alphabet)

    def test_wrong_word_length(self):
        with self.assertRaises(InvalidJump):
            parse_jump("K 1\n0 1\n", self.alphabet)

    def test_non_positive_constant(self):
        with self.assertRaises(InvalidJump):
            JumpFunction.constant_jump(0)


class ValidateJumpTests(SimpleTestCase):
    def setUp(self):
        self.segment = fixed_point_prefix(fibonacci(), 2000)

    def test_constant_jumps_are_homeomorphic(self):
        for k in (1, 2, 3):
            report = validate_jump(JumpFunction.constant_jump(k), self.segment)
            self.assertTrue(report.homeomorphic)
            self.assertEqual(report.p_max, k)

    def test_collision(self):
        report = validate_jump(parse_jump(BAD_K0, self.segment.alphabet), self.segment)
        self.assertTrue(report.total)
        self.assertFalse(report.injective)
        self.assertFalse(report.homeomorphic)
        self.assertEqual(report.checks[0].collision, (1, 2, 3))
        self.assertIn("  collision: indices 1 and 2 both land on 3", report.lines())

    def test_missing_entry(self):
        report = validate_jump(parse_jump("K 0\n0 1\n", self.segment.alphabet), self.segment)
        self.assertFalse(report.total)
        self.assertEqual(report.missing, ("1",))

    def test_missing_entry_on_use(self):
        jump = parse_jump("K 0\n0 1\n", self.segment.alphabet)
        with self.assertRaises(MissingJumpEntry):
            s_orbit(self.segment, jump, 0)

    def test_first_return_jump(self):
        jump = first_return_jump(self.segment, 3)
        self.assertTrue(validate_jump(jump, self.segment).homeomorphic)
        self.assertEqual(orbit_number(self.segment, jump), 2)

    def test_first_return_needs_radius(self):
        with self.assertRaises(InvalidJump):
            first_return_jump(self.segment, 2)


class OrbitTests(SimpleTestCase):
    def setUp(self):
        self.segment = fixed_point_prefix(fibonacci(), 2000)
        self.first_return = first_return_jump(self.segment, 3)

    def test_orbit_number_of_constant_jump(self):
        for k in (1, 2, 3):
            self.assertEqual(orbit_number(self.segment, JumpFunction.constant_jump(k)), k)

    def test_coloring_agrees_with_chain_walk(self):
        jump = first_return_jump(self.segment, 3)
        self.assertEqual(orbit_coloring(self.segment, jump).c, count_orbit_chains(self.segment, jump))

    def test_canonical_labels(self):
        coloring = orbit_coloring(fixed_point_prefix(fibonacci(), 100), JumpFunction.constant_jump(2))
        self.assertEqual(coloring.center, 49)
        self.assertEqual(coloring.label(1), 1)
        self.assertEqual(coloring.label(0), 2)
        self.assertEqual(coloring.chains[0][:3], (1, 3, 5))

    def test_s_orbit(self):
        self.assertEqual(s_orbit(self.segment, JumpFunction.constant_jump(2), 0)[:4], [0, 2, 4, 6])

    def test_ergodic_sums(self):
        jump = JumpFunction.constant_jump(3)
        self.assertEqual(ergodic_sum(self.segment, jump, 100, 4), 12)
        self.assertEqual(ergodic_sum(self.segment, jump, 100, 0), 0)
        self.assertEqual(ergodic_sum(self.segment, jump, 100, -2), -6)

    @settings(deadline=None, max_examples=100)
    @given(
        start=st.integers(min_value=900, max_value=1100),
        k=st.integers(min_value=-8, max_value=8),
        m=st.integers(min_value=-8, max_value=8),
    )
    def test_landing_additivity_for_first_return(self, start, k, m):
        jump = self.first_return
        after_k = ergodic_sum(self.segment, jump, start, k)
        self.assertEqual(
            ergodic_sum(self.segment, jump, start, k + m),
            after_k + ergodic_sum(self.segment, jump, start + after_k, m),
        )

    def test_inverse_landing(self):
        jump = JumpFunction.constant_jump(2)
        self.assertEqual(inverse_landing(self.segment, jump, 10), 8)
        with self.assertRaises(OrbitExit):
            inverse_landing(self.segment, jump, 1)

    def test_constant_sequence_has_one_class_per_step(self):
        segment = fixed_point_prefix(parse_substitution("a -> aa\n"), 64)
        self.assertEqual(orbit_number(segment, JumpFunction.constant_jump(2)), 2)


class SPatternTests(SimpleTestCase):
    def setUp(self):
        self.segment = fixed_point_prefix(fibonacci(), 4000)

    def test_spattern_at(self):
        pattern = spattern_at(self.segment, JumpFunction.constant_jump(2), 0, 3)
        self.assertEqual(pattern.spanned.text, "010010")
        self.assertEqual(pattern.offsets, (0, 2, 4))

    def test_spatterns_of_constant_two(self):
        patterns = spatterns(self.segment, JumpFunction.constant_jump(2), 2)
        self.assertEqual(len(patterns), 5)
        self.assertEqual({p.offsets for p in patterns}, {(0, 2)})
        self.assertEqual({len(p.spanned) for p in patterns}, {4})

    def test_speedup_complexity_bound(self):
        for k in (2, 3):
            result = speedup_complexity(self.segment, JumpFunction.constant_jump(k), 5)
            self.assertTrue(result.holds)
            self.assertEqual(result.constant, k)

    def test_speedup_complexity_bound_to_fifteen(self):
        for k in (2, 3):
            result = speedup_complexity(self.segment, JumpFunction.constant_jump(k), 15)
            self.assertTrue(result.holds)
            self.assertEqual([row.n for row in result.rows], list(range(1, 16)))

    def test_constant_two_counts(self):
        result = speedup_complexity(self.segment, JumpFunction.constant_jump(2), 5)
        self.assertEqual([result.profile[n] for n in range(1, 6)], [3, 5, 7, 9, 11])

    def test_block_language(self):
        pairs = block_language(self.segment, JumpFunction.constant_jump(1), 2, 1)
        self.assertEqual(pairs, {("0", "1"), ("1", "0"), ("0", "0")})

    def test_block_must_cover_radius(self):
        with self.assertRaises(InvalidJump):
            block_language(self.segment, first_return_jump(self.segment, 3), 2, 3)
