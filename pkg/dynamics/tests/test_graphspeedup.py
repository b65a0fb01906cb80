from types import SimpleNamespace

from django.test import SimpleTestCase

from dynamics.checks import check_graph_oracle, check_pruning
from dynamics.exceptions import DegeneratePresentation, ParseError
from dynamics.graphspeedup import (
    block_presentation,
    format_presentation,
    language_of_presentation,
    oracle_language,
    parse_presentation,
    prune_essential,
    random_walk,
    sft_as_sofic,
    speedup_sft,
    speedup_sofic,
    to_dot,
)
from dynamics.speedup import JumpFunction

GOLDEN_MEAN = "vertex 0\nvertex 1\nedge 0 0\nedge 0 1\nedge 1 0\n"
FULL_TWO = "edge 0 0\nedge 0 1\nedge 1 0\nedge 1 1\n"
EVEN = "edge a a 1\nedge a b 0\nedge b a 0\n"


def texts(language):
    return {"".join(labels) for labels in language}


class PresentationTests(SimpleTestCase):
    def test_golden_mean_language(self):
        language = language_of_presentation(parse_presentation(GOLDEN_MEAN), 3)
        self.assertEqual(texts(language), {"000", "001", "010", "100", "101"})

    def test_full_shift_language(self):
        self.assertEqual(len(language_of_presentation(parse_presentation(FULL_TWO), 5)), 32)

    def test_even_shift_language(self):
        language = texts(language_of_presentation(parse_presentation(EVEN), 3))
        self.assertEqual(language, {"111", "110", "100", "101", "011", "001", "010", "000"} - {"101"})

    def test_pruning(self):
        presentation = parse_presentation(GOLDEN_MEAN + "edge 1 2\nvertex 3\n")
        self.assertEqual(sorted(presentation.graph), ["0", "1"])
        self.assertEqual(prune_essential(presentation.graph).edges, presentation.graph.edges)

    def test_no_bi_infinite_path(self):
        with self.assertRaises(DegeneratePresentation):
            parse_presentation("edge 0 1\n")

    def test_mixed_edges(self):
        with self.assertRaises(ParseError):
            parse_presentation("edge 0 0 a\nedge 0 1\n")

    def test_round_trip(self):
        text = format_presentation(parse_presentation(EVEN))
        self.assertEqual(format_presentation(parse_presentation(text)), text)
        self.assertEqual(format_presentation(parse_presentation(GOLDEN_MEAN)), GOLDEN_MEAN)

    def test_dot(self):
        self.assertIn("digraph", to_dot(parse_presentation(GOLDEN_MEAN)))

    def test_random_walk_stays_admissible(self):
        presentation = parse_presentation(GOLDEN_MEAN)
        segment = random_walk(presentation, 500, seed=7)
        self.assertEqual(len(segment), 500)
        self.assertNotIn("11", segment.text)
        self.assertEqual(segment.text, random_walk(presentation, 500, seed=7).text)


class BlockPresentationTests(SimpleTestCase):
    def test_full_shift_two_blocks(self):
        blocks = block_presentation(parse_presentation(FULL_TWO), 2)
        self.assertEqual(blocks.graph.number_of_nodes(), 4)
        self.assertEqual(blocks.graph.number_of_edges(), 8)

    def test_golden_mean_two_blocks(self):
        blocks = block_presentation(parse_presentation(GOLDEN_MEAN), 2)
        self.assertEqual(sorted(blocks.graph), ["00", "01", "10"])
        self.assertEqual(
            sorted(blocks.graph.edges),
            [("00", "00"), ("00", "01"), ("01", "10"), ("10", "00"), ("10", "01")],
        )

    def test_one_block_is_identity(self):
        sft = parse_presentation(GOLDEN_MEAN)
        blocks = block_presentation(sft, 1)
        self.assertEqual(sorted(blocks.graph.edges), sorted(sft.graph.edges))


class SpeedupPresentationTests(SimpleTestCase):
    def test_golden_mean_matches_oracle(self):
        sft, jump = parse_presentation(GOLDEN_MEAN), JumpFunction.constant_jump(2)
        sped = speedup_sft(sft, jump)
        self.assertEqual(sped.block_length, 5)
        for n in range(1, 9):
            self.assertEqual(language_of_presentation(sped, n), oracle_language(sft, jump, n))

    def test_full_shift_matches_oracle(self):
        sft, jump = parse_presentation(FULL_TWO), JumpFunction.constant_jump(2)
        sped = speedup_sft(sft, jump)
        for n in range(1, 5):
            language = language_of_presentation(sped, n)
            self.assertEqual(len(language), 32 * 4 ** (n - 1))
            self.assertEqual(language, oracle_language(sft, jump, n))

    def test_more_blocks_than_a_byte_alphabet(self):
        sft, jump = parse_presentation(FULL_TWO), JumpFunction.constant_jump(4)
        sped = speedup_sft(sft, jump)
        self.assertEqual(sped.graph.number_of_nodes(), 512)
        language = language_of_presentation(sped, 1)
        self.assertEqual(len(language), 512)
        self.assertEqual(language, oracle_language(sft, jump, 1))

    def test_constant_one_keeps_the_language(self):
        sft = parse_presentation(GOLDEN_MEAN)
        sped = speedup_sft(sft, JumpFunction.constant_jump(1))
        for n in range(1, 5):
            self.assertEqual(len(language_of_presentation(sped, n)), len(language_of_presentation(sft, n + 2)))

    def test_even_shift_matches_oracle(self):
        sofic, jump = parse_presentation(EVEN), JumpFunction.constant_jump(2)
        sped = speedup_sofic(sofic, jump)
        for n in range(1, 9):
            self.assertEqual(language_of_presentation(sped, n), oracle_language(sofic, jump, n))

    def test_sft_and_sofic_constructions_agree(self):
        sft, jump = parse_presentation(GOLDEN_MEAN), JumpFunction.constant_jump(3)
        as_sft = speedup_sft(sft, jump)
        as_sofic = speedup_sofic(sft_as_sofic(sft), jump)
        for n in range(1, 5):
            self.assertEqual(language_of_presentation(as_sft, n), language_of_presentation(as_sofic, n))


class PresentationCheckTests(SimpleTestCase):
    def context(self, text, k):
        shift = SimpleNamespace(presentation=parse_presentation(text))
        return SimpleNamespace(shift=shift, jump=JumpFunction.constant_jump(k), config=SimpleNamespace(nmax=6))

    def test_graph_oracle_on_sft_and_sofic(self):
        for text in (GOLDEN_MEAN, EVEN):
            passed, detail = check_graph_oracle(self.context(text, 2))
            self.assertTrue(passed, detail)
            self.assertIn("n <= 4", detail)

    def test_pruned_presentations_stay_pruned(self):
        passed, detail = check_pruning(self.context(GOLDEN_MEAN, 3))
        self.assertTrue(passed)
        self.assertEqual(detail, "2 presentations")
