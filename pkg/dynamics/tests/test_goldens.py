import tempfile
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase

from dynamics.exceptions import ConfigError, ParseError
from dynamics.goldens import Golden, golden_name, load_goldens, write_goldens
from dynamics.speedup import JumpFunction


class GoldenTests(SimpleTestCase):
    def test_committed_goldens(self):
        goldens = load_goldens()
        self.assertEqual(set(goldens), {"fibonacci/base", "fibonacci/constant2", "fibonacci/constant3"})
        self.assertEqual(goldens["fibonacci/base"].bound, Fraction(34, 13))
        self.assertEqual(goldens["fibonacci/constant2"].bound, Fraction(72, 11))
        for golden in goldens.values():
            self.assertEqual((golden.n_from, golden.n_max, golden.window), (10, 15, 100000))

    def test_names(self):
        self.assertEqual(golden_name("fibonacci"), "fibonacci/base")
        self.assertEqual(golden_name("fibonacci", JumpFunction.constant_jump(2)), "fibonacci/constant2")

    def test_write_then_load(self):
        golden = Golden("even/base", Fraction(7, 2), 1, 8, 500, "frozen")
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "nested" / "goldens.csv"
            write_goldens({golden.name: golden}, path)
            self.assertEqual(load_goldens(path), {golden.name: golden})

    def test_comment_lines_skipped(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "goldens.csv"
            path.write_text("# frozen by hand\nname,bound,n_from,n_max,window,source\nx/base,5/2,1,4,100,\n")
            self.assertEqual(load_goldens(path)["x/base"].bound, Fraction(5, 2))

    def test_bad_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "goldens.csv"
            with self.assertRaises(ConfigError):
                load_goldens(path)
            path.write_text("name,bound,n_from,n_max,window,source\nx/base,lots,1,4,100,\n")
            with self.assertRaises(ParseError):
                load_goldens(path)
