"""
Jump functions and the speedup S = sigma^p on orbit segments.

A jump function is constant on centered (2K+1)-cylinders, so on a window it
becomes an array of jump values over the interior indices K <= i < L-K.
Everything here (landing maps, orbit colorings, S-patterns) is computed from
that array. Homeomorphism can only be certified on finite windows: every
verdict is checked on the first half of the window and on the whole window.
"""
import logging
import re
from dataclasses import dataclass, field

from networkx.utils import UnionFind

from dynamics.exceptions import (
    AlphabetMismatch,
    InsufficientMargin,
    InvalidJump,
    MissingJumpEntry,
    OrbitExit,
    ParseError,
    WindowTooShort,
)
from dynamics.shiftspaces import ComplexityProfile, complexity
from dynamics.words import Alphabet, Word, stable_factor_codes

logger = logging.getLogger(__name__)

WINDOW_NOTE = "injectivity and surjectivity are certified on orbit windows only"


# ----------------------------------------------------------
# 1. JUMP FUNCTIONS
# ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class JumpFunction:
    radius: int
    table: dict = field(default_factory=dict)
    constant: int = None
    alphabet: Alphabet = None

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidJump(f"radius must be non-negative, got {self.radius}")
        if self.constant is not None:
            if self.constant < 1:
                raise InvalidJump(f"constant jump must be positive, got {self.constant}")
            if self.radius != 0:
                raise InvalidJump("constant jumps have radius 0")
            object.__setattr__(self, "_codes", {})
            return
        if not self.table:
            raise InvalidJump("jump table is empty")
        codes = {}
        for word, value in self.table.items():
            if len(word) != 2 * self.radius + 1:
                raise InvalidJump(f"table word {word} has length {len(word)}, expected {2 * self.radius + 1}")
            if self.alphabet is not None and word.alphabet != self.alphabet:
                raise AlphabetMismatch(f"table word {word} is over a different alphabet")
            if value < 1:
                raise InvalidJump(f"jump value for {word} must be positive, got {value}")
            codes[word.letters] = int(value)
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", next(iter(self.table)).alphabet)
        object.__setattr__(self, "_codes", codes)

    @classmethod
    def constant_jump(cls, k):
        return cls(radius=0, constant=int(k))

    @property
    def is_constant(self):
        return self.constant is not None

    @property
    def p_max(self):
        return self.constant if self.is_constant else max(self._codes.values())

    @property
    def name(self):
        return f"constant{self.constant}" if self.is_constant else f"table-K{self.radius}"

    def value(self, codes, i):
        """Jump value at index i of a byte string; i needs margin K."""
        if self.is_constant:
            return self.constant
        key = codes[i - self.radius:i + self.radius + 1]
        try:
            return self._codes[key]
        except KeyError:
            raise MissingJumpEntry(Word(self.alphabet, key).text) from None

    def check_alphabet(self, segment):
        if self.alphabet is not None and self.alphabet != segment.alphabet:
            raise AlphabetMismatch(f"jump is over {self.alphabet.symbols}, segment over {segment.alphabet.symbols}")


def parse_jump(text, alphabet):
    """First line ``K <int>`` or ``constant <int>``, then ``<word> <int>`` lines."""
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise ParseError("jump file is empty")
    head = re.fullmatch(r"(K|constant)\s*:?\s*(\d+)", lines[0])
    if not head:
        raise ParseError(f"first line must be 'K <int>' or 'constant <int>', got {lines[0]!r}")
    if head.group(1) == "constant":
        if len(lines) > 1:
            raise ParseError("a constant jump takes no table lines")
        return JumpFunction.constant_jump(int(head.group(2)))
    radius = int(head.group(2))
    table = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise ParseError(f"expected '<word> <positive int>', got {line!r}")
        word = alphabet.parse(parts[0])
        if word in table:
            raise ParseError(f"duplicate table entry for {parts[0]}")
        table[word] = int(parts[1])
    return JumpFunction(radius=radius, table=table, alphabet=alphabet)


def format_jump(jump):
    if jump.is_constant:
        return f"constant {jump.constant}\n"
    rows = sorted((word.text, value) for word, value in jump.table.items())
    return f"K {jump.radius}\n" + "".join(f"{text} {value}\n" for text, value in rows)


def first_return_jump(segment, radius):
    """p(x) = first return time of x to the cylinder [x_0].

    Every centered (2K+1)-word must show a return of its central letter
    within its right half, so ``radius`` has to bound the letter return
    times.
    """
    table = {}
    for key in stable_factor_codes(segment, 2 * radius + 1):
        centre = key[radius]
        step = next((j for j in range(1, radius + 1) if key[radius + j] == centre), None)
        if step is None:
            raise InvalidJump(f"radius {radius} too small: no return inside {Word(segment.alphabet, key).text}")
        table[Word(segment.alphabet, key)] = step
    return JumpFunction(radius=radius, table=table, alphabet=segment.alphabet)


# ----------------------------------------------------------
# 2. LANDING MAPS
# ----------------------------------------------------------

@dataclass(frozen=True)
class LandingMap:
    length: int
    radius: int
    landings: tuple

    def interior(self, i):
        return self.radius <= i < self.length - self.radius

    def exits(self, i):
        return not self.interior(self.landings[i])


def jump_values(segment, jump):
    """Jump value per index; None outside the interior."""
    jump.check_alphabet(segment)
    codes, k = segment.codes, jump.radius
    values = [None] * len(segment)
    for i in range(k, len(segment) - k):
        values[i] = jump.value(codes, i)
    return values


def landing_map(segment, jump):
    values = jump_values(segment, jump)
    landings = tuple(None if v is None else i + v for i, v in enumerate(values))
    return LandingMap(len(segment), jump.radius, landings)


@dataclass(frozen=True)
class WindowCheck:
    window: int
    injective: bool
    surjective: bool
    collision: tuple = None
    orphan: int = None


@dataclass(frozen=True)
class JumpReport:
    total: bool
    missing: tuple
    p_max: int
    checks: tuple
    note: str = WINDOW_NOTE

    @property
    def injective(self):
        return bool(self.checks) and all(c.injective for c in self.checks)

    @property
    def surjective(self):
        return bool(self.checks) and all(c.surjective for c in self.checks)

    @property
    def homeomorphic(self):
        return self.total and self.injective and self.surjective

    def lines(self):
        out = [
            f"total: {'yes' if self.total else 'no'}",
            f"p_max: {self.p_max}",
        ]
        out += [f"missing: {word}" for word in self.missing]
        for check in self.checks:
            out.append(f"window {check.window}: injective={'yes' if check.injective else 'no'}"
                       f" surjective={'yes' if check.surjective else 'no'}")
            if check.collision:
                i, j, target = check.collision
                out.append(f"  collision: indices {i} and {j} both land on {target}")
            if check.orphan is not None:
                out.append(f"  index {check.orphan} is not the landing of exactly one predecessor")
        out.append(f"homeomorphic speedup: {'yes' if self.homeomorphic else 'no'}")
        out.append(f"note: {self.note}")
        return out


def _window_check(segment, jump, p_max):
    lmap = landing_map(segment, jump)
    k, length = jump.radius, len(segment)
    seen = {}
    collision = None
    predecessors = [0] * (length + p_max + 1)
    for i in range(k, length - k):
        target = lmap.landings[i]
        if target in seen and collision is None:
            collision = (seen[target], i, target)
        seen.setdefault(target, i)
        predecessors[target] += 1
    orphan = next((j for j in range(k + p_max, length - k) if predecessors[j] != 1), None)
    return WindowCheck(length, collision is None, orphan is None, collision, orphan)


def validate_jump(jump, segment):
    """Totality, p_max, injectivity and surjectivity on two window sizes."""
    jump.check_alphabet(segment)
    if jump.is_constant:
        p_max = jump.constant
        missing = ()
    else:
        observed = stable_factor_codes(segment, 2 * jump.radius + 1)
        missing = tuple(sorted(Word(segment.alphabet, key).text for key in observed if key not in jump._codes))
        present = [jump._codes[key] for key in observed if key in jump._codes]
        p_max = max(present) if present else 0
    if missing:
        logger.warning("jump is not total: %d centered words without a value", len(missing))
        return JumpReport(False, missing, p_max, ())
    checks = tuple(_window_check(window, jump, jump.p_max) for window in (segment.first_half(), segment))
    return JumpReport(True, (), p_max, checks)


def s_orbit(segment, jump, start):
    """Landing indices i_0 = start, i_{m+1} = i_m + p(i_m) while margin lasts."""
    k = jump.radius
    if not k <= start < len(segment) - k:
        raise InsufficientMargin(f"start {start} needs margin {k} inside window of length {len(segment)}")
    jump.check_alphabet(segment)
    codes, orbit, i = segment.codes, [], start
    while k <= i < len(segment) - k:
        orbit.append(i)
        i += jump.value(codes, i)
    return orbit


def inverse_landing(segment, jump, index):
    """The unique predecessor of ``index`` under S on the window."""
    k = jump.radius
    candidates = [
        i for i in range(max(k, index - jump.p_max), index)
        if i < len(segment) - k and i + jump.value(segment.codes, i) == index
    ]
    if not candidates:
        raise OrbitExit(f"no predecessor of {index} inside the window")
    if len(candidates) > 1:
        raise InvalidJump(f"indices {candidates} all land on {index}; jump is not injective")
    return candidates[0]


def ergodic_sum(segment, jump, start, k):
    """p_k at ``start``: sum of k jumps forward, or minus k jumps backward."""
    if k >= 0:
        orbit = s_orbit(segment, jump, start)
        if k < len(orbit):
            return orbit[k] - start
        if k == len(orbit):
            return orbit[-1] + jump.value(segment.codes, orbit[-1]) - start
        raise OrbitExit(f"S-orbit from {start} leaves the window before {k} steps")
    position = start
    for _ in range(-k):
        position = inverse_landing(segment, jump, position)
    return position - start


# ----------------------------------------------------------
# 3. ORBIT CLASSES
# ----------------------------------------------------------

@dataclass(frozen=True)
class OrbitColoring:
    """Labels 1..c per index (0 = unlabeled), numbered by first landing in
    the canonical central block of length p_max."""

    labels: tuple
    c: int
    center: int
    chains: tuple

    def label(self, i):
        if not 0 <= i < len(self.labels) or self.labels[i] == 0:
            raise OrbitExit(f"index {i} carries no orbit label in this window")
        return self.labels[i]


def orbit_coloring(segment, jump):
    lmap = landing_map(segment, jump)
    k, length, p_max = jump.radius, len(segment), jump.p_max
    forest = UnionFind()
    for i in range(k, length - k):
        target = lmap.landings[i]
        if lmap.interior(target):
            forest.union(i, target)
    center = max(k, length // 2 - p_max // 2)
    if center + p_max > length - k:
        raise WindowTooShort(f"window of length {length} has no central block of length {p_max}")
    root_label = {}
    for i in range(center, center + p_max):
        root_label.setdefault(forest[i], len(root_label) + 1)
    labels = [0] * length
    chains = [[] for _ in root_label]
    for i in range(k, length - k):
        label = root_label.get(forest[i], 0)
        labels[i] = label
        if label:
            chains[label - 1].append(i)
    return OrbitColoring(tuple(labels), len(root_label), center, tuple(tuple(c) for c in chains))


def count_orbit_chains(segment, jump):
    """Oracle: walk every S-chain forward from its first index and count them."""
    lmap = landing_map(segment, jump)
    k, length = jump.radius, len(segment)
    colors = [0] * length
    count = 0
    for i in range(k, length - k):
        if colors[i]:
            continue
        count += 1
        j = i
        while lmap.interior(j) and not colors[j]:
            colors[j] = count
            j = lmap.landings[j]
    return count


def orbit_number(segment, jump):
    """Number of S-orbits in one sigma-orbit, stable under window doubling."""
    counts = [orbit_coloring(window, jump).c for window in (segment.first_half(), segment)]
    if counts[0] != counts[1]:
        raise WindowTooShort(f"orbit number not stabilized: {counts[0]} on half window, {counts[1]} on full")
    oracle = count_orbit_chains(segment, jump)
    if oracle != counts[1]:
        raise InvalidJump(f"union-find finds {counts[1]} orbit classes, chain walk finds {oracle}; jump is not bijective")
    return counts[1]


# ----------------------------------------------------------
# 4. S-PATTERNS AND SPEEDUP COMPLEXITY
# ----------------------------------------------------------

@dataclass(frozen=True)
class SPattern:
    spanned: Word
    offsets: tuple


def spattern_at(segment, jump, start, n):
    """S-pattern of n steps from landing ``start``."""
    k = jump.radius
    orbit = s_orbit(segment, jump, start)
    if len(orbit) < n:
        raise OrbitExit(f"S-orbit from {start} leaves the window before {n} steps")
    end = orbit[n - 1] + jump.value(segment.codes, orbit[n - 1])
    spanned = segment.factor(start - k, end - start + 2 * k)
    return SPattern(spanned, tuple(i - start + k for i in orbit[:n]))


def spattern_codes(segment, jump, n_max, starts=None):
    """Spanned byte strings of all S-patterns of length 1..n_max."""
    values = jump_values(segment, jump)
    codes, k, length = segment.codes, jump.radius, len(segment)
    found = {n: set() for n in range(1, n_max + 1)}
    for i in (range(k, length - k) if starts is None else starts):
        position = i
        for n in range(1, n_max + 1):
            if values[position] is None:
                break
            position += values[position]
            if position + k > length:
                break
            found[n].add(codes[i - k:position + k])
            if position >= length:
                break
    return found


def spatterns(segment, jump, n):
    alphabet, k = segment.alphabet, jump.radius
    patterns = set()
    for spanned in spattern_codes(segment, jump, n)[n]:
        offsets, position = [], k
        for _ in range(n):
            offsets.append(position)
            position += jump.value(spanned, position)
        patterns.add(SPattern(Word(alphabet, spanned), tuple(offsets)))
    return patterns


def stable_spattern_codes(segment, jump, n_max):
    full = spattern_codes(segment, jump, n_max)
    half = spattern_codes(segment.first_half(), jump, n_max)
    for n in range(1, n_max + 1):
        if len(half[n]) != len(full[n]):
            raise WindowTooShort(f"S-pattern set for n={n} not stabilized on window of length {len(segment)}", n=n)
    return full


@dataclass(frozen=True)
class BoundRow:
    n: int
    speedup_count: int
    base_count: int
    holds: bool


@dataclass(frozen=True)
class SpeedupComplexity:
    profile: ComplexityProfile
    constant: int
    rows: tuple

    @property
    def holds(self):
        return all(row.holds for row in self.rows)


def speedup_complexity(segment, jump, n_max):
    """Counts of S-patterns and the verdict of p_S(n) <= K' p_sigma(p_max n)."""
    found = stable_spattern_codes(segment, jump, n_max)
    profile = ComplexityProfile({n: len(found[n]) for n in range(1, n_max + 1)})
    base = complexity(segment, jump.p_max * n_max)
    constant = len(segment.alphabet) ** (2 * jump.radius) * jump.p_max
    rows = tuple(
        BoundRow(n, profile[n], base[jump.p_max * n], profile[n] <= constant * base[jump.p_max * n])
        for n in range(1, n_max + 1)
    )
    if not all(row.holds for row in rows):
        logger.warning("word-complexity bound fails for %s", [row.n for row in rows if not row.holds])
    return SpeedupComplexity(profile, constant, rows)


def block_language(segment, jump, n, block):
    """S-words of length n recoded by the centered ``block``-blocks at their
    landings, as words over the block labels."""
    half = (block - 1) // 2
    if half < jump.radius:
        raise InvalidJump(f"block length {block} does not cover jump radius {jump.radius}")
    values = jump_values(segment, jump)
    codes, length, alphabet = segment.codes, len(segment), segment.alphabet
    found = set()
    for i in range(half, length - half):
        blocks, position = [], i
        while len(blocks) < n and position + half < length and values[position] is not None:
            blocks.append(codes[position - half:position + half + 1])
            position += values[position]
        if len(blocks) == n:
            found.add(tuple(Word(alphabet, b).label for b in blocks))
    return found
