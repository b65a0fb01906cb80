"""
The group extension over a derived shift.

Each occurrence of a word w gets c entry positions, the first landings of the
c S-orbit classes inside an entry block of p_max positions. Following the
S-orbits from one occurrence to the next permutes the entry ranks; these
transition permutations form a cocycle over the derived sequence, and loops
between occurrences of a longer anchor word generate the local group.

Permutations are sympy permutations on {0..c-1}, printed 1-based in cycle
notation. Products compose left to right, (a*b)(i) = b(a(i)), so the running
cocycle satisfies C[i+1] = C[i]*psi_i.
"""
import csv
import io
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from sympy.combinatorics import Permutation, PermutationGroup

from dynamics.exceptions import (
    AmbiguousEntries,
    CocycleOutOfRange,
    GroupSizeMismatch,
    InvalidOccurrencePair,
    InvalidWord,
    OrbitExit,
    ParseError,
    WindowTooShort,
    WordTooShort,
)
from dynamics.returnwords import return_words
from dynamics.speedup import orbit_coloring
from dynamics.words import occurrences

logger = logging.getLogger(__name__)


# ----------------------------------------------------------
# 1. PERMUTATIONS
# ----------------------------------------------------------

def identity(c):
    return Permutation(list(range(c)))


def format_permutation(perm):
    """Cycle notation on 1..c, e.g. ``(12)``, ``(123)``, or ``e``."""
    cycles = perm.cyclic_form
    if not cycles:
        return "e"
    sep = "" if perm.size <= 9 else " "
    return "".join("(" + sep.join(str(i + 1) for i in cycle) + ")" for cycle in cycles)


def parse_permutation(text, c):
    text = text.strip()
    if text == "e":
        return identity(c)
    cycles = []
    for body in text.strip("()").split(")("):
        points = body.split() if " " in body else list(body)
        try:
            cycles.append([int(p) - 1 for p in points])
        except ValueError:
            raise ParseError(f"cannot read permutation {text!r}") from None
    if any(not 0 <= p < c for cycle in cycles for p in cycle):
        raise ParseError(f"permutation {text!r} moves points outside 1..{c}")
    return Permutation(cycles, size=c)


# ----------------------------------------------------------
# 2. ENTRY POSITIONS AND TRANSITIONS
# ----------------------------------------------------------

@dataclass(frozen=True)
class EntryProfile:
    word: object
    occurrence: int
    positions: tuple
    labels: tuple

    @property
    def c(self):
        return len(self.positions)


def entry_offset(jump, relaxed):
    return jump.radius if relaxed else 2 * jump.radius + 1


def _entries(coloring, start, offset, p_max):
    """(absolute index, class label) of the first landing of each class in the block."""
    seen, entries = set(), []
    for i in range(start + offset, start + offset + p_max):
        label = coloring.label(i)
        if label not in seen:
            seen.add(label)
            entries.append((i, label))
    if len(entries) != coloring.c:
        raise AmbiguousEntries(f"entry block at {start + offset} meets {len(entries)} of {coloring.c} orbit classes")
    return entries


def _check_length(w, jump, relaxed):
    needed = jump.p_max + 4 * jump.radius + 2
    if not relaxed and len(w) < needed:
        raise WordTooShort(f"|{w.text}| = {len(w)} < p_max + 4K + 2 = {needed}; use relaxed mode")


def entry_positions(segment, jump, w, relaxed=False, occurrence=None, coloring=None):
    _check_length(w, jump, relaxed)
    coloring = coloring or orbit_coloring(segment, jump)
    offset = entry_offset(jump, relaxed)
    starts = [occurrence] if occurrence is not None else occurrences(segment, w)
    for start in starts:
        try:
            entries = _entries(coloring, start, offset, jump.p_max)
        except OrbitExit:
            continue
        return EntryProfile(
            w, start,
            tuple(i - start + 1 for i, _ in entries),
            tuple(label for _, label in entries),
        )
    raise WindowTooShort(f"no occurrence of {w.text} has its entry block inside the labelled window")


def _transition(coloring, left, right, offset, p_max):
    rank = {label: r for r, (_, label) in enumerate(_entries(coloring, right, offset, p_max))}
    return Permutation([rank[label] for _, label in _entries(coloring, left, offset, p_max)])


def transition_permutation(segment, jump, w, pair, relaxed=False, coloring=None):
    """psi between consecutive occurrences ``pair = (i, j)`` of w."""
    _check_length(w, jump, relaxed)
    left, right = pair
    starts = occurrences(segment, w)
    if left not in starts or right not in starts or right <= left:
        raise InvalidOccurrencePair(f"{pair} are not occurrences of {w.text} in order")
    if starts[starts.index(left) + 1] != right:
        raise InvalidOccurrencePair(f"{pair} are not consecutive occurrences of {w.text}")
    coloring = coloring or orbit_coloring(segment, jump)
    return _transition(coloring, left, right, entry_offset(jump, relaxed), jump.p_max)


# ----------------------------------------------------------
# 3. TRACES AND COCYCLES
# ----------------------------------------------------------

@dataclass(frozen=True)
class ExtensionTrace:
    perms: tuple
    cumulative: tuple
    derived: tuple = ()
    occurrences: tuple = ()
    returns: tuple = ()
    origin: int = 0
    c: int = field(default=None)

    @classmethod
    def from_steps(cls, perms, origin=0, **kwargs):
        perms = tuple(perms)
        c = perms[0].size if perms else kwargs.pop("c", 1)
        kwargs.pop("c", None)
        cumulative = [identity(c)]
        for step in perms:
            cumulative.append(cumulative[-1] * step)
        return cls(perms, tuple(cumulative), origin=origin, c=c, **kwargs)

    def __len__(self):
        return len(self.perms)

    def csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["occurrence", "position", "return_index", "return_word", "step", "cumulative"])
        for k, step in enumerate(self.perms):
            e = self.derived[k] if self.derived else ""
            word = self.returns[e - 1].text if self.returns and e else ""
            position = self.occurrences[k] if self.occurrences else ""
            writer.writerow([k, position, e, word, format_permutation(step), format_permutation(self.cumulative[k + 1])])
        return out.getvalue()


def build_trace(segment, jump, w, relaxed=False, coloring=None):
    """Skew-product trace over the longest run of occurrences with labelled entry blocks."""
    _check_length(w, jump, relaxed)
    coloring = coloring or orbit_coloring(segment, jump)
    system = return_words(segment, w)
    offset = entry_offset(jump, relaxed)
    run = []
    for start in occurrences(segment, w):
        try:
            _entries(coloring, start, offset, jump.p_max)
        except OrbitExit:
            if run:
                break
            continue
        run.append(start)
    if len(run) < 2:
        raise WindowTooShort(f"fewer than two occurrences of {w.text} with labelled entry blocks")
    index = {r.letters: j for j, r in enumerate(system.returns, 1)}
    perms = [_transition(coloring, a, b, offset, jump.p_max) for a, b in zip(run, run[1:])]
    derived = [index[segment.codes[a:b]] for a, b in zip(run, run[1:])]
    logger.debug("trace of %s: %d steps, c=%d", w.text, len(perms), coloring.c)
    return ExtensionTrace.from_steps(
        perms, derived=tuple(derived), occurrences=tuple(run), returns=system.returns
    )


def cocycle(trace, n, at=None):
    """phi^n at trace position ``at``: C[at]^-1 * C[at+n] for any sign of n."""
    at = trace.origin if at is None else at
    if not (0 <= at <= len(trace) and 0 <= at + n <= len(trace)):
        raise CocycleOutOfRange(f"steps {at}..{at + n} outside trace of length {len(trace)}")
    return ~trace.cumulative[at] * trace.cumulative[at + n]


def orbit_transport(trace, a, b):
    """The element g = phi^(b-a) carrying position a to position b."""
    return cocycle(trace, b - a, at=a)


# ----------------------------------------------------------
# 4. LOCAL GROUPS
# ----------------------------------------------------------

@dataclass(frozen=True)
class SubgroupEstimate:
    c: int
    generators: tuple
    elements: frozenset
    window: int
    anchor: str = ""
    base: int = None

    @property
    def order(self):
        return len(self.elements)

    def lines(self):
        out = [f"anchor {self.anchor}: estimated subgroup of S_{self.c}, order {self.order}, window {self.window}"]
        for perm, (left, right) in self.generators:
            out.append(f"  generator {format_permutation(perm)} from loop {left} -> {right}")
        out.append("  elements " + " ".join(sorted(format_permutation(p) for p in self.elements)))
        return out


def subgroup(c, generators, window=0, anchor="", base=None):
    perms = [perm for perm, _ in generators] or [identity(c)]
    group = PermutationGroup(perms)
    return SubgroupEstimate(c, tuple(generators), frozenset(group.generate()), window, anchor, base)


def anchor_words(segment, w, count, nested=False):
    """Distinct extensions of w to the right, ``count`` of them.

    Nested anchors all extend the first occurrence of w.
    """
    starts = occurrences(segment, w)
    if nested:
        starts = starts[:1]
    found = []
    extra = 1
    while len(found) < count and len(w) + extra <= len(segment):
        for start in starts:
            if start + len(w) + extra > len(segment):
                continue
            word = segment.factor(start, len(w) + extra)
            if word not in found:
                found.append(word)
                if len(found) == count:
                    break
        extra += 1
    return found


def local_group(segment, jump, w, anchor, relaxed=False, trace=None):
    """Subgroup generated by cocycles of loops from the first occurrence of the
    anchor to each later one. A lower estimate of the local group."""
    shift = anchor.letters.find(w.letters)
    if shift < 0:
        raise InvalidWord(f"anchor {anchor.text} does not extend {w.text}")
    trace = trace or build_trace(segment, jump, w, relaxed)
    index = {position: k for k, position in enumerate(trace.occurrences)}
    visits = [index[q + shift] for q in occurrences(segment, anchor) if q + shift in index]
    if len(visits) < 3:
        raise WindowTooShort(f"anchor {anchor.text} occurs {len(visits)} times inside the trace; 3 needed")
    base, seen, generators = visits[0], set(), []
    for later in visits[1:]:
        g = cocycle(trace, later - base, at=base)
        if g not in seen:
            seen.add(g)
            generators.append((g, (trace.occurrences[base], trace.occurrences[later])))
    return subgroup(trace.c, generators, len(segment), anchor.text, base)


def symmetric_group_order(c):
    """All of S_c, identity first, then by support size and array form."""
    arrays = sorted(
        itertools.permutations(range(c)),
        key=lambda a: (sum(1 for i, x in enumerate(a) if x != i), a),
    )
    return [Permutation(list(a)) for a in arrays]


def conjugacy_check(h1, h2, transport=None):
    """Some g with h2 = g h1 g^-1, or None when the subgroups are not conjugate."""
    if h1.c != h2.c:
        raise GroupSizeMismatch(f"subgroups of S_{h1.c} and S_{h2.c}")
    if h1.order != h2.order:
        return None
    candidates = ([transport] if transport is not None else []) + symmetric_group_order(h1.c)
    for g in candidates:
        if frozenset(g * h * ~g for h in h1.elements) == h2.elements:
            return g
    return None


def conjugacy_along_trace(trace, h1, h2):
    """conjugacy_check, trying first the orbit transport between the two base visits."""
    transport = None
    if h1.base is not None and h2.base is not None:
        transport = orbit_transport(trace, h2.base, h1.base)
    return conjugacy_check(h1, h2, transport)


# ----------------------------------------------------------
# 5. REOCCURRENCE GAPS IN THE EXTENSION
# ----------------------------------------------------------

@dataclass(frozen=True)
class GapRow:
    element: object
    visits: int
    max_steps: int = None
    max_shift: int = None

    @property
    def observed(self):
        return self.max_steps is not None


@dataclass(frozen=True)
class GapScan:
    word_length: int
    rows: tuple
    window: int

    @property
    def ratio(self):
        """max over elements of the sigma-gap, divided by |w|."""
        shifts = [row.max_shift for row in self.rows if row.observed]
        return Fraction(max(shifts), self.word_length) if shifts else None

    @property
    def unobserved(self):
        return [row.element for row in self.rows if not row.observed]


def extension_gap_scan(segment, jump, w, relaxed=False, trace=None):
    trace = trace or build_trace(segment, jump, w, relaxed)
    group = PermutationGroup(list(trace.perms) or [identity(trace.c)])
    rows = []
    for s in sorted(group.generate(), key=lambda p: (format_permutation(p) != "e", format_permutation(p))):
        visits = [k for k, value in enumerate(trace.cumulative) if value == s]
        if len(visits) < 2:
            rows.append(GapRow(s, len(visits)))
            continue
        steps = max(b - a for a, b in zip(visits, visits[1:]))
        shift = max(trace.occurrences[b] - trace.occurrences[a] for a, b in zip(visits, visits[1:]))
        rows.append(GapRow(s, len(visits), steps, shift))
    scan = GapScan(len(w), tuple(rows), len(segment))
    if scan.unobserved:
        logger.warning("elements never revisited in window: %s", [format_permutation(p) for p in scan.unobserved])
    return scan
