"""
Reproducible workbench runs.

A :class:`RunConfig` names a shift source, a jump source and the scan
parameters; :func:`run` dispatches one command over them and returns an
:class:`Outcome` holding the report lines and the text artifacts to write.
Identical configs give byte-identical artifacts.
"""
import logging
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

from django.conf import settings

from dynamics import checks
from dynamics.exceptions import ConfigError, WorkbenchError
from dynamics.extension import (
    build_trace,
    cocycle,
    conjugacy_along_trace,
    entry_positions,
    extension_gap_scan,
    format_permutation,
    local_group,
    anchor_words,
)
from dynamics.goldens import Golden, golden_name, load_goldens, write_goldens
from dynamics.graphspeedup import (
    SoficPresentation,
    format_presentation,
    language_of_presentation,
    oracle_language,
    parse_presentation,
    random_walk,
    speedup_sofic,
    speedup_sft,
    to_dot,
)
from dynamics.lr import minimality_probe, recurrence_profile, speedup_recurrence_profile, theorem_verdict
from dynamics.models import RunRecord
from dynamics.returnwords import derived_gap_profile, derived_segment, return_bound_check, return_words
from dynamics.shiftspaces import (
    complexity,
    fibonacci,
    fixed_point_prefix,
    mechanical_prefix,
    parse_sturmian,
    parse_substitution,
    primitivity_check,
    thue_morse,
)
from dynamics.speedup import (
    JumpFunction,
    first_return_jump,
    orbit_coloring,
    orbit_number,
    parse_jump,
    validate_jump,
)
from dynamics.words import subwords

logger = logging.getLogger(__name__)

COMMANDS = (
    "gen", "lang", "complexity", "validate-jump", "orbits", "returns", "perms",
    "cocycle", "localgroup", "lrscan", "speedup-graph", "check",
)
NAMED_SHIFTS = {"fibonacci": fibonacci, "thue-morse": thue_morse}
GRAPH_ORACLE_NMAX = 8


# ----------------------------------------------------------
# 1. SOURCES
# ----------------------------------------------------------

def resolve_path(text, data_only=False):
    """A readable file, looked up as given and then under the data directory."""
    data_dir = Path(settings.WORKBENCH_DATA_DIR).resolve()
    candidates = [data_dir / text] if data_only else [Path(text), data_dir / text]
    for path in candidates:
        path = path.resolve()
        if data_only and data_dir not in path.parents:
            raise ConfigError(f"{text} is outside the data directory")
        if path.is_file():
            return path
    raise ConfigError(f"cannot read {text}")


def is_inline_shift(text):
    return text in NAMED_SHIFTS or text.startswith("sturmian:")


CONSTANT_JUMP = re.compile(r"constant\s*:?\s*(\d+)")
FIRST_RETURN_JUMP = re.compile(r"first-return:(\d+)")


def is_inline_jump(text):
    return bool(CONSTANT_JUMP.fullmatch(text) or FIRST_RETURN_JUMP.fullmatch(text))


@dataclass(frozen=True)
class ShiftSource:
    name: str
    substitution: object = None
    sturmian: object = None
    presentation: object = None

    def segment(self, length, seed=0):
        if self.substitution is not None:
            return fixed_point_prefix(self.substitution, length)
        if self.sturmian is not None:
            return mechanical_prefix(self.sturmian, length)
        return random_walk(self.presentation, length, seed)


def load_shift(text, data_only=False):
    if text in NAMED_SHIFTS:
        return ShiftSource(text, substitution=NAMED_SHIFTS[text]())
    if text.startswith("sturmian:"):
        return ShiftSource(text, sturmian=parse_sturmian(text))
    path = resolve_path(text, data_only)
    body = path.read_text()
    if path.suffix in (".sft", ".sofic", ".graph"):
        return ShiftSource(path.stem, presentation=parse_presentation(body))
    return ShiftSource(path.stem, substitution=parse_substitution(body))


def load_jump(text, segment, data_only=False):
    """``constant N``, ``first-return:K`` or a jump file."""
    constant = CONSTANT_JUMP.fullmatch(text)
    if constant:
        return JumpFunction.constant_jump(int(constant.group(1)))
    first_return = FIRST_RETURN_JUMP.fullmatch(text)
    if first_return:
        return first_return_jump(segment, int(first_return.group(1)))
    return parse_jump(resolve_path(text, data_only).read_text(), segment.alphabet)


# ----------------------------------------------------------
# 2. CONFIG AND OUTCOME
# ----------------------------------------------------------

@dataclass
class RunConfig:
    shift: str = "fibonacci"
    jump: str = None
    word: str = None
    window: int = None
    nmax: int = None
    seed: int = None
    out: str = None
    relaxed: bool = False
    steps: int = 1
    at: int = None
    anchors: int = 10
    freeze: bool = False

    def __post_init__(self):
        self.window = settings.WORKBENCH_WINDOW if self.window is None else int(self.window)
        self.nmax = settings.WORKBENCH_NMAX if self.nmax is None else int(self.nmax)
        self.seed = settings.WORKBENCH_SEED if self.seed is None else int(self.seed)
        if self.window < 1:
            raise ConfigError(f"window must be positive, got {self.window}")
        if self.nmax < 1:
            raise ConfigError(f"nmax must be positive, got {self.nmax}")

    def check_floor(self, p_max):
        floor = 4 * self.nmax * p_max
        if self.window < floor:
            raise ConfigError(f"window {self.window} below floor 4 * nmax * p_max = {floor}")

    def as_dict(self):
        return {key: value for key, value in asdict(self).items() if value is not None}


@dataclass
class Outcome:
    command: str
    passed: bool
    lines: list
    artifacts: dict = field(default_factory=dict)

    @property
    def status(self):
        return RunRecord.Status.PASS if self.passed else RunRecord.Status.FAIL

    @property
    def report(self):
        return "\n".join(self.lines) + "\n"


class Context:
    """Sources loaded once per run."""

    def __init__(self, config, data_only=False):
        self.config = config
        self.data_only = data_only
        self.shift = load_shift(config.shift, data_only)
        self.segment = self.shift.segment(config.window, config.seed)
        self.jump = None
        if config.jump:
            self.jump = load_jump(config.jump, self.segment, data_only)

    def require_jump(self, command):
        if self.jump is None:
            raise ConfigError(f"{command} needs --jump")
        return self.jump

    def require_word(self, command):
        if not self.config.word:
            raise ConfigError(f"{command} needs --word")
        return self.segment.alphabet.parse(self.config.word)


# ----------------------------------------------------------
# 3. COMMANDS
# ----------------------------------------------------------

def _gen(ctx):
    text = ctx.segment.text
    return Outcome("gen", True, [text], {"prefix.txt": text + "\n"})


def _lang(ctx):
    n = ctx.config.nmax
    words = sorted(w.text for w in subwords(ctx.segment, n))
    lines = [f"{len(words)} words of length {n}"] + words
    return Outcome("lang", True, lines, {"lang.txt": "\n".join(words) + "\n"})


def _complexity(ctx):
    profile = complexity(ctx.segment, ctx.config.nmax)
    rows = ["n,count"] + [f"{n},{count}" for n, count in profile.rows()]
    lines = list(rows)
    if ctx.shift.substitution is not None:
        primitivity = primitivity_check(ctx.shift.substitution)
        lines.append(
            f"primitive: yes (power {primitivity.power})" if primitivity.primitive else "primitive: no"
        )
    return Outcome("complexity", True, lines, {"complexity.csv": "\n".join(rows) + "\n"})


def _validate_jump(ctx):
    report = validate_jump(ctx.require_jump("validate-jump"), ctx.segment)
    return Outcome("validate-jump", report.homeomorphic, report.lines(), {"validate.txt": "\n".join(report.lines()) + "\n"})


def _orbits(ctx):
    jump = ctx.require_jump("orbits")
    c = orbit_number(ctx.segment, jump)
    coloring = orbit_coloring(ctx.segment, jump)
    lines = [f"orbit number: {c}", f"central block starts at {coloring.center}"]
    lines += [f"class {label}: {len(chain)} landings, first at {chain[0]}" for label, chain in enumerate(coloring.chains, 1)]
    rows = ["index,label"] + [f"{i},{label}" for i, label in enumerate(coloring.labels)]
    return Outcome("orbits", True, lines, {"coloring.csv": "\n".join(rows) + "\n"})


def _returns(ctx):
    w = ctx.require_word("returns")
    system = return_words(ctx.segment, w)
    profile = recurrence_profile(ctx.segment, max(ctx.config.nmax, len(w)))
    verdict = return_bound_check(system, profile.maximum())
    lines = system.lines() + [
        f"N = {verdict.count} <= L(L+1)^2 = {verdict.count_bound}: {'yes' if verdict.count_holds else 'no'}",
        f"max |R| = {verdict.longest} <= L|w| = {verdict.length_bound}: {'yes' if verdict.length_holds else 'no'}",
    ]
    gaps = derived_gap_profile(system)
    lines.append("derived gaps " + " ".join(f"R{e}:{'-' if gap is None else gap}" for e, gap in gaps.items()))
    observed = [gap for gap in gaps.values() if gap is not None]
    lines.append(f"L' proxy: {max(observed) if observed else 'unobserved'}")
    artifacts = {
        "returns.txt": "\n".join(system.lines()) + "\n",
        "derived.txt": derived_segment(system).text + "\n",
    }
    return Outcome("returns", verdict.holds, lines, artifacts)


def _perms(ctx):
    jump, w = ctx.require_jump("perms"), ctx.require_word("perms")
    relaxed = ctx.config.relaxed
    coloring = orbit_coloring(ctx.segment, jump)
    profile = entry_positions(ctx.segment, jump, w, relaxed, coloring=coloring)
    trace = build_trace(ctx.segment, jump, w, relaxed, coloring=coloring)
    lines = [
        f"entry positions of {w.text} ({'relaxed' if relaxed else 'strict'}): "
        + " ".join(str(p) for p in profile.positions)
    ]
    observed = {}
    for e, step in zip(trace.derived, trace.perms):
        observed.setdefault(e, set()).add(format_permutation(step))
    for e in sorted(observed):
        lines.append(f"R{e} {trace.returns[e - 1].text}: " + " ".join(sorted(observed[e])))
    lines.append(f"{len(trace)} transitions")
    return Outcome("perms", True, lines, {"trace.csv": trace.csv()})


def _cocycle(ctx):
    jump, w = ctx.require_jump("cocycle"), ctx.require_word("cocycle")
    trace = build_trace(ctx.segment, jump, w, ctx.config.relaxed)
    at = ctx.config.at if ctx.config.at is not None else len(trace) // 2
    value = cocycle(trace, ctx.config.steps, at=at)
    line = f"cocycle({ctx.config.steps}) at step {at}: {format_permutation(value)}"
    return Outcome("cocycle", True, [line], {"cocycle.txt": line + "\n"})


def _localgroup(ctx):
    jump, w = ctx.require_jump("localgroup"), ctx.require_word("localgroup")
    trace = build_trace(ctx.segment, jump, w, ctx.config.relaxed)
    estimates, lines = [], []
    for anchor in anchor_words(ctx.segment, w, ctx.config.anchors):
        try:
            estimates.append(local_group(ctx.segment, jump, w, anchor, trace=trace))
        except WorkbenchError as exc:
            lines.append(f"anchor {anchor.text} skipped: {exc.one_line()}")
    for estimate in estimates:
        lines += estimate.lines()
    matrix = ["anchor," + ",".join(e.anchor for e in estimates)]
    conjugate = True
    for left in estimates:
        row = []
        for right in estimates:
            g = conjugacy_along_trace(trace, left, right)
            conjugate &= g is not None
            row.append("-" if g is None else format_permutation(g))
        matrix.append(left.anchor + "," + ",".join(row))
    lines.append(f"pairwise conjugate: {'yes' if conjugate and estimates else 'no'}")
    return Outcome("localgroup", conjugate and bool(estimates), lines, {"conjugacy.csv": "\n".join(matrix) + "\n"})


def _default_word(ctx, jump):
    length = jump.p_max + 4 * jump.radius + 2
    return ctx.segment.factor(len(ctx.segment) // 2, length)


def _lrscan(ctx):
    jump = ctx.require_jump("lrscan")
    config, segment = ctx.config, ctx.segment
    base = recurrence_profile(segment, config.nmax)
    sped = speedup_recurrence_profile(segment, jump, config.nmax)
    lines = []
    l_star = None
    w = ctx.require_word("lrscan") if config.word else _default_word(ctx, jump)
    try:
        l_star = extension_gap_scan(segment, jump, w, config.relaxed).ratio
        lines.append(f"L* proxy from {w.text}: {l_star}")
    except WorkbenchError as exc:
        lines.append(f"L* proxy unavailable: {exc.one_line()}")
    base_name, sped_name = golden_name(ctx.shift.name), golden_name(ctx.shift.name, jump)
    if config.freeze:
        goldens = _read_goldens_or_empty()
        n_from = min(10, config.nmax)
        source = f"lrscan --freeze --window {len(segment)} --nmax {config.nmax}"
        for name, profile in ((base_name, base), (sped_name, sped)):
            goldens[name] = Golden(name, profile.maximum(n_from), n_from, config.nmax, len(segment), source)
        write_goldens(goldens)
        lines.append(f"froze goldens {base_name} and {sped_name}")
    goldens = _read_goldens_or_empty()
    verdict = theorem_verdict(base, sped, jump.p_max, goldens.get(base_name), goldens.get(sped_name), l_star)
    minimal = minimality_probe(segment, jump, min(config.nmax, 6), settings.WORKBENCH_MINIMALITY_MULTIPLE)
    lines.append(f"minimality probe: {'yes' if minimal else 'no'}")
    lines += verdict.lines()
    artifacts = {
        "base_profile.csv": base.csv(),
        "speedup_profile.csv": sped.csv(),
        "verdict.txt": "\n".join(verdict.lines()) + "\n",
    }
    return Outcome("lrscan", verdict.passed, lines, artifacts)


def _read_goldens_or_empty():
    path = Path(settings.WORKBENCH_GOLDENS)
    return load_goldens(path) if path.exists() else {}


def _speedup_graph(ctx):
    presentation = ctx.shift.presentation
    if presentation is None:
        raise ConfigError("speedup-graph needs a presentation file as --shift")
    jump = ctx.require_jump("speedup-graph")
    sofic = isinstance(presentation, SoficPresentation)
    sped = speedup_sofic(presentation, jump) if sofic else speedup_sft(presentation, jump)
    lines = [
        f"{'sofic' if sofic else 'SFT'} speedup: block length {sped.block_length}, "
        f"{sped.graph.number_of_nodes()} vertices, {sped.graph.number_of_edges()} edges"
    ]
    passed = True
    for n in range(1, min(ctx.config.nmax, GRAPH_ORACLE_NMAX) + 1):
        built = language_of_presentation(sped, n)
        same = built == oracle_language(presentation, jump, n)
        passed &= same
        lines.append(f"n={n}: {len(built)} words, oracle {'agrees' if same else 'DIFFERS'}")
    artifacts = {"speedup.txt": format_presentation(sped), "speedup.dot": to_dot(sped)}
    return Outcome("speedup-graph", passed, lines, artifacts)


def _check(ctx):
    results = checks.run_suite(ctx)
    lines = [result.line() for result in results]
    passed = all(result.passed for result in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return Outcome("check", passed, lines, {"check.txt": "\n".join(lines) + "\n"})


HANDLERS = {
    "gen": _gen,
    "lang": _lang,
    "complexity": _complexity,
    "validate-jump": _validate_jump,
    "orbits": _orbits,
    "returns": _returns,
    "perms": _perms,
    "cocycle": _cocycle,
    "localgroup": _localgroup,
    "lrscan": _lrscan,
    "speedup-graph": _speedup_graph,
    "check": _check,
}


# ----------------------------------------------------------
# 4. RUN AND LEDGER
# ----------------------------------------------------------

def run(command, config, data_only=False):
    if command not in HANDLERS:
        raise ConfigError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    ctx = Context(config, data_only)
    if command != "gen":
        config.check_floor(ctx.jump.p_max if ctx.jump else 1)
    logger.info("running %s on %s (window %d)", command, ctx.shift.name, len(ctx.segment))
    outcome = HANDLERS[command](ctx)
    if config.out:
        write_artifacts(outcome, output_path(config.out))
    return outcome


def output_path(text):
    """Relative output directories live under WORKBENCH_OUTPUT_DIR."""
    return Path(settings.WORKBENCH_OUTPUT_DIR) / text


def write_artifacts(outcome, out):
    out.mkdir(parents=True, exist_ok=True)
    for name, text in sorted(outcome.artifacts.items()):
        (out / name).write_text(text)
    (out / "report.txt").write_text(outcome.report)
    logger.debug("wrote %d artifacts to %s", len(outcome.artifacts) + 1, out)


def record_run(command, config, outcome=None, error=None):
    if error is not None:
        status, report = RunRecord.Status.ERROR, error.one_line()
    else:
        status, report = outcome.status, outcome.report
    return RunRecord.objects.create(command=command, config=config.as_dict(), status=status, report=report)
