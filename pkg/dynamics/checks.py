"""
The ``check`` suite: every module's properties run against one configured
shift and jump, each against an independently coded oracle where one exists.
"""
import logging
import random
from dataclasses import dataclass
from itertools import combinations

from django.conf import settings

from dynamics.exceptions import WorkbenchError
from dynamics.extension import (
    anchor_words,
    build_trace,
    cocycle,
    conjugacy_along_trace,
    extension_gap_scan,
    local_group,
    transition_permutation,
)
from dynamics.goldens import golden_name, load_goldens
from dynamics.graphspeedup import (
    SoficPresentation,
    language_of_presentation,
    oracle_language,
    prune_essential,
    speedup_sft,
    speedup_sofic,
)
from dynamics.lr import (
    golden_comparison,
    minimality_probe,
    monotonicity_violations,
    recurrence_profile,
    speedup_recurrence_profile,
    theorem_verdict,
)
from dynamics.returnwords import derived_gap_profile, return_bound_check, return_words
from dynamics.shiftspaces import balance_profile, complexity, fixed_point_prefix, primitivity_check
from dynamics.speedup import (
    count_orbit_chains,
    inverse_landing,
    landing_map,
    orbit_coloring,
    speedup_complexity,
    validate_jump,
)
from dynamics.words import occurrences

logger = logging.getLogger(__name__)

SAMPLE = 50
ORACLE_NMAX = 4
NESTED_ANCHORS = 5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _sample_word(ctx, length=3):
    if ctx.config.word:
        return ctx.segment.alphabet.parse(ctx.config.word)
    return ctx.segment.factor(len(ctx.segment) // 2, length)


def check_occurrences(ctx):
    w = _sample_word(ctx)
    symbols, needle = ctx.segment.word.symbols, w.symbols
    naive = [i for i in range(len(symbols) - len(needle) + 1) if symbols[i:i + len(needle)] == needle]
    found = occurrences(ctx.segment, w)
    return naive == found, f"{len(found)} occurrences of {w.text}"


def check_complexity(ctx):
    profile = complexity(ctx.segment, ctx.config.nmax)
    symbols = ctx.segment.word.symbols
    naive = {n: len({symbols[i:i + n] for i in range(len(symbols) - n + 1)}) for n in range(1, ctx.config.nmax + 1)}
    return dict(profile.rows()) == naive, " ".join(str(count) for _, count in profile.rows())


def check_sturmian_complexity(ctx):
    profile = complexity(ctx.segment, ctx.config.nmax)
    return all(count == n + 1 for n, count in profile.rows()), "p(n) = n + 1"


def check_primitive(ctx):
    primitivity = primitivity_check(ctx.shift.substitution)
    return primitivity.primitive, f"power {primitivity.power}"


def check_reconstruction(ctx):
    w = _sample_word(ctx)
    system = return_words(ctx.segment, w)
    starts = occurrences(ctx.segment, w)
    return system.reconstruction() == ctx.segment.codes[starts[0]:starts[-1]], f"{len(system.returns)} return words of {w.text}"


def check_homeomorphic(ctx):
    report = validate_jump(ctx.jump, ctx.segment)
    return report.homeomorphic, f"p_max {report.p_max}"


def check_orbit_oracle(ctx):
    c = orbit_coloring(ctx.segment, ctx.jump).c
    oracle = count_orbit_chains(ctx.segment, ctx.jump)
    return c == oracle, f"union-find {c}, chain walk {oracle}"


def check_inverse_landing(ctx):
    segment, jump = ctx.segment, ctx.jump
    lmap = landing_map(segment, jump)
    centre = len(segment) // 2
    sample = range(centre, centre + SAMPLE)
    return all(inverse_landing(segment, jump, lmap.landings[i]) == i for i in sample), f"{SAMPLE} indices"


def check_speedup_bound(ctx):
    result = speedup_complexity(ctx.segment, ctx.jump, ctx.config.nmax)
    return result.holds, f"K' = {result.constant}"


def _trace(ctx):
    w = _sample_word(ctx, ctx.jump.p_max + 4 * ctx.jump.radius + 2)
    return w, build_trace(ctx.segment, ctx.jump, w, ctx.config.relaxed)


def check_return_dependence(ctx):
    _, trace = _trace(ctx)
    seen = {}
    for e, step in zip(trace.derived, trace.perms):
        seen.setdefault(e, set()).add(step)
    return all(len(steps) == 1 for steps in seen.values()), f"{len(seen)} return words"


def check_trace_consistency(ctx):
    w, trace = _trace(ctx)
    pairs = list(zip(trace.occurrences, trace.occurrences[1:]))[:SAMPLE]
    product = trace.cumulative[0]
    for pair in pairs:
        product = product * transition_permutation(ctx.segment, ctx.jump, w, pair, ctx.config.relaxed)
    return product == trace.cumulative[len(pairs)], f"{len(pairs)} transitions"


def check_cocycle_additivity(ctx):
    _, trace = _trace(ctx)
    rng = random.Random(ctx.config.seed)
    size = len(trace)
    pairs = settings.WORKBENCH_RANDOM_PAIRS
    for _ in range(pairs):
        at = rng.randint(0, size)
        m = rng.randint(-at, size - at)
        n = rng.randint(-(at + m), size - at - m)
        if cocycle(trace, m + n, at) != cocycle(trace, m, at) * cocycle(trace, n, at + m):
            return False, f"fails at step {at} for m={m}, n={n}"
    return True, f"{pairs} seeded pairs"


def check_conjugate_groups(ctx):
    w, trace = _trace(ctx)
    estimates = _local_groups(ctx, w, trace, anchor_words(ctx.segment, w, 5))
    conjugate = all(conjugacy_along_trace(trace, a, b) is not None for a, b in combinations(estimates, 2))
    return conjugate and bool(estimates), f"{len(estimates)} anchors"


def check_nested_anchors(ctx):
    w, trace = _trace(ctx)
    estimates = _local_groups(ctx, w, trace, anchor_words(ctx.segment, w, NESTED_ANCHORS, nested=True))
    if not estimates:
        return False, "no nested anchor recurs"
    same = all(e.elements == estimates[0].elements for e in estimates)
    return same, f"{len(estimates)} nested anchors, orders {' '.join(str(e.order) for e in estimates)}"


def _local_groups(ctx, w, trace, anchors):
    estimates = []
    for anchor in anchors:
        try:
            estimates.append(local_group(ctx.segment, ctx.jump, w, anchor, trace=trace))
        except WorkbenchError as exc:
            logger.info("anchor %s skipped: %s", anchor.text, exc.one_line())
    return estimates


def check_gap_visitation(ctx):
    w, trace = _trace(ctx)
    scan = extension_gap_scan(ctx.segment, ctx.jump, w, trace=trace)
    return not scan.unobserved, f"{len(scan.rows)} elements, L* proxy {scan.ratio}"


# shiftspaces

def check_prefix_nesting(ctx):
    sub, codes = ctx.shift.substitution, ctx.segment.codes
    shorter = fixed_point_prefix(sub, len(codes) // 2).codes
    longer = fixed_point_prefix(sub, 2 * len(codes)).codes
    nested = codes.startswith(shorter) and longer.startswith(codes)
    return nested, f"lengths {len(shorter)}, {len(codes)}, {len(longer)}"


def check_balance(ctx):
    spreads = balance_profile(ctx.segment, ctx.config.nmax)
    worst = max(spreads.values())
    return worst <= 1, f"largest spread {worst}"


# returnwords

def check_return_bound(ctx):
    w = _sample_word(ctx)
    system = return_words(ctx.segment, w)
    l_hat = recurrence_profile(ctx.segment, max(ctx.config.nmax, len(w))).maximum()
    verdict = return_bound_check(system, l_hat)
    return verdict.holds, f"N = {verdict.count}, max |R| = {verdict.longest}, L = {l_hat}"


def check_derived_gaps(ctx):
    gaps = derived_gap_profile(return_words(ctx.segment, _sample_word(ctx)))
    missing = [e for e, gap in gaps.items() if gap is None]
    if missing:
        return False, f"return words seen once: {missing}"
    return True, f"L' proxy {max(gaps.values())}"


# lr

def check_recurrence_goldens(ctx):
    goldens = load_goldens()
    base_name, sped_name = golden_name(ctx.shift.name), golden_name(ctx.shift.name, ctx.jump)
    found = [goldens[name] for name in (base_name, sped_name) if name in goldens]
    if not found:
        return True, f"no golden recorded for {base_name} or {sped_name}"
    n_max = max([ctx.config.nmax] + [golden.n_max for golden in found])
    details, passed = [], True
    for golden in found:
        if golden.name == base_name:
            profile = recurrence_profile(ctx.segment, n_max)
        else:
            profile = speedup_recurrence_profile(ctx.segment, ctx.jump, n_max)
        observed, holds = golden_comparison(profile, golden)
        passed &= holds
        details.append(f"{golden.name} {observed} {'<=' if holds else '>'} {golden.bound}")
    return passed, "; ".join(details)


def check_proof_bound(ctx):
    w, trace = _trace(ctx)
    scan = extension_gap_scan(ctx.segment, ctx.jump, w, trace=trace)
    if scan.ratio is None:
        return False, "no element of the extension recurs"
    base = recurrence_profile(ctx.segment, ctx.config.nmax)
    sped = speedup_recurrence_profile(ctx.segment, ctx.jump, ctx.config.nmax)
    verdict = theorem_verdict(base, sped, ctx.jump.p_max, l_star=scan.ratio)
    return not verdict.violations, f"2 L* L p_max = {verdict.proof_bound}, violations at {verdict.violations or 'none'}"


def check_minimality(ctx):
    n = min(ctx.config.nmax, 6)
    return minimality_probe(ctx.segment, ctx.jump, n, settings.WORKBENCH_MINIMALITY_MULTIPLE), f"n = {n}"


def check_window_monotone(ctx):
    base = monotonicity_violations(ctx.segment, ctx.config.nmax)
    sped = monotonicity_violations(ctx.segment, ctx.config.nmax, ctx.jump)
    return not base and not sped, f"half window exceeds full at base {base or 'none'}, speedup {sped or 'none'}"


# graphspeedup

def _speedup_presentation(ctx):
    presentation = ctx.shift.presentation
    if isinstance(presentation, SoficPresentation):
        return speedup_sofic(presentation, ctx.jump)
    return speedup_sft(presentation, ctx.jump)


def check_pruning(ctx):
    graphs = [ctx.shift.presentation.graph]
    if ctx.jump is not None:
        graphs.append(_speedup_presentation(ctx).graph)
    stable = all(
        set(prune_essential(graph).nodes) == set(graph.nodes)
        and prune_essential(graph).number_of_edges() == graph.number_of_edges()
        for graph in graphs
    )
    return stable, f"{len(graphs)} presentations"


def check_graph_oracle(ctx):
    sped = _speedup_presentation(ctx)
    top = min(ctx.config.nmax, ORACLE_NMAX)
    for n in range(1, top + 1):
        if language_of_presentation(sped, n) != oracle_language(ctx.shift.presentation, ctx.jump, n):
            return False, f"languages differ at n = {n}"
    return True, f"n <= {top}, block length {sped.block_length}"


def suite(ctx):
    recurrent = ctx.shift.presentation is None
    checks = [("occurrences", check_occurrences), ("complexity", check_complexity), ("return-words", check_reconstruction)]
    if recurrent:
        checks += [("return-bound", check_return_bound), ("derived-gaps", check_derived_gaps)]
    if ctx.shift.sturmian is not None or ctx.shift.name == "fibonacci":
        checks += [("sturmian-complexity", check_sturmian_complexity), ("balance", check_balance)]
    if ctx.shift.substitution is not None:
        checks += [("primitive", check_primitive), ("prefix-nesting", check_prefix_nesting)]
    if ctx.shift.presentation is not None:
        checks.append(("pruning", check_pruning))
    if ctx.jump is not None:
        checks += [
            ("homeomorphic", check_homeomorphic),
            ("orbit-oracle", check_orbit_oracle),
            ("inverse-landing", check_inverse_landing),
            ("speedup-complexity", check_speedup_bound),
            ("return-dependence", check_return_dependence),
            ("trace-consistency", check_trace_consistency),
            ("cocycle-additivity", check_cocycle_additivity),
            ("conjugate-groups", check_conjugate_groups),
        ]
        if recurrent:
            checks += [
                ("nested-anchors", check_nested_anchors),
                ("gap-visitation", check_gap_visitation),
                ("recurrence-goldens", check_recurrence_goldens),
                ("proof-bound", check_proof_bound),
                ("minimality", check_minimality),
                ("window-monotone", check_window_monotone),
            ]
        else:
            checks.append(("graph-oracle", check_graph_oracle))
    return checks


def run_suite(ctx):
    results = []
    for name, check in suite(ctx):
        try:
            passed, detail = check(ctx)
        except WorkbenchError as exc:
            passed, detail = False, exc.one_line()
        results.append(CheckResult(name, passed, detail))
        if not passed:
            logger.warning("check %s failed: %s", name, detail)
    return results
