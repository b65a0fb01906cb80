"""
Empirical linear-recurrence profiles.

For each length n the profile records the largest gap between consecutive
occurrence starts of any observed length-n word, and the exact ratio gap/n.
The speedup profile measures gaps in S-steps between reoccurrences of an
S-pattern inside a single S-orbit class. All constants here are empirical
proxies read off a finite window.
"""
import csv
import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from dynamics.exceptions import WindowTooShort
from dynamics.speedup import orbit_coloring, stable_spattern_codes
from dynamics.words import stable_factor_codes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecurrenceProfile:
    ratios: dict
    gaps: dict
    window: int

    def maximum(self, n_from=1, n_max=None):
        """Largest ratio over n_from <= n <= n_max, falling back to every n."""
        ns = [n for n in self.ratios if n >= n_from and (n_max is None or n <= n_max)] or list(self.ratios)
        return max(self.ratios[n] for n in ns)

    def csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "max_gap", "ratio_num", "ratio_den"])
        for n in sorted(self.ratios):
            ratio = self.ratios[n]
            writer.writerow([n, self.gaps[n], ratio.numerator, ratio.denominator])
        return out.getvalue()


def _max_gap(keys):
    """Largest distance between consecutive equal keys of a sequence."""
    last, best = {}, None
    for position, key in enumerate(keys):
        if key in last:
            gap = position - last[key]
            if best is None or gap > best:
                best = gap
        last[key] = position
    return best


def recurrence_profile(segment, n_max):
    codes = segment.codes
    ratios, gaps = {}, {}
    for n in range(1, n_max + 1):
        stable_factor_codes(segment, n)
        gap = _max_gap(codes[i:i + n] for i in range(len(codes) - n + 1))
        if gap is None:
            raise WindowTooShort(f"no length-{n} word recurs in window of length {len(segment)}", n=n)
        gaps[n], ratios[n] = gap, Fraction(gap, n)
    logger.debug("recurrence profile on window %d up to n=%d", len(segment), n_max)
    return RecurrenceProfile(ratios, gaps, len(segment))


def _chain_keys(codes, chain, radius, n):
    """Spanned words of the n-step S-patterns along one orbit chain."""
    return [codes[chain[t] - radius:chain[t + n] + radius] for t in range(len(chain) - n)]


def speedup_recurrence_profile(segment, jump, n_max):
    stable_spattern_codes(segment, jump, n_max)
    coloring = orbit_coloring(segment, jump)
    codes, radius = segment.codes, jump.radius
    ratios, gaps = {}, {}
    for n in range(1, n_max + 1):
        found = [_max_gap(_chain_keys(codes, chain, radius, n)) for chain in coloring.chains]
        found = [gap for gap in found if gap is not None]
        if not found:
            raise WindowTooShort(f"no {n}-step S-pattern recurs within one orbit class", n=n)
        gaps[n] = max(found)
        ratios[n] = Fraction(gaps[n], n)
    logger.debug("speedup recurrence profile over %d classes up to n=%d", coloring.c, n_max)
    return RecurrenceProfile(ratios, gaps, len(segment))


def monotonicity_violations(segment, n_max, jump=None):
    """Lengths n whose ratio on the first half of the window exceeds the
    ratio on the whole window."""
    if jump is None:
        half, full = recurrence_profile(segment.first_half(), n_max), recurrence_profile(segment, n_max)
    else:
        half = speedup_recurrence_profile(segment.first_half(), jump, n_max)
        full = speedup_recurrence_profile(segment, jump, n_max)
    return [n for n in sorted(full.ratios) if half.ratios[n] > full.ratios[n]]


def golden_comparison(profile, golden):
    """Largest ratio over the golden's range of n, and whether it stays within the bound."""
    observed = profile.maximum(golden.n_from, golden.n_max)
    return observed, observed <= golden.bound


def minimality_probe(segment, jump, n, multiple=50):
    """True iff each orbit class sees every n-step S-pattern of the window
    inside a central stretch of ``multiple * n`` steps of its chain."""
    coloring = orbit_coloring(segment, jump)
    codes, radius = segment.codes, jump.radius
    per_class = [_chain_keys(codes, chain, radius, n) for chain in coloring.chains]
    everything = set().union(*per_class)
    span = multiple * n
    for label, keys in enumerate(per_class, 1):
        lo = max(0, len(keys) // 2 - span // 2)
        seen = set(keys[lo:lo + span])
        if seen != everything:
            logger.info("orbit class %d misses %d of %d patterns", label, len(everything - seen), len(everything))
            return False
    return True


@dataclass
class TheoremVerdict:
    base_max: Fraction
    speedup_max: Fraction
    base_golden: object = None
    speedup_golden: object = None
    l_star: Fraction = None
    l_hat: Fraction = None
    p_max: int = 1
    violations: list = field(default_factory=list)

    @property
    def base_holds(self):
        return self.base_golden is None or self.base_max <= self.base_golden.bound

    @property
    def speedup_holds(self):
        return self.speedup_golden is None or self.speedup_max <= self.speedup_golden.bound

    @property
    def proof_bound(self):
        if self.l_star is None:
            return None
        return 2 * self.l_star * self.l_hat * self.p_max

    @property
    def passed(self):
        return self.base_holds and self.speedup_holds and not self.violations

    def lines(self):
        def bound(golden):
            return "no golden" if golden is None else f"golden {golden.bound} (window {golden.window})"

        out = [
            f"base max ratio {self.base_max}, {bound(self.base_golden)}: {'ok' if self.base_holds else 'EXCEEDED'}",
            f"speedup max ratio {self.speedup_max}, {bound(self.speedup_golden)}: {'ok' if self.speedup_holds else 'EXCEEDED'}",
        ]
        if self.proof_bound is not None:
            out.append(f"proof bound 2 L* L p_max = {self.proof_bound}; violations at n = {self.violations or 'none'}")
        out.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return out


def theorem_verdict(base, speedup, p_max, base_golden=None, speedup_golden=None, l_star=None):
    """Both profiles against their goldens, and every speedup gap against
    2 L* L p_max n with L and L* read off the same data."""
    n_from = speedup_golden.n_from if speedup_golden else 1
    verdict = TheoremVerdict(
        base_max=base.maximum(base_golden.n_from if base_golden else 1),
        speedup_max=speedup.maximum(n_from),
        base_golden=base_golden,
        speedup_golden=speedup_golden,
        l_star=l_star,
        l_hat=base.maximum(),
        p_max=p_max,
    )
    if l_star is not None:
        verdict.violations = [n for n, gap in sorted(speedup.gaps.items()) if gap > verdict.proof_bound * n]
    if not verdict.passed:
        logger.warning("recurrence verdict failed: %s", "; ".join(verdict.lines()))
    return verdict
