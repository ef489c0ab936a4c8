"""Per-target archive of candidate tests.

The archive keeps one bounded population per coverage target. Tests enter a
population only when they have a non-zero heuristic for that target; once a
target is covered its population collapses to the single best covering test
and never grows again. Sampling is feedback-directed: each target carries a
counter of samples since its last improvement, and the least-recently
improved target is preferred, which starves stagnant (e.g. infeasible)
targets of search effort.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EmptyArchiveError, HeuristicVector, TestCase


class ScoredTest:
    """A stored test with its heuristic for the owning target.

    ``coverage_sum`` is the sum of heuristic values over all targets at
    evaluation time, used as the secondary comparison key when two covering
    tests have equal size. ``seq`` is a monotonically increasing insertion
    stamp; older entries lose ties.
    """

    __slots__ = ("test", "h", "coverage_sum", "seq")

    def __init__(self, test: TestCase, h: float, coverage_sum: float, seq: int):
        self.test = test
        self.h = h
        self.coverage_sum = coverage_sum
        self.seq = seq

    def __repr__(self):
        return f"ScoredTest(h={self.h}, size={self.test.size}, seq={self.seq})"


def _worst_key(entry: ScoredTest):
    # Worst first: lowest h, then largest size, then oldest.
    return (entry.h, -entry.test.size, entry.seq)


class TargetPopulation:
    """Bounded set of candidate tests for one target, plus its sampling counter."""

    __slots__ = ("entries", "covered", "counter")

    def __init__(self):
        self.entries: list[ScoredTest] = []
        self.covered = False
        self.counter = 0

    def best(self) -> ScoredTest | None:
        if not self.entries:
            return None
        return max(self.entries, key=_worst_key)


@dataclass(frozen=True)
class SaveReport:
    """Which targets admitted the candidate during one save."""

    admitted: tuple[int, ...]
    newly_covered: tuple[int, ...]
    counters_reset: tuple[int, ...]


class Archive:
    """One :class:`TargetPopulation` per target, with shared bookkeeping."""

    def __init__(self, target_count: int):
        if target_count < 1:
            raise ValueError("archive needs at least one target")
        self.target_count = target_count
        self.populations = [TargetPopulation() for _ in range(target_count)]
        self._seq = 0
        self._covered_count = 0
        self._total_entries = 0
        # Uncovered, non-empty targets, with positions for O(1) swap-removal.
        self._eligible: list[int] = []
        self._eligible_pos: dict[int, int] = {}
        self._covered_ids: list[int] = []

    # -- bookkeeping ------------------------------------------------------

    @property
    def covered_count(self) -> int:
        return self._covered_count

    @property
    def total_entries(self) -> int:
        return self._total_entries

    def is_empty(self) -> bool:
        return self._total_entries == 0

    def coverage_sum(self) -> float:
        """Sum over targets of the best heuristic stored (1 when covered)."""
        total = 0.0
        for pop in self.populations:
            if pop.covered:
                total += 1.0
            elif pop.entries:
                total += max(e.h for e in pop.entries)
        return total

    def covered_targets(self) -> list[int]:
        return list(self._covered_ids)

    def _add_eligible(self, k: int):
        self._eligible_pos[k] = len(self._eligible)
        self._eligible.append(k)

    def _remove_eligible(self, k: int):
        pos = self._eligible_pos.pop(k)
        last = self._eligible.pop()
        if last != k:
            self._eligible[pos] = last
            self._eligible_pos[last] = pos

    # -- save -------------------------------------------------------------

    def save(self, test: TestCase, h: HeuristicVector, capacity: int) -> SaveReport:
        """Offer an evaluated test to every population, per the save rules.

        For each target: a zero heuristic is skipped; a covering test (h=1)
        marks the target covered and shrinks its population to the single
        best covering test, replacing the incumbent only when strictly
        shorter or, at equal size, with strictly larger coverage sum; a
        partial heuristic joins a non-covered population when below
        ``capacity``, else replaces the worst entry when not worse than it.

        The per-target counter resets when the population was empty or when
        the candidate strictly improves on the entry it displaced.
        """
        if len(h) != self.target_count:
            raise ValueError(
                f"heuristic vector has {len(h)} entries for {self.target_count} targets"
            )
        admitted: list[int] = []
        newly_covered: list[int] = []
        resets: list[int] = []
        cov_sum = None
        pops = self.populations
        for k, hk in h.items():
            pop = pops[k]
            if hk >= 1.0:
                if cov_sum is None:
                    cov_sum = h.sum()
                if pop.covered:
                    incumbent = pop.entries[0]
                    if test.size < incumbent.test.size or (
                        test.size == incumbent.test.size
                        and cov_sum > incumbent.coverage_sum
                    ):
                        self._seq += 1
                        pop.entries[0] = ScoredTest(test, hk, cov_sum, self._seq)
                        pop.counter = 0
                        admitted.append(k)
                        resets.append(k)
                else:
                    self._seq += 1
                    dropped = len(pop.entries)
                    pop.entries = [ScoredTest(test, hk, cov_sum, self._seq)]
                    pop.covered = True
                    pop.counter = 0
                    self._covered_count += 1
                    self._total_entries += 1 - dropped
                    if dropped:
                        self._remove_eligible(k)
                    self._covered_ids.append(k)
                    admitted.append(k)
                    newly_covered.append(k)
                    resets.append(k)
            else:
                if pop.covered:
                    continue
                entries = pop.entries
                if len(entries) < capacity:
                    if cov_sum is None:
                        cov_sum = h.sum()
                    self._seq += 1
                    was_empty = not entries
                    entries.append(ScoredTest(test, hk, cov_sum, self._seq))
                    self._total_entries += 1
                    if was_empty:
                        pop.counter = 0
                        resets.append(k)
                        self._add_eligible(k)
                    admitted.append(k)
                else:
                    worst_i = 0
                    worst = entries[0]
                    for i in range(1, len(entries)):
                        if _worst_key(entries[i]) < _worst_key(worst):
                            worst_i = i
                            worst = entries[i]
                    if hk > worst.h or (
                        hk == worst.h and test.size <= worst.test.size
                    ):
                        if cov_sum is None:
                            cov_sum = h.sum()
                        self._seq += 1
                        entries[worst_i] = ScoredTest(test, hk, cov_sum, self._seq)
                        admitted.append(k)
                        if hk > worst.h or test.size < worst.test.size:
                            pop.counter = 0
                            resets.append(k)
        return SaveReport(tuple(admitted), tuple(newly_covered), tuple(resets))

    # -- sampling ---------------------------------------------------------

    def sample(self, rng, fds: bool = True) -> TestCase:
        """Draw one stored test to serve as a mutation parent.

        Picks an uncovered, non-empty target (lowest counter under
        feedback-directed sampling, uniform otherwise), then a uniformly
        random test from its population. When only covered populations
        remain, picks uniformly among those without touching any counter.
        """
        return self.sample_with_target(rng, fds)[1]

    def sample_with_target(self, rng, fds: bool = True):
        """Like :meth:`sample` but returns (target id, test, coverage sum)."""
        eligible = self._eligible
        if not eligible:
            if not self._covered_ids:
                raise EmptyArchiveError("no tests stored in any population")
            k = self._covered_ids[rng.randrange(len(self._covered_ids))]
            entry = self.populations[k].entries[0]
            return k, entry.test, entry.coverage_sum
        if fds:
            pops = self.populations
            best_c = None
            ties: list[int] = []
            for k in eligible:
                c = pops[k].counter
                if best_c is None or c < best_c:
                    best_c = c
                    ties = [k]
                elif c == best_c:
                    ties.append(k)
            k = ties[0] if len(ties) == 1 else ties[rng.randrange(len(ties))]
            pops[k].counter += 1
        else:
            k = eligible[rng.randrange(len(eligible))]
        entries = self.populations[k].entries
        entry = entries[rng.randrange(len(entries))]
        return k, entry.test, entry.coverage_sum

    # -- maintenance ------------------------------------------------------

    def shrink_to(self, n: int):
        """Trim every non-covered population to at most ``n`` entries.

        Drops worst entries first (lowest h, then largest size, then oldest).
        Covered populations hold a single test and are never touched.
        """
        if n < 1:
            raise ValueError("capacity must be >= 1")
        for k in list(self._eligible):
            pop = self.populations[k]
            excess = len(pop.entries) - n
            if excess > 0:
                pop.entries.sort(key=_worst_key)
                del pop.entries[:excess]
                self._total_entries -= excess

    def extract_suite(self) -> list[TestCase]:
        """The best test of every covered target, deduplicated, in target order."""
        seen: dict[TestCase, None] = {}
        for k in sorted(self._covered_ids):
            seen.setdefault(self.populations[k].entries[0].test, None)
        return list(seen)
