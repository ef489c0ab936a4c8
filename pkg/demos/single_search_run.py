# One archive-based search run on a plateau instance, step by step.
#
# The archive keeps a small population of candidate tests per target and a
# counter of samples since the target last improved. Sampling prefers the
# lowest counter, so effort flows to targets that are still paying off.

import random

from suitesearch import ArtificialProblem, Budget, MioConfig, run_mio

problem = ArtificialProblem.random_instance("plateau", random.Random(11), z=30)
budget = Budget(1000)
result = run_mio(problem, MioConfig(), budget, random.Random(99))

print(f"plateau instance with z={problem.target_count}, budget {budget.max_evaluations}")
print(f"covered {result.covered_count} targets in {result.evaluations} evaluations")
print()
print("coverage over time (evaluations -> covered targets):")
for at in (50, 100, 200, 400, 600, 800, 1000):
    if at <= len(result.covered_trace):
        print(f"  {at:>5}: {result.covered_trace[at - 1]}")
print()
print("extracted suite (one best test per covered target, deduplicated):")
for test in result.suite:
    print(f"  id={test.id:>3}  x={test.inputs[0]:>5}  (optimum {problem.optima[test.id]})")
