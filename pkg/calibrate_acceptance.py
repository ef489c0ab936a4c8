"""One-off: run the full acceptance battery at final seeds and report bounds."""
import time

import numpy as np

from suitesearch.harness import ExperimentPlan, run_plan, sut_plans
from suitesearch.stats import mann_whitney_u, vargha_delaney_a12

W = 2
t_all = time.perf_counter()

# --- AC1: gradient parity, full grid ---
t0 = time.perf_counter()
grid = (1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100)
plan1 = ExperimentPlan(family="gradient", params=grid, repetitions=100, budget=1000, base_seed=1)
res1 = run_plan(plan1, workers=W)
el1 = time.perf_counter() - t0
print(f"AC1 runtime {el1:.0f}s (bound 120s)")
worst = 0.0
for z in grid:
    fr = {a: res1.mean_feasible_fraction(z, a) for a in plan1.algorithms}
    gap = abs(fr["mio"] - fr["mosa"])
    worst = max(worst, gap)
    exceed = fr["mio"] > max(fr["random"], fr["wts"]) and fr["mosa"] > max(fr["random"], fr["wts"])
    print(f"  z={z:3d} mio={fr['mio']:.3f} mosa={fr['mosa']:.3f} wts={fr['wts']:.3f} rnd={fr['random']:.3f} gap={gap:.3f} exceed(z>=10)={exceed}")
print(f"AC1 worst parity gap: {worst:.3f} (bound 0.10)")

# AC5a from AC1 data: WTS vs RAND A12 at z=20
w = res1.covered_values(20, "wts")
r = res1.covered_values(20, "random")
print(f"AC5a gradient z=20 A12(wts, rand) = {vargha_delaney_a12(w, r):.3f} (bound [0.4, 0.6])")

# --- AC2: plateau z=30 ---
plan2 = ExperimentPlan(family="plateau", params=(30,), repetitions=100, budget=1000, base_seed=2)
res2 = run_plan(plan2, workers=W)
fr = {a: res2.mean_feasible_fraction(30, a) for a in plan2.algorithms}
print(f"AC2 plateau z=30: mio={fr['mio']:.3f} (bound [0.10, 0.35]) mosa={fr['mosa']:.3f} rnd={fr['random']:.3f} wts={fr['wts']:.3f} (each < 0.05)")

# --- AC3: deceptive ---
dz = (1, 2, 3, 4, 5, 20, 30, 40, 50, 60, 70, 80, 90, 100)
plan3 = ExperimentPlan(family="deceptive", params=dz, repetitions=100, budget=1000, base_seed=3)
res3 = run_plan(plan3, workers=W)
for z in dz:
    fr = {a: res3.mean_feasible_fraction(z, a) for a in plan3.algorithms}
    cov = {a: res3.covered_values(z, a) for a in plan3.algorithms}
    if z <= 5:
        ok = fr["random"] >= fr["mio"] and fr["random"] >= fr["mosa"]
        print(f"  dec z={z}: rnd={fr['random']:.3f} mio={fr['mio']:.3f} mosa={fr['mosa']:.3f} rnd-dominates={ok}")
    else:
        ps = {a: mann_whitney_u(cov["mio"], cov[a]) for a in ("mosa", "wts", "random")}
        ok = all(fr["mio"] > fr[a] and ps[a] < 0.05 for a in ("mosa", "wts", "random"))
        print(f"  dec z={z}: mio={fr['mio']:.3f} mosa={fr['mosa']:.3f} wts={fr['wts']:.3f} rnd={fr['random']:.3f} "
              f"p_mosa={ps['mosa']:.3g} p_wts={ps['wts']:.3g} p_rnd={ps['random']:.3g} strict={ok}")

# --- AC4: infeasible 10+100 ---
plan4 = ExperimentPlan(
    family="infeasible", params=(100,), repetitions=100, budget=1000, base_seed=4,
    algorithms=("mio", "mio-nofds", "mosa", "wts", "random"),
)
res4 = run_plan(plan4, workers=W)
fr = {a: res4.mean_feasible_fraction(100, a) for a in plan4.algorithms}
cov = {a: [x.feasible_covered for x in res4.rows_for(100, a)] for a in plan4.algorithms}
p_nofds = mann_whitney_u(cov["mio"], cov["mio-nofds"])
print(f"AC4 infeasible+100: mio={fr['mio']:.3f} (>=0.25) nofds={fr['mio-nofds']:.3f} p={p_nofds:.2g} "
      f"mosa={fr['mosa']:.3f} wts={fr['wts']:.3f} rnd={fr['random']:.3f} (each < 0.10)")

# --- AC5b/AC6: SUTs ---
for name, plan in sut_plans(base_seed=6, repetitions=100).items():
    t0 = time.perf_counter()
    res = run_plan(plan, workers=W)
    cov = {a: res.covered_values(0, a) for a in plan.algorithms}
    means = {a: np.mean(v) for a, v in cov.items()}
    order_ok = means["mio"] >= means["mosa"] and means["mio"] >= means["wts"]
    line = f"AC6 {name}: " + " ".join(f"{a}={means[a]:.2f}" for a in plan.algorithms) + f" order_ok={order_ok}"
    for a in ("mio", "mosa", "wts"):
        a12 = vargha_delaney_a12(cov[a], cov["random"])
        p = mann_whitney_u(cov[a], cov["random"])
        line += f" | {a}/r A12={a12:.3f} p={p:.1e}"
    print(line, f"({time.perf_counter()-t0:.0f}s)")

print(f"total {time.perf_counter()-t_all:.0f}s")
