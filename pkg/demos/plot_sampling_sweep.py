"""
Pivot on sampled inputs
=======================

Draw R of the k input clusterings, run Pivot on the sample, and score the
result against every input. The ratio to the full-input cost should stay
below g(R), and more correlated inputs should need fewer samples.
"""

from pivotcc.bounds import g
from pivotcc.datagen import BinarySpec, gen_correlated_binary
from pivotcc.experiments import SweepConfig, run_sweep, summarize, summary_csv

for corr in (0.1, 0.5):
    m = gen_correlated_binary(BinarySpec(n=1000, k=100, mean=0.3, corr=corr, seed=7))
    reports = run_sweep(m, SweepConfig("pivot", (5, 10, 25, 50), runs=8, seed=1, threads=4))
    rows = summarize(reports, reports[-1], "mad")
    print(f"corr={corr}")
    print(summary_csv(rows))
    for row in rows[:-1]:
        print(f"  R={row.R}: ratio {row.ratio_to_full:.4f} vs g(R) {g(row.R):.4f}")

# the local-search variants trade time for a lower cost
m = gen_correlated_binary(BinarySpec(n=400, k=40, mean=0.3, corr=0.2, seed=7))
for algo in ("pivot", "pivot+ils", "pivot+ls", "vote", "best-of"):
    rep = run_sweep(m, SweepConfig(algo, (10,), runs=4, seed=2))[0]
    print(algo, sum(rep.disagreements) / rep.runs)
