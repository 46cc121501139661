"""
Running part of the verification suite
=======================================

Selected checks on a smaller grid; the reports carry both sides of every
sample, the empirical constants and their trend under refinement.
"""

from orliczmod.verify import exit_status, run_suite, summary_table

config = {"checks": ["moyal", "commutation", "convolution_bound", "mihlin", "exponent_gate"],
          "grid": {"d": 1, "n": 256, "dx": 0.25},
          "ensemble": {"random": 8}}
reports = run_suite(config, progress=lambda name: print("running", name))
print(summary_table(reports))

for r in reports:
    if r.check_name.startswith("convolution_bound"):
        print(r.check_name, "trend", [round(t, 5) for t in r.refinement_trend])

print("exit status", exit_status(reports))
