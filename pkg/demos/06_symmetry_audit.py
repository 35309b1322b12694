"""The symmetry audit: every identity the engine asserts, stress-tested.

The audit draws fresh random states, bases, unitaries, and emotion vectors
each trial, re-checks every normalization and symmetry identity at its
tolerance, and hunts for the order effects that are supposed to exist:
a joint probability that depends on which question came first, both with
and without deliberation time in between.
"""

from qdt import parse_scenario, run_symmetry_audit

scenario = parse_scenario(
    """
    {
      "ambient_dim": 4,
      "subject_space": {
        "dim": 2,
        "emotions": [[[1,0],[0,0]], [[0,0],[1,0]], [[1,0],[0,0]], [[0,0],[1,0]]]
      },
      "seed": 31415
    }
    """
)

report = run_symmetry_audit(scenario, trials=500)
summary = report.sections["summary"]
print(f"trials: {summary['trials']}   passed: {summary['passed']}\n")

print(f"{'identity':<44s} {'max residual':>13s} {'tolerance':>10s}")
for name, entry in report.sections["identities"].items():
    print(f"{name:<44s} {entry['max_residual']:13.3e} {entry['tolerance']:10.0e}")

print(f"\n{'demonstrated order effect':<44s} {'largest gap':>13s}")
for name, entry in report.sections["witnesses"].items():
    print(f"{name:<44s} {entry['best_gap']:13.6f}")

print("\nEvery 'order_dependence_*' row above is a concrete counterexample to")
print("order symmetry; the identities table shows the symmetric cases holding")
print("at numerical precision.")
