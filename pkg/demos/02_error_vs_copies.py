"""Estimation error of a 3-level state as the copy budget grows.

Reproduces the trajectory experiment for a random state with the fixed
spectrum (0.1186, 0.2871, 0.5943): mean Hilbert-Schmidt error of the
unconstrained and constrained estimates, and the fraction of runs whose
unconstrained estimate is already a density matrix.  Once that fraction
reaches one the two error curves coincide exactly.
"""

from qtomo import ExperimentConfig, RandomState, run_trajectory

SPECTRUM = (0.1186, 0.2871, 0.5943)
SCHEDULE = (5, 10, 20, 40, 80, 160, 320)
TRIALS = 20_000
SEED = 42


def main():
    config = ExperimentConfig(
        state=RandomState(3, SPECTRUM),
        scheme="klevel-pairs",
        schedule=SCHEDULE,
        trials=TRIALS,
        seed=SEED,
        metrics=("hs-unconstrained", "hs-constrained", "psd-fraction"),
    )
    record = run_trajectory(config, workers=4)
    print(f"spectrum {SPECTRUM}, {TRIALS} trials per point\n")
    print(f"{'r':>5} {'n':>6} {'hs uncon':>10} {'hs con':>10} {'psd frac':>9}")
    for p, r in enumerate(record.schedule):
        print(
            f"{r:>5} {record.copies[p]:>6} "
            f"{record.means['hs-unconstrained'][p]:>10.5f} "
            f"{record.means['hs-constrained'][p]:>10.5f} "
            f"{record.means['psd-fraction'][p]:>9.4f}"
        )
    print("\nthe constrained estimate is never farther from the truth, and the")
    print("gap closes as soon as the unconstrained estimate is PSD anyway.")


if __name__ == "__main__":
    main()
