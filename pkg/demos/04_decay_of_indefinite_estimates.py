"""How fast invertible states escape the indefinite region.

For an invertible true state the probability that the unconstrained
estimate fails to be PSD decays exponentially in the number of copies.
This fits log P(not PSD) against n for the fixed-spectrum 3-level state
and prints the slope and fit quality.
"""

from qtomo import indefinite_decay_rate, random_density, stream_rng

SPECTRUM = (0.1186, 0.2871, 0.5943)
SCHEDULE = (5, 10, 20, 40, 80, 160)
TRIALS = 20_000
SEED = 42


def main():
    rho = random_density(3, stream_rng(SEED, 0), SPECTRUM)
    fit = indefinite_decay_rate(rho, SCHEDULE, trials=TRIALS, seed=SEED)
    print(f"true spectrum: {SPECTRUM}, smallest eigenvalue {min(SPECTRUM)}\n")
    print(f"{'n':>6} {'P(not PSD)':>12}")
    for n, p in zip(fit.copies, fit.not_psd_fraction):
        print(f"{n:>6} {p:>12.5f}")
    print(f"\nlog-linear fit: slope {fit.slope:.5f} per copy, "
          f"intercept {fit.intercept:.3f}, R^2 = {fit.r_squared:.4f}")
    print(f"halving distance: every {0.6931 / -fit.slope:.0f} copies")


if __name__ == "__main__":
    main()
