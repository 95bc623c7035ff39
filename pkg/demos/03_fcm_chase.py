"""Plot the chase scenario: fear dynamics under pursuit.

Runs the five-concept chase model twice (pursuer faster, then evader
faster), prints the distance/fear trajectories, and saves a matplotlib
figure next to this script if matplotlib is available.

Run:  python3 demos/03_fcm_chase.py
"""

from tagent.fcm import Outcome
from tagent.pursuit import DISTANCE, FEAR, PursuitParams, run_pursuit


def run_and_print(title: str, params: PursuitParams):
    trajectory, outcome = run_pursuit(params)
    distance = [s.vector[DISTANCE] for s in trajectory]
    fear = [s.vector[FEAR] for s in trajectory]
    print(f"\n=== {title} ===")
    print(f"outcome: {outcome.value} after {len(trajectory) - 1} iterations")
    print("  iter  distance   fear")
    step_iter = max(1, (len(trajectory) - 1) // 12)
    for i in range(0, len(trajectory), step_iter):
        print(f"  {i:>4}  {distance[i]:>8.4f}  {fear[i]:>6.3f}")
    if outcome is Outcome.ABSORBED:
        print("  -> the pursuer wins: the distance is absorbed at zero")
    else:
        print(
            f"  -> the evader escapes: distance settles at {distance[-1]:.3f}, "
            f"fear constant at {fear[-1]:.3f}"
        )
    return distance, fear, outcome


def main() -> None:
    capture = run_and_print(
        "pursuer faster (speeds 10 vs max 8)",
        PursuitParams(v_pursuer=10, v_evader_max=8, d_max=80, initial_distance_ratio=0.9),
    )
    escape = run_and_print(
        "evader faster (speeds 10 vs max 20)",
        PursuitParams(v_pursuer=10, v_evader_max=20, d_max=80, initial_distance_ratio=0.9),
    )

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not available; skipping the figure")
        return

    fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
    for ax, (distance, fear, outcome), title in zip(
        axes, (capture, escape), ("pursuer faster", "evader faster")
    ):
        ax.plot(distance, label="distance (normalized)", color="tab:blue")
        ax.plot([f / 3.0 for f in fear], label="fear / fear_max", color="tab:red")
        ax.set_title(f"{title}: {outcome.value}")
        ax.set_xlabel("iteration")
        ax.legend()
        ax.grid(alpha=0.3)
    fig.tight_layout()
    out = __file__.replace(".py", ".png")
    fig.savefig(out, dpi=120)
    print(f"\nfigure written to {out}")


if __name__ == "__main__":
    main()
