"""CLI wrapper for orchestrator.run_experiment."""

from orchestrator.run_experiment import main as run_experiment_main


def main() -> int:
    return run_experiment_main()


if __name__ == "__main__":
    raise SystemExit(main())
