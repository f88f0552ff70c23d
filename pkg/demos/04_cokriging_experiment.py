"""Tri-variate co-kriging benchmark: shift-aware vs shift-blind predictor.

Generates truth from a conditional model in which fields 2 and 3 are
displaced copies of field 1 (shift 1.0), hides the first 50 sites of
field 1, and predicts them twice: with the true shifted model and with
the same model with shifts zeroed.  Averaged over seeds, honoring the
displacement roughly halves the prediction error.

Run: python3 demos/04_cokriging_experiment.py
"""

import time

import covkit as ck


def true_spec() -> ck.CressieSpec:
    return ck.CressieSpec(
        ck.MaternCov(ck.MaternParams(1.5, 1.0), 1.0),
        {
            2: ck.MaternCov(ck.MaternParams(1.5, 2.0), 0.25),
            3: ck.MaternCov(ck.MaternParams(1.5, 2.0), 0.25),
        },
        {
            (2, 1): ck.BFunc(1.0, 1.0, ck.Shift(1.0)),
            (3, 1): ck.BFunc(0.8, 1.0, ck.Shift(1.0)),
        },
        p=3,
    )


def main() -> None:
    cfg = ck.ExperimentConfig.replica_1d(true_spec(), seeds=tuple(range(20)))
    print(
        f"grid: {cfg.grid.n} sites, fields: 3, "
        f"targets: field {cfg.target_field} sites "
        f"{cfg.target_sites[0]}..{cfg.target_sites[-1]}, "
        f"{len(cfg.seeds)} seeds"
    )

    start = time.perf_counter()
    result = ck.run_experiment(cfg)
    elapsed = time.perf_counter() - start

    print(f"\nmodel            mean MAE   mean RMSE   wins")
    for model in ("with-shift", "without-shift"):
        rows = [(mae, rmse) for _, m, mae, rmse in result.rows if m == model]
        mean_mae = sum(r[0] for r in rows) / len(rows)
        mean_rmse = sum(r[1] for r in rows) / len(rows)
        wins = int(result.win_rate(model) * len(cfg.seeds))
        print(f"{model:<16} {mean_mae:<10.3f} {mean_rmse:<11.3f} {wins}/{len(cfg.seeds)}")

    ratio = result.mean_mae("with-shift") / result.mean_mae("without-shift")
    print(f"\nMAE ratio (with/without): {ratio:.3f}  [{elapsed:.2f}s]")

    # the same run is available from the command line:
    print(
        "\nequivalent CLI invocation:\n"
        "  covkit experiment --config configs/experiment_1d.toml --out results/"
    )


if __name__ == "__main__":
    main()
