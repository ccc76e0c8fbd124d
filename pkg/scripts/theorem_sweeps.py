"""Run reproduction cases over several seeds and write one JSON report per (case, seed)."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from tpkit.verify import CASES, verify_paper


@dataclass
class SweepConfig:
    cases: list[str] = field(default_factory=lambda: sorted(CASES))
    seeds: list[int] = field(default_factory=lambda: [1, 2, 3])
    trials: int | None = None
    out_dir: Path = Path("results/sweeps")


def run(cfg: SweepConfig) -> dict:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    summary = {}
    for case in cfg.cases:
        for seed in cfg.seeds:
            start = time.perf_counter()
            report = verify_paper(case, seed, cfg.trials)
            elapsed = time.perf_counter() - start
            (cfg.out_dir / f"{case}_seed{seed}.json").write_text(report.to_json())
            counts = report.counts()
            passed, failed, not_met = counts["pass"], counts["fail"], counts["hypothesis-not-met"]
            summary[f"{case}/{seed}"] = {
                "status": report.status, "passed": passed, "failed": failed,
                "not_met": not_met, "seconds": round(elapsed, 2),
            }
            print(f"{case:14s} seed={seed:<4d} {report.status:20s} {passed:6d} pass {failed:3d} fail  {elapsed:6.2f}s")
    cfg_dict = {k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(cfg).items()}
    (cfg.out_dir / "summary.json").write_text(json.dumps({"config": cfg_dict, "runs": summary}, indent=2, sort_keys=True))
    return summary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", nargs="+", choices=sorted(CASES), default=None)
    ap.add_argument("--seeds", nargs="+", type=int, default=None)
    ap.add_argument("--trials", type=int, default=None)
    ap.add_argument("--out-dir", type=Path, default=None)
    args = ap.parse_args()
    cfg = SweepConfig()
    if args.cases:
        cfg.cases = args.cases
    if args.seeds:
        cfg.seeds = args.seeds
    if args.trials is not None:
        cfg.trials = args.trials
    if args.out_dir:
        cfg.out_dir = args.out_dir
    summary = run(cfg)
    bad = [k for k, v in summary.items() if v["status"] == "fail"]
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
