"""Hunt for disagreements: generate a few hundred random problems, verify
every one in lockstep, and arbitrate each verdict with the brute-force
oracle. A clean campaign prints one line; any defect prints the seed that
reproduces it, which is the whole point of seeding.
"""

import json

from lockstep.harness import GenParams, emit_trace, fuzz_campaign, random_problem

CAMPAIGN_SIZE = 300


def main() -> None:
    report = fuzz_campaign(CAMPAIGN_SIZE, base_seed=0)
    if report.ok:
        print(f"{report.total} random problems: verdicts agreed, "
              f"models checked, all invariants held")
    else:
        print(f"{len(report.failures)} of {report.total} instances failed:")
        for seed, msgs in report.failures:
            print(f"  seed {seed}:")
            for m in msgs:
                print(f"    {m}")

    # show what one full trace looks like, on the smallest seeded instance
    problem = random_problem(GenParams(seed=0, clause_count=3, max_len=2))
    trace = emit_trace(problem)
    print("\na complete trace, as the CLI would emit with simulate --json:")
    print(json.dumps(trace, indent=2))


if __name__ == "__main__":
    main()
