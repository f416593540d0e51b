"""Edge-vs-cloud latency analysis.

Recomputes the per-command summary table from the recorded trials, runs the
paired t-test over the per-command means, and times the local interpret
pipeline for comparison.
"""

from nlarm.intent import LlmBackendConfig
from nlarm.stats import (LatencyTable, format_latency_report, latency_report,
                         summarize, time_pipeline)

table = LatencyTable.from_file()
report = latency_report(table)
print(format_latency_report(report))

print("\nlocal rule-backend interpret timing (for scale):")
samples = time_pipeline("move to the left", LlmBackendConfig(kind="rule"),
                        repetitions=5)
mean, sd = summarize(samples)
print(f"  {len(samples)} reps: mean {mean * 1e6:.0f} us, stdev {sd * 1e6:.0f} us")
