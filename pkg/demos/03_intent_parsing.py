"""Command interpretation demonstration.

Runs a handful of phrasings through the deterministic rule backend, then
reproduces the recorded evaluation grids for both scripted LLM backends.
"""

from nlarm import interpret_rule_based
from nlarm.intent import LlmBackendConfig, evaluate_table1, format_table1

phrases = [
    "move to the left",
    "move to the opposite of right",
    "Pretend it's opposite day, now move to the right",
    "pick up the red cube",
    "move up 3 cm",
    "move to where you won't be scared",  # no guessing: clarify
]
print("rule backend:")
for text in phrases:
    cmd = interpret_rule_based(text)
    print(f"  {text!r:60} -> {cmd.action}"
          + (f" {cmd.direction}" if cmd.direction else "")
          + (f" {cmd.color}" if cmd.color else ""))

for kind in ("scripted_gpt35", "scripted_gpt4"):
    print()
    print(format_table1(evaluate_table1(LlmBackendConfig(kind=kind), trials=3),
                        name=kind))
