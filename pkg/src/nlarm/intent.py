"""Free-text command interpretation.

Two interchangeable backends produce validated IntentCommand values: a
deterministic rule-based grammar (offline, never guesses) and an LLM-style
backend that returns JSON and is schema-validated on the way in. Scripted
LLM backends replay recorded responses for reproducible evaluation.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

ACTIONS = ("move", "pick_up", "place", "home", "sleep", "stop", "clarify")
DIRECTIONS = ("left", "right", "forward", "backward", "up", "down")
COLORS = ("red", "green", "blue")

OPPOSITE = {
    "left": "right", "right": "left",
    "forward": "backward", "backward": "forward",
    "up": "down", "down": "up",
}

DEFAULT_MAGNITUDE_M = 0.05

# Sent verbatim to live backends; scripted backends ignore it.
LLM_PROMPT_TEMPLATE = (
    "You control a robotic arm. Interpret the user's command and respond ONLY "
    "with a JSON object of the form "
    '{"action": one of ' + "|".join(ACTIONS) + ", "
    '"direction": one of ' + "|".join(DIRECTIONS) + " or null, "
    '"color": one of ' + "|".join(COLORS) + " or null, "
    '"magnitude": meters or null}. '
    "Interpret intent (e.g. opposite day inverts directions). "
    'If the command cannot be resolved to a single action, use "clarify".'
)


class IntentError(ValueError):
    """Base class for interpretation failures."""


class EmptyCommandError(IntentError):
    pass


class MalformedResponseError(IntentError):
    """Backend returned something that is not a JSON object."""


class SchemaViolationError(IntentError):
    """Backend JSON does not satisfy the command schema."""


class BackendUnavailableError(IntentError):
    """Live backend unreachable or timed out."""


@dataclass(frozen=True)
class IntentCommand:
    action: str
    direction: str | None = None
    color: str | None = None
    magnitude_m: float | None = None
    raw_text: str = ""

    def __post_init__(self):
        if self.action not in ACTIONS:
            raise SchemaViolationError(f"unknown action {self.action!r}")
        if self.direction is not None and self.direction not in DIRECTIONS:
            raise SchemaViolationError(f"unknown direction {self.direction!r}")
        if self.color is not None and self.color not in COLORS:
            raise SchemaViolationError(f"unknown color {self.color!r}")
        if self.action == "move" and self.direction is None:
            raise SchemaViolationError("move requires a direction")
        if self.action == "pick_up" and self.color is None:
            raise SchemaViolationError("pick_up requires a color")
        if self.magnitude_m is not None and not self.magnitude_m > 0:
            raise SchemaViolationError("magnitude must be positive")

    def to_dict(self) -> dict:
        return {"action": self.action, "direction": self.direction,
                "color": self.color, "magnitude_m": self.magnitude_m,
                "raw_text": self.raw_text}


def parse_intent_json(payload, raw_text: str = "") -> IntentCommand:
    """Validate a backend response (JSON text or dict) into an IntentCommand."""
    if isinstance(payload, (str, bytes)):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise MalformedResponseError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MalformedResponseError("response is not a JSON object")
    action = payload.get("action")
    if not isinstance(action, str):
        raise SchemaViolationError(f"action must be a string, got {action!r}")
    direction = payload.get("direction")
    if direction is not None and not isinstance(direction, str):
        raise SchemaViolationError(f"direction must be a string, got {direction!r}")
    color = payload.get("color")
    if color is not None and not isinstance(color, str):
        raise SchemaViolationError(f"color must be a string, got {color!r}")
    magnitude = payload.get("magnitude", payload.get("magnitude_m"))
    if magnitude is not None and not isinstance(magnitude, (int, float)):
        raise SchemaViolationError(f"magnitude must be a number, got {magnitude!r}")
    return IntentCommand(action=action, direction=direction, color=color,
                         magnitude_m=magnitude, raw_text=raw_text)


_WORD_NUM = {"one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
             "ten": 10, "twenty": 20}


def _find_magnitude(text: str) -> float | None:
    m = re.search(r"(\d+(?:\.\d+)?)\s*(cm|centimeters?|mm|millimeters?|m|meters?)\b", text)
    if not m:
        return None
    value = float(m.group(1))
    unit = m.group(2)
    if unit.startswith("c"):
        return value / 100.0
    if unit.startswith("mm") or unit.startswith("milli"):
        return value / 1000.0
    return value


def interpret_rule_based(text: str) -> IntentCommand:
    """Deterministic grammar: literal directions, "opposite of", the
    opposite-day inversion, color picks, and named poses. Anything needing
    open-ended reasoning returns a clarify command, never a guess."""
    if not text or not text.strip():
        raise EmptyCommandError("empty command")
    lowered = text.lower()
    words = re.findall(r"[a-z_']+", lowered)

    for action in ("home", "sleep", "stop"):
        if action in words:
            return IntentCommand(action=action, raw_text=text)

    if re.search(r"\b(pick|grab|lift)\b", lowered):
        colors = [c for c in COLORS if c in words]
        if len(colors) == 1:
            return IntentCommand(action="pick_up", color=colors[0], raw_text=text)
        return IntentCommand(action="clarify", raw_text=text)

    if re.search(r"\b(place|put|drop|release)\b", lowered):
        return IntentCommand(action="place", raw_text=text)

    verb = re.search(r"\b(move|go|shift|slide)\b", lowered)
    if verb:
        # refuse negated commands instead of inventing a legal direction
        if re.search(r"\b(not|don't|dont|won't|wont|never)\b", lowered):
            return IntentCommand(action="clarify", raw_text=text)
        # the direction must sit in the move clause itself; a direction
        # mentioned elsewhere in the sentence is narrative, not a command
        clause = " ".join(re.findall(r"[a-z_']+", lowered[verb.end():])[:7])
        clause = clause.replace("backwards", "backward").replace("upwards", "up")
        mentioned = [d for d in DIRECTIONS if re.search(rf"\b{d}\b", clause)]
        if len(mentioned) != 1:
            return IntentCommand(action="clarify", raw_text=text)
        direction = mentioned[0]
        if re.search(r"\bopposite\s+(of|to)\b", clause):
            direction = OPPOSITE[direction]
        if "opposite day" in lowered:
            direction = OPPOSITE[direction]
        magnitude = _find_magnitude(lowered)
        return IntentCommand(action="move", direction=direction,
                             magnitude_m=magnitude, raw_text=text)

    return IntentCommand(action="clarify", raw_text=text)


@dataclass(frozen=True)
class LlmBackendConfig:
    kind: str = "rule"  # rule | scripted_gpt35 | scripted_gpt4 | live
    endpoint: str = ""
    credential_env: str = "NLARM_LLM_API_KEY"
    model: str = ""
    timeout_s: float = 10.0
    script_path: str | None = None

    def __post_init__(self):
        if self.kind not in ("rule", "scripted_gpt35", "scripted_gpt4", "live"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "live" and not self.endpoint:
            raise ValueError("live backend requires an endpoint")


DATA_DIR = Path(__file__).parent / "data"


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9 ]", "", text.lower()).strip()


class RuleBackend:
    """Adapter giving the rule grammar the backend call signature."""

    name = "rule"

    def interpret(self, text: str, prompt: str = LLM_PROMPT_TEMPLATE) -> IntentCommand:
        return interpret_rule_based(text)


class ScriptedBackend:
    """Replays recorded responses keyed by normalized command text.

    Each entry holds one response body per trial; repeated calls with the
    same text cycle through the trials, so evaluation runs are reproducible.
    """

    def __init__(self, name: str, responses: dict[str, list], delay_s: float = 0.0):
        self.name = name
        self._responses = {key: list(bodies) for key, bodies in responses.items()}
        self._calls: dict[str, int] = {}
        self.delay_s = delay_s

    @classmethod
    def from_file(cls, path, name: str | None = None) -> "ScriptedBackend":
        doc = json.loads(Path(path).read_text())
        responses = {_normalize(entry["text"]): entry["responses"]
                     for entry in doc["entries"]}
        return cls(name or doc.get("name", "scripted"), responses)

    def interpret(self, text: str, prompt: str = LLM_PROMPT_TEMPLATE) -> IntentCommand:
        if self.delay_s:
            import time
            time.sleep(self.delay_s)
        key = _normalize(text)
        if key not in self._responses:
            raise BackendUnavailableError(f"no scripted response for {text!r}")
        trial = self._calls.get(key, 0)
        self._calls[key] = trial + 1
        bodies = self._responses[key]
        body = bodies[trial % len(bodies)]
        return parse_intent_json(body, raw_text=text)

    def reset(self):
        self._calls.clear()


class LiveBackend:
    """HTTP JSON backend (OpenAI-style chat endpoint); exercised only by
    smoke tests, never by the deterministic evaluation."""

    def __init__(self, config: LlmBackendConfig):
        self.name = "live"
        self.config = config

    def interpret(self, text: str, prompt: str = LLM_PROMPT_TEMPLATE) -> IntentCommand:
        import requests

        key = os.environ.get(self.config.credential_env, "")
        if not key:
            raise BackendUnavailableError(
                f"credential env var {self.config.credential_env} not set")
        payload = {
            "model": self.config.model or "gpt-4",
            "messages": [{"role": "system", "content": prompt},
                         {"role": "user", "content": text}],
        }
        try:
            resp = requests.post(self.config.endpoint, json=payload,
                                 headers={"Authorization": f"Bearer {key}"},
                                 timeout=self.config.timeout_s)
            resp.raise_for_status()
            content = resp.json()["choices"][0]["message"]["content"]
        except Exception as exc:  # timeouts, HTTP errors, missing fields
            raise BackendUnavailableError(str(exc)) from exc
        return parse_intent_json(content, raw_text=text)


def make_backend(config: LlmBackendConfig):
    if config.kind == "rule":
        return RuleBackend()
    if config.kind in ("scripted_gpt35", "scripted_gpt4"):
        default = DATA_DIR / f"{config.kind.removeprefix('scripted_')}_responses.json"
        return ScriptedBackend.from_file(config.script_path or default, name=config.kind)
    return LiveBackend(config)


def interpret_llm(text: str, backend, prompt: str = LLM_PROMPT_TEMPLATE) -> IntentCommand:
    """Run one interpretation through a backend object or config."""
    if not text or not text.strip():
        raise EmptyCommandError("empty command")
    if isinstance(backend, LlmBackendConfig):
        backend = make_backend(backend)
    return backend.interpret(text, prompt)


@dataclass(frozen=True)
class IntentEvalCase:
    id: int
    text: str
    expected_direction: str
    annotation_source: str = "annotated"


def load_eval_cases(path=None) -> list[IntentEvalCase]:
    doc = json.loads(Path(path or DATA_DIR / "intent_cases.json").read_text())
    cases = [IntentEvalCase(c["id"], c["text"], c["expected_direction"],
                            c.get("annotation_source", "annotated"))
             for c in doc["cases"]]
    ids = [c.id for c in cases]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate case ids in eval file")
    return cases


def evaluate_table1(backend, cases: list[IntentEvalCase] | None = None,
                    trials: int = 3) -> dict[int, list[dict]]:
    """Run each case the given number of trials; PASS iff the interpreted
    direction equals the annotated one. Backend errors count as FAIL."""
    if isinstance(backend, LlmBackendConfig):
        backend = make_backend(backend)
    cases = cases if cases is not None else load_eval_cases()
    grid: dict[int, list[dict]] = {}
    for case in cases:
        results = []
        for _ in range(trials):
            try:
                cmd = interpret_llm(case.text, backend)
                got = cmd.direction if cmd.action == "move" else None
                ok = got == case.expected_direction
                results.append({"pass": ok, "direction": got,
                                "action": cmd.action})
            except IntentError as exc:
                results.append({"pass": False, "direction": None,
                                "action": None, "error": str(exc)})
        grid[case.id] = results
    return grid


def format_table1(grid: dict[int, list[dict]], name: str = "") -> str:
    trials = max((len(v) for v in grid.values()), default=0)
    header = "Command  " + "  ".join(f"Trial {i + 1}" for i in range(trials))
    lines = [f"Intent interpretation ({name})" if name else "Intent interpretation",
             header]
    for cid in sorted(grid):
        cells = "  ".join(f"{'PASS' if r['pass'] else 'FAIL':7}" for r in grid[cid])
        lines.append(f"{cid:7}  {cells}")
    return "\n".join(lines)
