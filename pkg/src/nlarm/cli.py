"""Command-line entry points for every pipeline stage.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .arm import build_px100, fk_space, load_model
from .executor import PlanningError, SimWorld
from .ik import IKParams, TargetError, ik_newton_raphson, reachable_target
from .intent import (IntentError, LlmBackendConfig, evaluate_table1,
                     format_table1, interpret_llm, load_eval_cases, make_backend)
from .scene import DEMO_SCENE_PATH, SceneFormatError, detect, load_scene
from .stats import (LatencyTable, StatsError, format_latency_report,
                    latency_report, summarize, time_pipeline)


def _csv_floats(text: str, n: int, flag: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{flag} expects {n} comma-separated values")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{flag}: {exc}") from exc


def _model(args):
    return load_model(args.model) if getattr(args, "model", None) else build_px100()


def cmd_fk(args) -> int:
    model = _model(args)
    pose = fk_space(model, _csv_floats(args.q, 4, "--q"))
    print("position:", np.round(pose.position, 6).tolist())
    print("rotation:")
    for row in np.round(pose.rotation, 6):
        print(" ", row.tolist())
    return 0


def cmd_ik(args) -> int:
    model = _model(args)
    try:
        target = reachable_target(_csv_floats(args.pos, 3, "--pos"), args.pitch)
    except TargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = ik_newton_raphson(model, target, np.zeros(4), IKParams())
    print("converged:", result.converged, f"({result.iterations} iterations)")
    print("q:", np.round(result.q, 6).tolist())
    if not result.converged:
        print(f"residual: omega {result.error_omega:.2e} rad, v {result.error_v:.2e} m")
        return 2
    return 0


def _backend_config(args) -> LlmBackendConfig:
    return LlmBackendConfig(kind=args.backend,
                            endpoint=getattr(args, "endpoint", "") or "",
                            script_path=getattr(args, "script", None))


def cmd_eval_intents(args) -> int:
    backend = make_backend(_backend_config(args))
    grid = evaluate_table1(backend, trials=args.trials)
    print(format_table1(grid, name=backend.name))
    return 0


def cmd_reproduce_stats(args) -> int:
    try:
        table = LatencyTable.from_file(args.fixture)
    except (StatsError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = latency_report(table)
    print(format_latency_report(report))
    if args.json:
        print(json.dumps(report, indent=2))
    return 0


def cmd_pick_demo(args) -> int:
    model = _model(args)
    try:
        objects, ext = load_scene(args.scene)
    except (SceneFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    colors = [args.color] if args.color else ["red", "blue", "green"]
    failures = 0
    for color in colors:
        for trial in range(1, args.trials + 1):
            world = SimWorld(model, detect(objects, ext))
            try:
                plan = world.plan_pick_color(color)
                final = world.run(plan)
            except PlanningError as exc:
                print(f"{color} trial {trial}: FAIL ({exc})")
                failures += 1
                continue
            held = final.held_object
            lifted = held and world.objects[held].position_base[2]
            ok = held is not None and lifted >= 0.05
            print(f"{color} trial {trial}: {'PASS' if ok else 'FAIL'} "
                  f"(held={held}, z={lifted if held else float('nan'):.3f})")
            failures += 0 if ok else 1
    print(f"{args.trials * len(colors) - failures}/{args.trials * len(colors)} picks succeeded")
    return 0 if failures == 0 else 2


def cmd_bench(args) -> int:
    backend = make_backend(_backend_config(args))
    cases = load_eval_cases()
    print(f"backend: {backend.name}, repetitions: {args.reps}")
    for case in cases:
        samples = time_pipeline(case.text, backend, repetitions=args.reps)
        if not samples:
            print(f"command {case.id}: no samples")
            continue
        if len(samples) >= 2:
            mean, sd = summarize(samples)
        else:
            mean, sd = samples[0], 0.0
        print(f"command {case.id}: mean {mean * 1000:.2f} ms, stdev {sd * 1000:.2f} ms")
    return 0


def cmd_repl(args) -> int:
    model = _model(args)
    objects, ext = load_scene(args.scene)
    world = SimWorld(model, detect(objects, ext))
    backend = make_backend(_backend_config(args))
    print("type a command (blank line or Ctrl-D to quit)")
    while True:
        try:
            line = input("> ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            return 0
        try:
            command = interpret_llm(line, backend)
        except IntentError as exc:
            print(f"  could not interpret: {exc}")
            continue
        print(f"  intent: {command.to_dict()}")
        if command.action == "clarify":
            print("  please rephrase")
            continue
        try:
            plan = world.plan_for_intent(command)
        except PlanningError as exc:
            print(f"  cannot plan: {exc}")
            continue
        final = world.run(plan)
        snap = world.snapshot()
        print(f"  executed {len(plan)} step(s); ee at "
              f"{np.round(snap['ee_position'], 4).tolist()}, "
              f"gripper {final.gripper}, held {final.held_object}")


def cmd_serve(args) -> int:
    from .service import ServiceConfig, serve

    if args.config:
        config = ServiceConfig.from_file(args.config)
    else:
        config = ServiceConfig(port=args.port, scene_path=args.scene,
                               backend=_backend_config(args))
    serve(config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlarm",
                                     description="natural-language robot arm simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_backend(p, default="rule"):
        p.add_argument("--backend", default=default,
                       choices=["rule", "scripted_gpt35", "scripted_gpt4", "live"])
        p.add_argument("--endpoint", default="", help="live backend URL")
        p.add_argument("--script", default=None, help="scripted responses file")

    p = sub.add_parser("fk", help="forward kinematics of a joint vector")
    p.add_argument("--q", required=True, help="four comma-separated angles, rad")
    p.add_argument("--model", default=None)
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("ik", help="inverse kinematics for position + pitch")
    p.add_argument("--pos", required=True, help="x,y,z in meters")
    p.add_argument("--pitch", type=float, default=0.0)
    p.add_argument("--model", default=None)
    p.set_defaults(func=cmd_ik)

    p = sub.add_parser("eval-intents", help="run the intent benchmark grid")
    add_backend(p, default="scripted_gpt4")
    p.add_argument("--trials", type=int, default=3)
    p.set_defaults(func=cmd_eval_intents)

    p = sub.add_parser("reproduce-stats", help="latency table and paired t-test")
    p.add_argument("--fixture", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce_stats)

    p = sub.add_parser("pick-demo", help="run pick trials on the demo scene")
    p.add_argument("--color", default=None, choices=["red", "blue", "green"])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--scene", default=str(DEMO_SCENE_PATH))
    p.add_argument("--model", default=None)
    p.set_defaults(func=cmd_pick_demo)

    p = sub.add_parser("bench", help="time the interpret pipeline")
    add_backend(p)
    p.add_argument("--reps", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("repl", help="interactive command loop")
    add_backend(p)
    p.add_argument("--scene", default=str(DEMO_SCENE_PATH))
    p.add_argument("--model", default=None)
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("serve", help="run the HTTP service")
    add_backend(p)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--scene", default=str(DEMO_SCENE_PATH))
    p.add_argument("--config", default=None, help="JSON service config file")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
