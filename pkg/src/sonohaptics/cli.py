"""Command-line harness: analyze, replay, simulate, render, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, crossmodal, synthesis
from .crossmodal import HeadPose
from .engine import EngineConfig
from .scene import SceneError, load_scene
from .server import FeedbackServer


def _vec3_arg(raw: str) -> tuple[float, float, float]:
    parts = [float(p) for p in raw.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected x,y,z")
    return tuple(parts)


def _cmd_analyze(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    report = analysis.analyze(
        scene, mode=args.mode, anchor=args.anchor, radius=args.radius,
        head=HeadPose(position=args.eye),
    )
    payload = report.to_dict()
    if args.json:
        Path(args.json).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"scene: {scene.name}  mode: {report.mode}"
          + (f"  cluster: {len(report.cluster)}" if report.cluster else ""))
    print(f"{'id':<24}{'pitch Hz':>10}{'amp':>8}{'pan':>8}  timbre")
    for oid, cue in sorted(payload["objects"].items()):
        print(f"{oid:<24}{cue['pitch_hz']:>10.2f}{cue['amplitude']:>8.3f}"
              f"{cue['pan']:>8.3f}  {cue['timbre']}")
    print(f"min pitch gap: {report.min_pitch_gap_hz:.2f} Hz  "
          f"min amplitude gap: {report.min_amplitude_gap:.4f}")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    events = analysis.replay(scene, args.trace, EngineConfig(cue_kind=args.cue_kind))
    analysis.write_event_log(events, args.out)
    print(f"{len(events)} events -> {args.out}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    report = analysis.simulate(
        scene,
        noise_sigma_deg=args.noise_deg,
        trials=args.trials,
        seed=args.seed,
        eye_origin=args.eye,
        cast_radius=args.radius,
    )
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    try:
        obj = scene.get(args.object)
    except KeyError:
        print(f"error: no object {args.object!r} in scene", file=sys.stderr)
        return 2
    params = analysis.scene_stats(scene)
    cue = crossmodal.global_cue(obj, params, HeadPose(position=args.eye),
                                kind=args.cue_kind)
    buf = synthesis.render_cue_audio(cue)
    synthesis.write_wav(buf, args.wav)
    print(f"cue: pitch {cue.pitch_hz:.2f} Hz, amplitude {cue.amplitude:.4f}, "
          f"pan {cue.pan:+.3f}, timbre {cue.timbre}")
    print(f"audio -> {args.wav}")
    if args.haptics:
        Path(args.haptics).write_text(synthesis.render_cue_haptics(cue).to_json() + "\n")
        print(f"haptics -> {args.haptics}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    config = EngineConfig(cue_kind=args.cue_kind)
    if args.ws:
        import uvicorn

        from .server import make_ws_app

        app = make_ws_app(scene, config, static_dir=args.static)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0
    server = FeedbackServer(scene, args.port, host=args.host, config=config)
    print(f"serving {scene.name!r} on {args.host}:{args.port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sonohaptics",
                                     description="Audio-haptic feedback engine for gaze selection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="per-object cue table and gap statistics")
    p.add_argument("scene")
    p.add_argument("--mode", choices=("global", "local"), default="global")
    p.add_argument("--anchor", help="anchor object id (local mode)")
    p.add_argument("--radius", type=float, default=1.0, help="local cluster radius, m")
    p.add_argument("--eye", type=_vec3_arg, default=analysis.DEFAULT_EYE_ORIGIN)
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("replay", help="replay a gaze trace to an event log")
    p.add_argument("scene")
    p.add_argument("trace")
    p.add_argument("--out", required=True, help="output event JSONL path")
    p.add_argument("--cue-kind", choices=("sonohaptics", "static", "silent"),
                   default="sonohaptics")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("simulate", help="noisy-gaze selection simulation")
    p.add_argument("scene")
    p.add_argument("--noise-deg", type=float, default=analysis.DEFAULT_NOISE_SIGMA_DEG)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eye", type=_vec3_arg, default=analysis.DEFAULT_EYE_ORIGIN)
    p.add_argument("--radius", type=float, default=0.5, help="sphere cast radius")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("render", help="render one object's cue to WAV/JSON")
    p.add_argument("scene")
    p.add_argument("--object", required=True)
    p.add_argument("--wav", required=True)
    p.add_argument("--haptics", help="optional haptic JSON output path")
    p.add_argument("--eye", type=_vec3_arg, default=analysis.DEFAULT_EYE_ORIGIN)
    p.add_argument("--cue-kind", choices=("sonohaptics", "static", "silent"),
                   default="sonohaptics")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="run the interactive session server")
    p.add_argument("scene")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cue-kind", choices=("sonohaptics", "static", "silent"),
                   default="sonohaptics")
    p.add_argument("--ws", action="store_true",
                   help="serve WebSocket (/ws) instead of raw TCP; needs the 'ws' extra")
    p.add_argument("--static", help="directory of demo UI files to serve in --ws mode")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except analysis.TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
