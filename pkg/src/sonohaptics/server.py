"""Newline-delimited JSON session server for the interactive demo.

Each connection gets its own engine over a shared immutable scene; message
handling within a session is serialized by the per-connection thread, so no
cross-session state exists. The same session logic is reused by the optional
WebSocket transport (``serve --ws``), which speaks identical JSON messages,
one per WebSocket text frame.
"""

from __future__ import annotations

import json
import socketserver
import threading

from . import crossmodal
from .analysis import apply_trace_entry
from .engine import Engine, EngineConfig, EngineEvent, NoAnchorError
from .scene import Scene, scene_to_dict

CLIENT_TYPES = ("hello", "gaze", "activate", "deactivate", "enter_local", "exit_local", "select")


def event_to_message(event: EngineEvent) -> dict:
    """Map one engine event onto the wire protocol."""
    if event.type == "activated":
        return {"type": "mode", "mode": "global", "t": event.t}
    if event.type == "deactivated":
        return {"type": "mode", "mode": "idle", "t": event.t}
    if event.type == "mode_changed":
        message = {"type": "mode", "mode": event.mode, "t": event.t}
        if event.cluster is not None:
            message["cluster"] = list(event.cluster)
        return message
    if event.type == "hover_enter":
        return {"type": "hover", "object": event.object, "cue": event.cue.to_dict(), "t": event.t}
    if event.type == "hover_exit":
        return {"type": "hover_exit", "object": event.object, "t": event.t}
    if event.type == "selection_confirmed":
        return {"type": "selection", "object": event.object, "t": event.t}
    raise ValueError(f"unmapped event type {event.type!r}")


class Session:
    """Transport-agnostic session: one engine, one message dialect."""

    def __init__(self, scene: Scene, config: EngineConfig = EngineConfig()):
        self.scene = scene
        self.config = config
        self.engine = Engine(scene, config)

    def hello_message(self) -> dict:
        return {
            "type": "scene",
            "scene": scene_to_dict(self.scene),
            "presets": {
                m: p.to_dict() for m, p in crossmodal.DEFAULT_TIMBRE_PRESETS.items()
            },
            "config": {
                "cast_radius": self.config.cast_radius,
                "local_radius": self.config.local_radius,
                "cue_kind": self.config.cue_kind,
            },
        }

    def handle(self, message: dict) -> list[dict]:
        """Apply one client message; returns the replies to push."""
        msg_type = message.get("type")
        if msg_type not in CLIENT_TYPES:
            return [{"type": "error", "msg": f"unknown message type {msg_type!r}"}]
        if msg_type == "hello":
            return [self.hello_message()]
        try:
            if msg_type == "gaze":
                entry = {
                    "t": float(message.get("t", 0.0)),
                    "origin": message["origin"],
                    "dir": message["dir"],
                    "head_forward": message["head_forward"],
                    "head_pos": message["head_pos"],
                }
            else:
                cmd = "select" if msg_type == "select" else msg_type
                entry = {"cmd": cmd, "t": float(message.get("t", 0.0))}
            events = apply_trace_entry(self.engine, entry)
        except NoAnchorError as exc:
            return [{"type": "error", "msg": str(exc)}]
        except (KeyError, TypeError, ValueError) as exc:
            return [{"type": "error", "msg": f"bad message: {exc}"}]
        return [event_to_message(e) for e in events]

    def handle_line(self, line: str) -> list[dict]:
        try:
            message = json.loads(line)
        except json.JSONDecodeError as exc:
            return [{"type": "error", "msg": f"malformed JSON: {exc}"}]
        if not isinstance(message, dict):
            return [{"type": "error", "msg": "message must be a JSON object"}]
        return self.handle(message)


class _SessionHandler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        session = Session(self.server.scene, self.server.engine_config)
        for raw in self.rfile:
            line = raw.decode("utf-8").strip()
            if not line:
                continue
            for reply in session.handle_line(line):
                self.wfile.write((json.dumps(reply, sort_keys=True) + "\n").encode("utf-8"))
            self.wfile.flush()


class FeedbackServer(socketserver.ThreadingTCPServer):
    """One engine per connection; connections may run concurrently."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, scene: Scene, port: int, host: str = "127.0.0.1",
                 config: EngineConfig = EngineConfig()):
        self.scene = scene
        self.engine_config = config
        super().__init__((host, port), _SessionHandler)

    def serve_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        return thread


def make_ws_app(scene: Scene, config: EngineConfig = EngineConfig(), static_dir: str | None = None):
    """Build a FastAPI app exposing the protocol over WebSocket at /ws.

    Requires the 'ws' extra (fastapi + uvicorn). When static_dir is given the
    app also serves the browser demo from /.
    """
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect

    app = FastAPI()

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket) -> None:
        await websocket.accept()
        session = Session(scene, config)
        try:
            while True:
                line = await websocket.receive_text()
                for reply in session.handle_line(line):
                    await websocket.send_text(json.dumps(reply, sort_keys=True))
        except WebSocketDisconnect:
            pass

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="demo")

    return app
