"""HTTP JSON API over the simulated arm.

One executor worker thread owns arm state and drains a command queue;
request handlers only enqueue plans and read immutable snapshots, so the
service can fan the state stream out to any number of subscribers.
"""

from __future__ import annotations

import json
import queue
import threading
import time
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel

from .arm import build_px100, load_model
from .executor import PlanningError, SimWorld
from .ik import IKParams
from .intent import (DEFAULT_MAGNITUDE_M, IntentError, LlmBackendConfig,
                     interpret_llm, make_backend)
from .scene import DEMO_SCENE_PATH, detect, load_scene
from .stats import LatencyTable, latency_report


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8080
    scene_path: str = str(DEMO_SCENE_PATH)
    model_path: str | None = None
    backend: LlmBackendConfig = field(default_factory=LlmBackendConfig)
    ik_params: IKParams = field(default_factory=IKParams)
    rate_hz: float = 20.0

    def __post_init__(self):
        if not 0 < self.port < 65536:
            raise ValueError(f"invalid port {self.port}")
        if not Path(self.scene_path).exists():
            raise FileNotFoundError(f"scene file not found: {self.scene_path}")
        if self.model_path is not None and not Path(self.model_path).exists():
            raise FileNotFoundError(f"model file not found: {self.model_path}")

    @staticmethod
    def from_file(path) -> "ServiceConfig":
        doc = json.loads(Path(path).read_text())
        backend = LlmBackendConfig(**doc.get("backend", {}))
        ik = IKParams(**doc.get("ik_params", {}))
        return ServiceConfig(port=doc.get("port", 8080),
                             scene_path=doc.get("scene_path", str(DEMO_SCENE_PATH)),
                             model_path=doc.get("model_path"),
                             backend=backend, ik_params=ik,
                             rate_hz=doc.get("rate_hz", 20.0))


class CommandRequest(BaseModel):
    text: str
    transcript_confidence: float | None = None  # reserved for audio front-ends


class ArmService:
    """Owns the simulation, the backend, and the single executor worker."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        model = load_model(config.model_path) if config.model_path else build_px100()
        self._scene_objects, self._extrinsics = load_scene(config.scene_path)
        self.world = SimWorld(model, detect(self._scene_objects, self._extrinsics),
                              params=config.ik_params)
        self.backend = make_backend(config.backend)
        self._lock = threading.Lock()
        self._queue: queue.Queue = queue.Queue()
        self._accepted = 0
        self._latencies: list[dict] = []
        self._worker = threading.Thread(target=self._drain, daemon=True)
        self._running = threading.Event()
        self._running.set()
        self._worker.start()

    def close(self):
        self._running.clear()
        self._queue.put(None)
        self._worker.join(timeout=2.0)

    def _drain(self):
        while self._running.is_set():
            item = self._queue.get()
            if item is None:
                continue
            dt = 1.0 / self.config.rate_hz
            gen = self.world.execute(item, self.config.rate_hz)
            while True:
                with self._lock:  # each tick mutates world state
                    try:
                        next(gen)
                    except StopIteration:
                        break
                time.sleep(dt)

    def snapshot(self) -> dict:
        with self._lock:
            snap = self.world.snapshot()
        snap["queue_depth"] = self._queue.qsize()
        return snap

    def submit(self, text: str) -> dict:
        """Interpret, plan, enqueue. Returns a CommandResponse dict."""
        if not text or not text.strip():
            return {"accepted": False, "intent": None, "plan_summary": None,
                    "queue_position": None, "error": "empty command"}
        try:
            command = interpret_llm(text, self.backend)
        except IntentError as exc:
            return {"accepted": False, "intent": None, "plan_summary": None,
                    "queue_position": None, "error": str(exc)}
        if command.action == "clarify":
            return {"accepted": False, "intent": command.to_dict(),
                    "plan_summary": None, "queue_position": None,
                    "error": "command is ambiguous; please rephrase"}
        if command.action == "stop":
            self.world.request_stop()
            return {"accepted": True, "intent": command.to_dict(),
                    "plan_summary": "stop", "queue_position": 0, "error": None}
        try:
            with self._lock:
                plan = self.world.plan_for_intent(command)
        except PlanningError as exc:
            return {"accepted": False, "intent": command.to_dict(),
                    "plan_summary": None, "queue_position": None, "error": str(exc)}
        self._accepted += 1
        self._queue.put(plan)
        return {"accepted": True, "intent": command.to_dict(),
                "plan_summary": {"description": plan.description,
                                 "steps": [s.label for s in plan.steps]},
                "queue_position": self._accepted, "error": None}

    def reset_scene(self):
        with self._lock:
            self.world = SimWorld(self.world.model,
                                  detect(self._scene_objects, self._extrinsics),
                                  params=self.config.ik_params)

    def scene_document(self) -> dict:
        g = self.world.model.geometry
        return {
            "objects": [{"id": o.id, "color": o.color, "size_m": o.size_m,
                         "position_cam": o.position_cam.tolist()}
                        for o in self._scene_objects],
            "extrinsics": {
                "rotation": self._extrinsics.t_base_cam.rotation.tolist(),
                "translation": self._extrinsics.t_base_cam.position.tolist()},
            "model": {"lengths": {"L1": g.l1, "L2": g.l2, "Lm": g.lm,
                                  "L3": g.l3, "L4": g.l4},
                      "joint_limits": self.world.model.joint_limits.tolist()},
        }


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    service = ArmService(config)

    @asynccontextmanager
    async def lifespan(_app):
        yield
        service.close()

    app = FastAPI(title="nlarm", docs_url=None, redoc_url=None, lifespan=lifespan)
    app.state.service = service
    # Browser clients may be served from a different origin than the API.
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.get("/api/health")
    def health():
        return {"status": "ok", "backend": service.backend.name}

    @app.get("/api/state")
    def state():
        return service.snapshot()

    @app.get("/api/scene")
    def scene():
        return service.scene_document()

    @app.post("/api/scene/reset")
    def scene_reset():
        service.reset_scene()
        return {"reset": True}

    @app.post("/api/command")
    def command(request: CommandRequest):
        response = service.submit(request.text)
        status = 200 if response["accepted"] else 422
        return JSONResponse(response, status_code=status)

    @app.get("/api/metrics/latency")
    def latency():
        return latency_report(LatencyTable.from_file())

    @app.get("/api/state/stream")
    def stream(limit: int | None = None):
        """Server-sent JSON ticks at the configured rate; `limit` bounds the
        tick count for non-interactive consumers."""
        def ticks():
            dt = 1.0 / config.rate_hz
            sent = 0
            while limit is None or sent < limit:
                yield f"data: {json.dumps(service.snapshot())}\n\n"
                sent += 1
                time.sleep(dt)
        return StreamingResponse(ticks(), media_type="text/event-stream")

    return app


def serve(config: ServiceConfig):
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(config), host="0.0.0.0", port=config.port,
                log_level="warning")
