"""JSON-over-HTTP session service.

Sessions live in memory; per-session mutations are serialized under a lock
and guarded by an optimistic revision counter (409 on mismatch).  Every
successful mutation returns the refreshed full report so the explorer's
feedback loop is a single round-trip.
"""

from __future__ import annotations

import itertools
import threading
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from . import ragsdale
from .errors import Inadmissible, PatchworkError, ViewUnavailable
from .combinatorics import barycentric_positions
from .patchfile import emit_patch, load_patch, parse_patch, patch_from_state
from .render import render_view
from .session import Session, report_dict
from .zones import zone_decomposition


class RagsdaleParams(BaseModel):
    k: int
    single: Optional[dict] = None      # {"t": int, "m": int}


class CreateSession(BaseModel):
    patch: Optional[str] = None
    ragsdale: Optional[RagsdaleParams] = None


class ToggleTwist(BaseModel):
    dual: list[list[int]]
    revision: int


class FlipSign(BaseModel):
    point: list[int]
    revision: int


def create_app() -> FastAPI:
    app = FastAPI(title="patchwork")
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(sid: str) -> Session:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return s

    @app.post("/sessions")
    def create(req: CreateSession):
        try:
            if (req.patch is None) == (req.ragsdale is None):
                raise HTTPException(status_code=422,
                                    detail="provide exactly one of patch/ragsdale")
            if req.patch is not None:
                loaded = load_patch(parse_patch(req.patch))
                tri, twists = loaded.tri, loaded.twists
            else:
                params = req.ragsdale
                if params.single is not None:
                    block = ragsdale.single_block(params.k, params.single["t"],
                                                  params.single["m"])
                    tri, _, twists = ragsdale.realize_blocks(params.k, [block])
                else:
                    cfg = ragsdale.full_construction(params.k)
                    tri, twists = cfg.tri, cfg.twists
        except PatchworkError as exc:
            raise HTTPException(status_code=422,
                                detail={"code": exc.code, "message": str(exc)})
        with registry_lock:
            sid = f"s{next(counter)}"
            session = Session.create(sid, tri, twists)
            sessions[sid] = session
        return report_dict(session)

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        return report_dict(get_session(sid))

    def _mutate(sid: str, revision: int, action):
        s = get_session(sid)
        with s.lock:
            if revision != s.revision:
                raise HTTPException(
                    status_code=409,
                    detail={"message": "stale revision", "revision": s.revision})
            try:
                action(s)
            except Inadmissible as exc:
                raise HTTPException(status_code=422, detail={
                    "code": exc.code,
                    "message": str(exc),
                    "violated_cycle": list(exc.cycle_point) if exc.cycle_point else None,
                })
            except PatchworkError as exc:
                raise HTTPException(status_code=422,
                                    detail={"code": exc.code, "message": str(exc)})
            return report_dict(s)

    @app.post("/sessions/{sid}/toggle-twist")
    def toggle(sid: str, req: ToggleTwist):
        def action(s: Session):
            a, b = (tuple(req.dual[0]), tuple(req.dual[1]))
            ei = s.tri.edge_between(a, b)
            if ei is None:
                raise PatchworkError(f"no dual edge {a}-{b}")
            if not s.curve.edges[ei].bounded:
                raise PatchworkError("twists are bounded edges only")
            s.toggle_twist(ei)
        return _mutate(sid, req.revision, action)

    @app.post("/sessions/{sid}/flip-sign")
    def flip(sid: str, req: FlipSign):
        return _mutate(sid, req.revision,
                       lambda s: s.flip_sign(tuple(req.point)))

    @app.get("/sessions/{sid}/patch")
    def export_patch(sid: str):
        s = get_session(sid)
        text = emit_patch(patch_from_state(s.tri, s.twists, s.curve))
        return Response(content=text, media_type="text/plain")

    @app.get("/sessions/{sid}/svg")
    def svg(sid: str, view: str = "subdivision"):
        s = get_session(sid)
        try:
            zd = None
            if view == "zones":
                zd = zone_decomposition(s.curve, s.twists)
            doc = render_view(
                view, tri=s.tri, curve=s.curve, signs=s.signs, twists=s.twists,
                rp=s.analysis.real, zd=zd,
                positions=barycentric_positions(s.tri),
                nest=s.analysis.nest)
        except (ViewUnavailable, PatchworkError) as exc:
            raise HTTPException(status_code=422,
                                detail={"code": exc.code, "message": str(exc)})
        return Response(content=doc, media_type="image/svg+xml")

    return app


app = create_app()
