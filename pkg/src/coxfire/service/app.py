"""HTTP facade over the coxfire library.

Every endpoint is a stateless POST: the request carries the graph text plus
whatever words or orientations the operation needs, the response carries the
decision. Domain errors (bad input, disconnected graphs, exhausted search
budgets) become 400s with the library's message as detail; a negative
decision is a normal 200 payload.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__
from ..checks import run_graph_checks
from ..conjugacy import (
    ConjugacyWitness,
    build_representation,
    conjugacy_classes,
    conjugacy_witness,
    enumerate_group,
    oracle_are_conjugate,
    replay_witness,
)
from ..graph import CoxeterGraph, DisconnectedGraphError, GraphParseError, parse_graph
from ..orientation import (
    StateBudgetExceeded,
    enumerate_acyclic_orientations,
    parse_orientation,
    reachable,
)
from ..words import orientation_from_word, parse_word, require_coxeter_word
from .schemas import (
    CheckItem,
    CheckRequest,
    CheckResponse,
    ClassEntry,
    ClassesResponse,
    ConjugateRequest,
    ConjugateResponse,
    EnumerateResponse,
    FireRequest,
    FireResponse,
    GraphRequest,
    HealthResponse,
    OracleRequest,
    OracleResponse,
    OrientRequest,
    OrientResponse,
    PlaybackRequest,
    PlaybackResponse,
    TraceStep,
    WitnessModel,
)


def _graph(text: str) -> CoxeterGraph:
    try:
        return parse_graph(text)
    except GraphParseError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _connected_graph(text: str) -> CoxeterGraph:
    g = _graph(text)
    if not g.is_connected():
        raise HTTPException(
            status_code=400,
            detail="graph is disconnected; run each connected component separately",
        )
    return g


def create_app() -> FastAPI:
    app = FastAPI(
        title="coxfire",
        description="Conjugacy of Coxeter elements via firing games on acyclic edge orientations",
        version=__version__,
    )

    @app.exception_handler(ValueError)
    async def _value_error(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(StateBudgetExceeded)
    async def _budget_error(request, exc):
        return JSONResponse(status_code=400, content={"detail": f"budget exceeded: {exc}"})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/classes", response_model=ClassesResponse)
    def classes(req: GraphRequest) -> ClassesResponse:
        g = _connected_graph(req.graph)
        by_signature = conjugacy_classes(g)
        entries = [
            ClassEntry(
                signature=list(sig),
                size=len(members),
                representative=" ".join(members[0].word),
            )
            for sig, members in by_signature.items()
        ]
        return ClassesResponse(
            elements=sum(e.size for e in entries),
            classes=entries,
        )

    @app.post("/conjugate", response_model=ConjugateResponse)
    def conjugate(req: ConjugateRequest) -> ConjugateResponse:
        g = _connected_graph(req.graph)
        w1 = require_coxeter_word(parse_word(req.word1, g), g)
        w2 = require_coxeter_word(parse_word(req.word2, g), g)
        o1 = orientation_from_word(w1, g)
        o2 = orientation_from_word(w2, g)
        response = ConjugateResponse(
            conjugate=reachable(o1, o2),
            signature1=list(o1.circulation_signature()),
            signature2=list(o2.circulation_signature()),
        )
        if response.conjugate and req.witness:
            witness = conjugacy_witness(w1, w2, g, max_states=req.budget)
            chain = []
            current = w1
            for step in witness.trace:
                current = replay_witness(current, ConjugacyWitness((), (step,)), g)
                chain.append(" ".join(current))
            response.witness = WitnessModel(
                conjugator=list(witness.conjugator),
                trace=[
                    TraceStep(kind="rotate", letter=step[1])
                    if step[0] == "rotate"
                    else TraceStep(kind="swap", position=step[1])
                    for step in witness.trace
                ],
                chain=chain,
            )
        return response

    @app.post("/orient", response_model=OrientResponse)
    def orient(req: OrientRequest) -> OrientResponse:
        g = _graph(req.graph)
        w = parse_word(req.word, g)
        if not w:
            raise HTTPException(status_code=400, detail="empty word")
        o = orientation_from_word(w, g)
        return OrientResponse(orientation=o.to_text(), dot=o.to_dot())

    @app.post("/fire", response_model=FireResponse)
    def fire(req: FireRequest) -> FireResponse:
        g = _graph(req.graph)
        o = parse_orientation(req.orientation, g)
        if req.vertex not in g:
            raise HTTPException(status_code=400, detail=f"unknown generator {req.vertex!r}")
        if o.is_sink(req.vertex):
            return FireResponse(orientation=o.fire_sink(req.vertex).to_text(), fired_as="sink")
        if o.is_source(req.vertex):
            return FireResponse(orientation=o.fire_source(req.vertex).to_text(), fired_as="source")
        raise HTTPException(
            status_code=400, detail=f"{req.vertex!r} is neither a sink nor a source"
        )

    @app.post("/playback", response_model=PlaybackResponse)
    def playback(req: PlaybackRequest) -> PlaybackResponse:
        g = _connected_graph(req.graph)
        o = parse_orientation(req.orientation, g)
        return PlaybackResponse(sequence=list(o.playback_sequence(req.vertex)))

    @app.post("/enumerate", response_model=EnumerateResponse)
    def enumerate_orientations(req: GraphRequest) -> EnumerateResponse:
        g = _graph(req.graph)
        orientations = enumerate_acyclic_orientations(g)
        return EnumerateResponse(
            count=len(orientations),
            orientations=[o.to_text() for o in orientations],
        )

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: OracleRequest) -> OracleResponse:
        g = _connected_graph(req.graph)
        w1 = require_coxeter_word(parse_word(req.word1, g), g)
        w2 = require_coxeter_word(parse_word(req.word2, g), g)
        rep = build_representation(g, req.kind)
        group = enumerate_group(rep, req.budget)
        verdict = oracle_are_conjugate(w1, w2, rep, group=group)
        return OracleResponse(conjugate=verdict, kind=rep.kind, group_order=len(group))

    @app.post("/check", response_model=CheckResponse)
    def check(req: CheckRequest) -> CheckResponse:
        g = _graph(req.graph)
        results = run_graph_checks(g)
        return CheckResponse(
            ok=all(r.status != "fail" for r in results),
            results=[CheckItem(name=r.name, status=r.status, detail=r.detail) for r in results],
        )

    return app


app = create_app()
