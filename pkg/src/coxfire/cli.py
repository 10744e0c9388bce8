"""coxfire command line: a thin client for the HTTP service.

Every subcommand reads the graph file, sends one request, and formats the
response. By default the service runs in-process (no server needed);
`--server URL` targets a running `coxfire serve` instance instead.

Exit codes: 0 success, 1 negative decision (a NO answer or a failed check),
2 usage or input error (including exhausted search budgets).
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Optional

import httpx

from .orientation import DEFAULT_STATE_BUDGET

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def _request(server: Optional[str], path: str, payload: dict) -> tuple[int, dict]:
    try:
        if server:
            with httpx.Client(base_url=server, timeout=300.0) as client:
                response = client.post(path, json=payload)
        else:
            from .service.app import create_app

            async def call() -> httpx.Response:
                transport = httpx.ASGITransport(app=create_app())
                async with httpx.AsyncClient(
                    transport=transport, base_url="http://coxfire.local"
                ) as client:
                    return await client.post(path, json=payload)

            response = asyncio.run(call())
    except httpx.HTTPError as exc:
        raise CliError(f"request failed: {exc}") from exc
    try:
        body = response.json()
    except ValueError:
        body = {"detail": response.text}
    return response.status_code, body


def _call(args: argparse.Namespace, path: str, payload: dict) -> dict:
    status, body = _request(args.server, path, payload)
    if status != 200:
        detail = body.get("detail", body)
        raise CliError(f"{path[1:]}: {detail}")
    return body


def _read_graph(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read graph file: {exc}") from exc


def _signature_text(values: list[int]) -> str:
    return ",".join(str(v) for v in values) or "-"


def cmd_classes(args: argparse.Namespace) -> int:
    body = _call(args, "/classes", {"graph": _read_graph(args.graph)})
    lines = [
        f"signature={','.join(str(v) for v in c['signature'])}"
        f" size={c['size']} representative={c['representative']}"
        for c in body["classes"]
    ]
    if not args.machine:
        print(f"{body['elements']} Coxeter elements in {len(body['classes'])} conjugacy classes")
    print("\n".join(lines))
    return EXIT_OK


def cmd_conjugate(args: argparse.Namespace) -> int:
    body = _call(
        args,
        "/conjugate",
        {
            "graph": _read_graph(args.graph),
            "word1": args.word1,
            "word2": args.word2,
            "witness": not args.machine,
            "budget": args.budget,
        },
    )
    if args.machine:
        print("conjugate=yes" if body["conjugate"] else "conjugate=no")
        return EXIT_OK if body["conjugate"] else EXIT_NO
    if not body["conjugate"]:
        print("NO")
        print(f"signature of word 1: {_signature_text(body['signature1'])}")
        print(f"signature of word 2: {_signature_text(body['signature2'])}")
        return EXIT_NO
    print("YES")
    witness = body.get("witness")
    if witness:
        print(f"conjugator: {' '.join(witness['conjugator']) or '(empty)'}")
        print(f"  {args.word1}")
        for word in witness["chain"]:
            print(f"~ {word}")
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    body = _call(
        args,
        "/conjugate",
        {
            "graph": _read_graph(args.graph),
            "word1": args.word1,
            "word2": args.word2,
            "witness": True,
            "budget": args.budget,
        },
    )
    if not body["conjugate"]:
        print("NO")
        return EXIT_NO
    witness = body["witness"]
    if args.machine:
        print(f"conjugator={','.join(witness['conjugator'])}")
        for step in witness["trace"]:
            if step["kind"] == "rotate":
                print(f"step=rotate:{step['letter']}")
            else:
                print(f"step=swap:{step['position']}")
        return EXIT_OK
    print(f"conjugator: {' '.join(witness['conjugator']) or '(empty)'}")
    current = args.word1
    print(f"  {current}")
    for step, word in zip(witness["trace"], witness["chain"]):
        move = (
            f"rotate {step['letter']}"
            if step["kind"] == "rotate"
            else f"swap positions {step['position']},{step['position'] + 1}"
        )
        print(f"~ {word}    ({move})")
    return EXIT_OK


def cmd_orient(args: argparse.Namespace) -> int:
    body = _call(args, "/orient", {"graph": _read_graph(args.graph), "word": args.word})
    print(body["dot"] if args.dot else body["orientation"])
    return EXIT_OK


def cmd_fire(args: argparse.Namespace) -> int:
    body = _call(
        args,
        "/fire",
        {
            "graph": _read_graph(args.graph),
            "orientation": args.orientation,
            "vertex": args.vertex,
        },
    )
    if not args.machine:
        print(f"fired {args.vertex} as {body['fired_as']}")
    print(body["orientation"])
    return EXIT_OK


def cmd_playback(args: argparse.Namespace) -> int:
    body = _call(
        args,
        "/playback",
        {
            "graph": _read_graph(args.graph),
            "orientation": args.orientation,
            "vertex": args.vertex,
        },
    )
    print(" ".join(body["sequence"]))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    body = _call(args, "/enumerate", {"graph": _read_graph(args.graph)})
    if not args.machine:
        print(f"{body['count']} acyclic orientations")
    print("\n".join(body["orientations"]))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    body = _call(
        args,
        "/oracle",
        {
            "graph": _read_graph(args.graph),
            "word1": args.word1,
            "word2": args.word2,
            "kind": args.kind,
            "budget": args.budget,
        },
    )
    if args.machine:
        print("conjugate=yes" if body["conjugate"] else "conjugate=no")
    else:
        print("YES" if body["conjugate"] else "NO")
        print(f"decided by brute force over {body['group_order']} group elements ({body['kind']} model)")
    return EXIT_OK if body["conjugate"] else EXIT_NO


def cmd_check(args: argparse.Namespace) -> int:
    body = _call(args, "/check", {"graph": _read_graph(args.graph)})
    for item in body["results"]:
        detail = f" ({item['detail']})" if item["detail"] else ""
        print(f"{item['status'].upper():4} {item['name']}{detail}")
    return EXIT_OK if body["ok"] else EXIT_NO


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxfire",
        description="Decide conjugacy of Coxeter elements via the firing game on acyclic orientations.",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="target a running coxfire service instead of computing in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str, graph: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        if graph:
            p.add_argument("graph", help="graph file (one `NAME NAME LABEL` edge per line)")
        return p

    p = add("classes", cmd_classes, "enumerate conjugacy classes of Coxeter elements")
    p.add_argument("--machine", action="store_true", help="stable line-oriented output only")

    p = add("conjugate", cmd_conjugate, "decide whether two Coxeter words are conjugate")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--machine", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET, help="witness search state cap")

    p = add("witness", cmd_witness, "print a replayable rotation/commutation trace")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--machine", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)

    p = add("orient", cmd_orient, "orient the graph from a word (first-occurrence rule)")
    p.add_argument("word")
    p.add_argument("--dot", action="store_true", help="emit a DOT digraph")

    p = add("fire", cmd_fire, "fire a sink or source of an orientation")
    p.add_argument("orientation", help="comma-separated `tail>head` arcs")
    p.add_argument("vertex")
    p.add_argument("--machine", action="store_true")

    p = add("playback", cmd_playback, "firing sequence from a sink that restores the orientation")
    p.add_argument("orientation")
    p.add_argument("vertex")

    p = add("enumerate", cmd_enumerate, "list all acyclic orientations")
    p.add_argument("--machine", action="store_true")

    p = add("oracle", cmd_oracle, "brute-force conjugacy via a concrete group model")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--kind", choices=["auto", "permutation", "signed", "matrix"], default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET, help="group closure element cap")
    p.add_argument("--machine", action="store_true")

    p = add("check", cmd_check, "run the library's invariant battery on a graph")

    p = add("serve", cmd_serve, "run the HTTP service", graph=False)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
