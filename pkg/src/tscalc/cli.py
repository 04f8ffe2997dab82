"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it mounts the
service in-process, with ``--server`` it talks to a running instance, and the
payloads and reports are exactly the service's wire format either way.

Exit codes: 0 success, 1 computational or suite failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

USAGE_ERROR = 2
COMPUTE_ERROR = 1


def _parse_param(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, raw = text.split("=", 1)
    for cast in (int, float):
        try:
            return key, cast(raw)
        except ValueError:
            continue
    if raw.lower() in ("true", "false"):
        return key, raw.lower() == "true"
    return key, raw


def _parse_window(text: str) -> list[float]:
    try:
        a, b = text.split(":", 1)
        return [float(a), float(b)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tscalc",
        description="Evaluate time-scale operators, differentiate, integrate, "
        "and run theorem-verification suites.",
    )
    parser.add_argument("--server", help="base URL of a running service; default is in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_scale=True):
        p.add_argument("--scale", help="builtin scale family name")
        p.add_argument("--scale-file", help="path to a JSON scale description")
        p.add_argument(
            "--param",
            action="append",
            type=_parse_param,
            default=[],
            metavar="K=V",
            help="family or suite parameter, repeatable",
        )
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol-limit", type=float, default=None)
        p.add_argument("--tol-quad", type=float, default=None)

    p_eval = sub.add_parser("eval", help="evaluate jump operators at points")
    add_common(p_eval)
    p_eval.add_argument("--points", type=float, nargs="+", required=True)

    p_diff = sub.add_parser("diff", help="both derivatives at a point")
    add_common(p_diff)
    p_diff.add_argument("--fn", required=True, help="builtin function id")
    p_diff.add_argument("--at", type=float, required=True)

    p_int = sub.add_parser("integrate", help="delta integral by both algorithms")
    add_common(p_int)
    p_int.add_argument("--fn", required=True, help="builtin function id")
    p_int.add_argument("--window", type=_parse_window, required=True, metavar="A:B")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    add_common(p_verify)
    p_verify.add_argument("--suite", required=True)

    p_corpus = sub.add_parser("corpus", help="corpus utilities")
    p_corpus.add_argument("action", choices=("list",))
    p_corpus.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _make_client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=300.0)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _scale_spec(args) -> dict:
    if getattr(args, "scale", None) and getattr(args, "scale_file", None):
        print("error: give only one of --scale and --scale-file", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    if getattr(args, "scale_file", None):
        try:
            with open(args.scale_file) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read scale file: {exc}", file=sys.stderr)
            raise SystemExit(USAGE_ERROR) from None
        return {"components": doc.get("components", [])}
    if getattr(args, "scale", None):
        return {"builtin": args.scale, "params": dict(args.param)}
    print("error: a scale is required (--scale or --scale-file)", file=sys.stderr)
    raise SystemExit(USAGE_ERROR)


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("TSCALE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"error: bad TSCALE_SEED {env!r}", file=sys.stderr)
            raise SystemExit(USAGE_ERROR) from None
    return 42


def _request(client, method: str, path: str, payload=None) -> dict:
    if method == "GET":
        resp = client.get(path)
    else:
        resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {"error": "HTTPError", "message": resp.text}
    message = body.get("message") or body.get("detail") or str(body)
    print(f"error ({resp.status_code}): {message}", file=sys.stderr)
    raise SystemExit(USAGE_ERROR if resp.status_code == 422 else COMPUTE_ERROR)


def _dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _emit_report(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(_dump_json(doc))
    elif fmt == "csv":
        print("suite,scale,fn,where,value_a,value_b,residual,pass")
        for case in doc.get("cases", []):
            row = [
                doc.get("suite", ""),
                case.get("scale", ""),
                case.get("fn") or "",
                str(case.get("where", "")).replace(",", ";"),
                case.get("value_a", ""),
                case.get("value_b", ""),
                case.get("residual", ""),
                case.get("pass", ""),
            ]
            print(",".join(str(v) for v in row))
    else:
        summary = doc.get("summary", {})
        print(f"suite: {doc.get('suite')}  seed: {doc.get('seed')}")
        for case in doc.get("cases", []):
            status = "PASS" if case.get("pass") else "FAIL"
            print(
                f"  [{status}] {case.get('scale')} {case.get('fn') or ''} "
                f"{case.get('where')} residual={case.get('residual')}"
            )
        print(
            f"total {summary.get('total')}  passed {summary.get('passed')}  "
            f"max residual {summary.get('max_residual')}  "
            f"{'PASS' if summary.get('pass') else 'FAIL'}"
        )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    client = _make_client(args.server)

    if args.command == "corpus":
        doc = _request(client, "GET", "/corpus")
        if args.format == "json":
            for family in doc["families"]:
                print(_dump_json(family))
        else:
            for family in doc["families"]:
                params = ", ".join(f"{k}: {v}" for k, v in family["parameters"].items())
                print(f"{family['name']}  ({params or 'no parameters'})")
        return 0

    if args.command == "eval":
        payload = {"scale": _scale_spec(args), "points": args.points}
        doc = _request(client, "POST", "/eval", payload)
        if args.format == "json":
            print(_dump_json(doc))
        elif args.format == "csv":
            print("t,sigma,rho,mu,right,left,in_scale")
            for r in doc["results"]:
                print(
                    f"{r['t']},{r['sigma']},{r['rho']},{r['mu']},"
                    f"{r['right']},{r['left']},{r['in_scale']}"
                )
        else:
            for r in doc["results"]:
                print(
                    f"t={r['t']}: sigma={r['sigma']} rho={r['rho']} mu={r['mu']} "
                    f"({r['label']})"
                )
        return 0

    if args.command == "diff":
        payload = {"scale": _scale_spec(args), "fn": args.fn, "at": args.at}
        if args.tol_limit:
            payload["tol_limit"] = args.tol_limit
        doc = _request(client, "POST", "/diff", payload)
        if args.format == "pretty":
            h, r = doc["hilger"], doc["radon_nikodym"]
            print(
                f"at {doc['at']}: forward-difference {h['value']} "
                f"(converged={h['converged']}), density {r['value']} "
                f"(converged={r['converged']}), deviation {doc['deviation']}"
            )
        else:
            print(_dump_json(doc))
        return 0 if doc["agree"] else COMPUTE_ERROR

    if args.command == "integrate":
        payload = {"scale": _scale_spec(args), "fn": args.fn, "window": args.window}
        if args.tol_quad:
            payload["tol_quad"] = args.tol_quad
        doc = _request(client, "POST", "/integrate", payload)
        if args.format == "pretty":
            print(
                f"[{doc['window'][0]}, {doc['window'][1]}): "
                f"decomposition {doc['decomposition']}, "
                f"through backward jump {doc['through_backward_jump']}, "
                f"deviation {doc['deviation']}"
            )
        else:
            print(_dump_json(doc))
        return 0

    if args.command == "verify":
        payload = {
            "suite": args.suite,
            "params": dict(args.param),
            "seed": _seed(args),
        }
        if args.scale or args.scale_file:
            payload["scale"] = _scale_spec(args)
        if args.tol_limit:
            payload["tol_limit"] = args.tol_limit
        if args.tol_quad:
            payload["tol_quad"] = args.tol_quad
        doc = _request(client, "POST", "/verify", payload)
        _emit_report(doc, args.format)
        return 0 if doc.get("summary", {}).get("pass") else COMPUTE_ERROR

    return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
