"""Command-line interface.

Subcommands: check (validate a theory file), args (list constructed
arguments), extensions (labellings under a semantics), explain (render a
user-adapted explanation), serve (run the HTTP service). Exit codes: 0
success, 1 domain error (invalid theory, INSUFFICIENT, unknown target),
2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .af import GROUNDED, SEMANTICS, from_tgf, enumerate_labellings
from .dispute import DEFAULT_MAX_DEPTH, UtilityWeights
from .errors import PhaxError, TheoryParseError
from .parser import parse_theory, theory_from_source
from .profiles import BUILTIN_PROFILES, UserProfile, profile_from_json
from .render import FORMATS, TEXT
from .service import create_app
from .session import SessionStore, derive, explain_report, extensions_report

DEFAULT_PORT = 8000


def _load_theory(path: str):
    source = Path(path).read_text(encoding="utf-8")
    return theory_from_source(source, default_name=Path(path).stem)


def _resolve_profile(spec: str) -> UserProfile:
    if spec in BUILTIN_PROFILES:
        return BUILTIN_PROFILES[spec]
    path = Path(spec)
    if path.suffix == ".json" and path.exists():
        return profile_from_json(path.read_text(encoding="utf-8"))
    raise PhaxError(
        f"unknown profile '{spec}' (builtins: {', '.join(sorted(BUILTIN_PROFILES))})"
    )


def format_labelling(in_members, out_members, undec_members) -> str:
    parts = []
    for name, members in (
        ("IN", in_members),
        ("OUT", out_members),
        ("UNDEC", undec_members),
    ):
        if members:
            parts.append(f"{name}: {' '.join(members)}")
    return " / ".join(parts) if parts else "(empty)"


def cmd_check(ns) -> int:
    source = Path(ns.file).read_text(encoding="utf-8")
    result = parse_theory(source, default_name=Path(ns.file).stem)
    for diag in result.diagnostics:
        print(diag.format(ns.file))
    if not result.ok:
        return 1
    theory = result.theory
    print(
        f"OK: {theory.name} ({len(theory.premises)} premises, "
        f"{len(theory.rules)} rules, {len(theory.preferences)} preferences)"
    )
    return 0


def cmd_args(ns) -> int:
    theory = _load_theory(ns.file)
    derived = derive(theory)
    for arg in sorted(derived.arguments.values(), key=lambda a: derived.labels[a.id]):
        print(
            f"{derived.labels[arg.id]}: {arg.conclusion} (weight={arg.weight:.2f})"
        )
    return 0


def cmd_extensions(ns) -> int:
    path = Path(ns.file)
    if path.suffix == ".tgf":
        af = from_tgf(path.read_text(encoding="utf-8"))
        for labelling in enumerate_labellings(af, ns.semantics):
            print(
                format_labelling(
                    labelling.in_set, labelling.out_set, labelling.undec_set
                )
            )
        return 0
    theory = _load_theory(ns.file)
    derived = derive(theory)
    report = extensions_report(derived, ns.semantics)
    labels = report["argument_labels"]
    for labelling in report["labellings"]:
        print(
            format_labelling(
                sorted(labels[a] for a in labelling["in"]),
                sorted(labels[a] for a in labelling["out"]),
                sorted(labels[a] for a in labelling["undec"]),
            )
        )
    return 0


def cmd_explain(ns) -> int:
    theory = _load_theory(ns.file)
    derived = derive(theory)
    profile = _resolve_profile(ns.profile)
    defaults = UtilityWeights()
    weights = UtilityWeights(
        alpha=ns.alpha if ns.alpha is not None else defaults.alpha,
        beta=ns.beta if ns.beta is not None else defaults.beta,
        gamma=ns.gamma if ns.gamma is not None else defaults.gamma,
        tau=ns.tau if ns.tau is not None else defaults.tau,
        epsilon=ns.epsilon if ns.epsilon is not None else defaults.epsilon,
    )
    report = explain_report(
        derived,
        target=ns.target,
        profile=profile,
        weights=weights,
        semantics=ns.semantics,
        fmt=ns.format,
        max_depth=ns.max_depth,
    )
    sys.stdout.write(report["rendered"]["body"])
    return 0


def cmd_serve(ns) -> int:
    import uvicorn

    store = SessionStore(state_dir=ns.state_dir)
    app = create_app(store)
    port = ns.port or int(os.environ.get("PHAX_PORT", DEFAULT_PORT))
    uvicorn.run(app, host=ns.host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phax",
        description="Defeasible argumentation engine with adaptive explanations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate a theory file")
    p_check.add_argument("file")
    p_check.set_defaults(func=cmd_check)

    p_args = sub.add_parser("args", help="list constructed arguments")
    p_args.add_argument("file")
    p_args.set_defaults(func=cmd_args)

    p_ext = sub.add_parser("extensions", help="labellings under a semantics")
    p_ext.add_argument("file")
    p_ext.add_argument("--semantics", choices=SEMANTICS, default=GROUNDED)
    p_ext.set_defaults(func=cmd_extensions)

    p_explain = sub.add_parser("explain", help="render an adapted explanation")
    p_explain.add_argument("file")
    p_explain.add_argument("--target", required=True, help="literal or argument label")
    p_explain.add_argument("--profile", required=True, help="builtin name or JSON file")
    p_explain.add_argument("--tau", type=float, default=None)
    p_explain.add_argument("--alpha", type=float, default=None)
    p_explain.add_argument("--beta", type=float, default=None)
    p_explain.add_argument("--gamma", type=float, default=None)
    p_explain.add_argument("--epsilon", type=float, default=None)
    p_explain.add_argument("--semantics", choices=SEMANTICS, default=GROUNDED)
    p_explain.add_argument("--format", choices=FORMATS, default=TEXT)
    p_explain.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p_explain.set_defaults(func=cmd_explain)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--state-dir", default=None)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.func(ns)
    except TheoryParseError as exc:
        for diag in exc.diagnostics:
            print(diag.format(getattr(ns, "file", "<input>")), file=sys.stderr)
        return 1
    except PhaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
