"""Batch and scripting surface.

Subcommands: ``word analyze``, ``word reduce``, ``shadow analyze``,
``game replay``, ``solve``, ``verify``, ``sweep``, ``serve``.  Every
command validates its inputs before doing work, writes usage errors to
stderr with a nonzero exit code, and offers ``--format json`` for
machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import acceptance
from .construct import build_rational_shadow, hopf_shadow, two_component_shadow, whitehead_shadow
from .diagram import (
    ShadowDiagram,
    canonical_orientation,
    classify_crossing,
    parse_pd,
    pseudo_linking_number,
    twist_regions,
)
from .game import GameConfig, Role, parse_move_log, replay
from .simplify import decide_splittability
from .solver import solve_diagram, solve_rational, verify_strategy
from .strategies import StrategyId, applicable_strategies
from .words import (
    ClosureKind,
    WordError,
    closure_components,
    count_intersections,
    classify_syllables,
    decompose_word,
    parse_word,
    rational_splittability,
    reduce_word,
    render_word,
    tangle_fraction,
)


class CliError(Exception):
    pass


def _emit(data: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, default=str))
    else:
        for line in text_lines:
            print(line)


def _load_shadow(args) -> ShadowDiagram:
    sources = [bool(getattr(args, "pd", None)),
               bool(getattr(args, "word", None)),
               bool(getattr(args, "preset", None))]
    if sum(sources) != 1:
        raise CliError("give exactly one of --pd, --word, or --preset")
    if getattr(args, "preset", None):
        return {"hopf": hopf_shadow, "whitehead": whitehead_shadow}[args.preset]()
    if getattr(args, "pd", None):
        with open(args.pd) as fh:
            return parse_pd(fh.read(), require_two_components=True)
    # games run on the word's shadow: every crossing unresolved
    from .words import shadow_word

    w = shadow_word(parse_word(args.word).sizes)
    if args.closure:
        return build_rational_shadow(w, ClosureKind(args.closure))
    return two_component_shadow(w)


# --- word commands ----------------------------------------------------------


def cmd_word_analyze(args) -> int:
    w = parse_word(args.word)
    kinds = classify_syllables(w)
    decomposition = decompose_word(w)
    nsi, si = count_intersections(w)
    pairing, closure = closure_components(w)
    data = {
        "word": render_word(w),
        "crossings": w.total_crossings,
        "unresolved": sum(s.unresolved for s in w),
        "kinds": [k.value for k in kinds],
        "decomposition": decomposition.starred(),
        "blocks": [
            {"syllables": list(b.indices), "case": b.case.value}
            if hasattr(b, "indices") else {"syllable": b.index, "case": "isolated-SI"}
            for b in decomposition.blocks
        ],
        "nsi_count": nsi,
        "si_count": si,
        "pairing": pairing.value,
        "two_component_closure": closure.value if closure else None,
    }
    lines = [
        f"word: {data['word']}",
        f"crossings: {data['crossings']} ({data['unresolved']} unresolved)",
        f"kinds: {' '.join(data['kinds'])}",
        f"decomposition: {data['decomposition']}",
        f"nsi: {nsi}  si: {si}",
        f"pairing: {data['pairing']}",
        f"two-component closure: {data['two_component_closure'] or 'none'}",
    ]
    if w.fully_resolved:
        data["fraction"] = str(tangle_fraction(w))
        lines.append(f"fraction: {data['fraction']}")
        if closure is not None:
            verdict = rational_splittability(w)
            data["splittability"] = str(verdict)
            lines.append(f"splittability: {verdict} ({verdict.detail})")
    _emit(data, args.format, lines)
    return 0


def cmd_word_reduce(args) -> int:
    w = parse_word(args.word)
    reduced = reduce_word(w)
    data = {"word": render_word(w), "reduced": render_word(reduced)}
    _emit(data, args.format, [f"{data['word']} -> {data['reduced']}"])
    return 0


# --- shadow / game commands ---------------------------------------------------


def cmd_shadow_analyze(args) -> int:
    with open(args.pd) as fh:
        d = parse_pd(fh.read())
    orientation = canonical_orientation(d)
    regions = twist_regions(d)
    data = {
        "crossings": d.n_crossings,
        "components": d.n_components,
        "free_loops": len(d.free_loops),
        "nsi": [cid for cid in d.crossing_ids
                if classify_crossing(d, cid) == "NSI"],
        "si": [cid for cid in d.crossing_ids
               if classify_crossing(d, cid) == "SI"],
        "twist_regions": [list(r.crossings) for r in regions],
        "resolved": sum(1 for c in d.crossings if c.state.resolved),
    }
    lines = [
        f"crossings: {data['crossings']} ({data['resolved']} resolved)",
        f"components: {data['components']} (+{data['free_loops']} free loops)",
        f"nsi crossings: {data['nsi']}",
        f"si crossings: {data['si']}",
        f"twist regions: {data['twist_regions']}",
    ]
    if d.n_components == 2:
        plk = pseudo_linking_number(d, orientation)
        data["pseudo_linking_number"] = str(plk)
        lines.append(f"pseudo-linking number: {plk}")
        if d.fully_resolved:
            verdict = decide_splittability(d, budget=args.budget)
            data["splittability"] = str(verdict)
            data["splittability_detail"] = verdict.detail
            lines.append(f"splittability: {verdict} ({verdict.detail})")
    _emit(data, args.format, lines)
    return 0


def cmd_game_replay(args) -> int:
    with open(args.log) as fh:
        shadow_ref, first, moves = parse_move_log(fh.read())
    if not getattr(args, "pd", None) and not getattr(args, "word", None) \
            and not getattr(args, "preset", None) and shadow_ref and shadow_ref != "-":
        args.pd = shadow_ref
    shadow = _load_shadow(args)
    first_mover = args.first or first or Role.UNLINKER
    config = GameConfig(shadow=shadow, first_mover=first_mover,
                        budget=args.budget)
    outcome = replay(config, moves)
    data = {
        "moves": [str(m) for m in moves],
        "winner": outcome.winner,
        "verdict": str(outcome.verdict),
        "detail": outcome.verdict.detail,
    }
    lines = [f"{len(moves)} moves replayed",
             f"verdict: {outcome.verdict} ({outcome.verdict.detail})",
             f"winner: {outcome.winner or 'undetermined'}"]
    _emit(data, args.format, lines)
    return 0


def cmd_solve(args) -> int:
    first = args.first or Role.UNLINKER
    if args.word and not args.pd:
        from .words import shadow_word

        w = shadow_word(parse_word(args.word).sizes)
        closure = ClosureKind(args.closure) if args.closure else None
        result = solve_rational(w, closure=closure, first_mover=first)
    else:
        shadow = _load_shadow(args)
        result = solve_diagram(GameConfig(shadow=shadow, first_mover=first,
                                          budget=args.budget),
                               max_crossings=args.max_crossings,
                               budget=args.budget)
    data = {
        "first_mover": result.first_mover,
        "winner": result.winner,
        "winning_role": result.winning_role,
        "nodes": result.nodes,
        "tt_hits": result.tt_hits,
        "unknown_influenced": result.unknown_influenced,
        "pv": [str(m) for m in result.pv],
    }
    lines = [result.describe(),
             f"nodes: {result.nodes}  transposition hits: {result.tt_hits}"]
    if result.unknown_influenced:
        lines.append("warning: unknown-verdict leaves influenced the search")
    lines += [f"pv: {m}" for m in result.pv]
    _emit(data, args.format, lines)
    return 0


def cmd_verify(args) -> int:
    shadow = _load_shadow(args)
    first = args.first or Role.UNLINKER
    config = GameConfig(shadow=shadow, first_mover=first, budget=args.budget)
    if args.strategy:
        ids = [StrategyId(args.strategy)]
    else:
        ids = applicable_strategies(config)
        if not ids:
            raise CliError("no applicable strategies for this config")
    reports = [verify_strategy(s, config, config_desc=args.word or args.pd
                               or args.preset or "?") for s in ids]
    data = {"reports": [
        {"strategy": r.strategy, "role": r.strategy_role, "ok": r.ok,
         "lines": r.lines_total, "wins": r.wins,
         "losses": len(r.loss_lines), "unknown": len(r.unknown_lines)}
        for r in reports]}
    _emit(data, args.format, [r.summary() for r in reports])
    return 0 if all(r.ok for r in reports) else 1


def cmd_sweep(args) -> int:
    numbers = None
    if args.only:
        numbers = {int(x) for x in args.only.split(",")}
    results = acceptance.run_all(numbers=numbers, progress=print)
    ok = all(r.ok for r in results)
    print("SWEEP " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(state_dir=args.state_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# --- parser -------------------------------------------------------------------


def _add_shadow_options(p, closure_default: Optional[str] = None):
    p.add_argument("--pd", help="annotated PD file")
    p.add_argument("--word", help="pseudotangle word, e.g. '(2,-3,-2,1)'")
    p.add_argument("--preset", choices=["hopf", "whitehead"])
    p.add_argument("--closure", choices=["numerator", "denominator"],
                   default=closure_default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkgame",
        description="The Linking-Unlinking Game on two-component link shadows")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    word = sub.add_parser("word", help="pseudotangle word analysis")
    word_sub = word.add_subparsers(dest="word_command", required=True)
    wa = word_sub.add_parser("analyze", help="classify, decompose, evaluate")
    wa.add_argument("word")
    wa.set_defaults(func=cmd_word_analyze)
    wr = word_sub.add_parser("reduce", help="rewrite to a fixed point")
    wr.add_argument("word")
    wr.set_defaults(func=cmd_word_reduce)

    shadow = sub.add_parser("shadow", help="diagram analysis")
    shadow_sub = shadow.add_subparsers(dest="shadow_command", required=True)
    sa = shadow_sub.add_parser("analyze")
    sa.add_argument("--pd", required=True)
    sa.add_argument("--budget", type=int, default=10_000)
    sa.set_defaults(func=cmd_shadow_analyze)

    game = sub.add_parser("game", help="game replay")
    game_sub = game.add_subparsers(dest="game_command", required=True)
    gr = game_sub.add_parser("replay")
    gr.add_argument("--log", required=True, help="move log file")
    _add_shadow_options(gr)
    gr.add_argument("--first", choices=[Role.LINKER, Role.UNLINKER])
    gr.add_argument("--budget", type=int, default=10_000)
    gr.set_defaults(func=cmd_game_replay)

    solve = sub.add_parser("solve", help="perfect-play oracle")
    _add_shadow_options(solve)
    solve.add_argument("--first", choices=[Role.LINKER, Role.UNLINKER])
    solve.add_argument("--budget", type=int, default=10_000)
    solve.add_argument("--max-crossings", type=int, default=12)
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="strategy verification")
    _add_shadow_options(verify)
    verify.add_argument("--strategy",
                        choices=[s.value for s in StrategyId])
    verify.add_argument("--first", choices=[Role.LINKER, Role.UNLINKER])
    verify.add_argument("--budget", type=int, default=10_000)
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="re-derive the acceptance criteria")
    sweep.add_argument("--only", help="comma-separated criterion numbers")
    sweep.set_defaults(func=cmd_sweep)

    serve = sub.add_parser("serve", help="start the game service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8776)
    serve.add_argument("--state-dir", default=None,
                       help="directory for per-session move logs")
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
