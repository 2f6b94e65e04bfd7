# -*- coding: utf-8 -*-
"""
命令行入口：
    python -m src.cli parse FILE
    python -m src.cli check FILE [--import none|universal|explicit] [--import-scope subjects|all] [--max-universe N]
    python -m src.cli conclude FILE --engine interval|fuzzy|exceptive|conditional [--card TERM=N]
    python -m src.cli compare FILE
    python -m src.cli enumerate [--import ...] [--max-universe N] [--progress]

退出码：
- check：0 有效（在界内）/ 1 反模型 / 2 未定 或 错误
- compare：0 两种解释一致 / 1 不一致 / 2 错误
- 其他：0 成功 / 2 错误
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Optional, Sequence

from tabulate import tabulate

from src.conditional_engine import HeuristicConclusion, heuristic_conclude
from src.config import RunConfig, build_run_config, parse_card
from src.core_model import (
    Syllogism,
    VerdictKind,
    format_rational,
    statement_to_json,
    syllogism_to_json,
    verdict_to_json,
)
from src.errors import ParseError, SyllogosError, Unsupported
from src.numeric_engine import (
    ExceptiveMode,
    exceptive_conclude,
    fuzzy_conclude_statements,
    interval_conclude_kersup,
    interval_conclude_statements,
)
from src.parser import (
    parse_premises_file,
    parse_statements,
    parse_syllogism_file,
    render,
)
from src.set_engine import census_frame, census_summary, check_validity, enumerate_classical_moods

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _setup_logging(verbose: bool = False) -> None:
    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)

    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(logging.INFO if verbose else logging.WARNING)
    ch.setFormatter(logging.Formatter("%(message)s"))

    root.handlers = []
    root.addHandler(ch)

    log_dir = os.getenv("SYLLOGOS_LOG_DIR")
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        fh = logging.FileHandler(os.path.join(log_dir, "syllogos.log"), encoding="utf-8")
        fh.setLevel(logging.DEBUG if verbose else logging.INFO)
        fh.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
        root.addHandler(fh)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise SyllogosError(f"cannot read {path}: {e.strerror}") from e


def _emit(cfg: RunConfig, payload: Any, text: str) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text)


# ---------------- commands ----------------

def _model_table(verdict_json: dict) -> str:
    model = verdict_json["counter_model"]
    rows = [[k, "{" + ", ".join(map(str, v)) + "}", len(v)] for k, v in model["extensions"].items()]
    return tabulate(rows, headers=["term", "extension", "size"], tablefmt="simple")


def cmd_parse(path: str, cfg: RunConfig) -> int:
    statements = parse_statements(_read(path))
    payload = [{"text": render(st), "statement": statement_to_json(st)} for st in statements]
    text = "\n".join(render(st) for st in statements)
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_check(path: str, cfg: RunConfig) -> int:
    if cfg.engine != "set":
        raise Unsupported(cfg.engine, "check runs the set engine; use conclude or compare")
    syl = parse_syllogism_file(_read(path))
    semantics = cfg.quantifier_table().semantics
    verdict = check_validity(syl, cfg.import_policy, cfg.max_universe, cfg.import_scope, semantics)
    vj = verdict_to_json(verdict)
    lines = [verdict.summary()]
    if verdict.counter_model is not None:
        lines.append(_model_table(vj))
    _emit(cfg, {**vj, "syllogism": syllogism_to_json(syl)}, "\n".join(lines))
    return {
        VerdictKind.VALID: EXIT_OK,
        VerdictKind.COUNTER: EXIT_NEGATIVE,
        VerdictKind.UNDETERMINED: EXIT_ERROR,
    }[verdict.kind]


def _conclude_exceptive(premises: list, cfg: RunConfig) -> tuple[dict, str]:
    if len(premises) != 2:
        raise Unsupported("exceptive", f"expected two premises, got {len(premises)}")
    literal = exceptive_conclude(premises[0], premises[1], cfg.cards, ExceptiveMode.LITERAL)
    sound = exceptive_conclude(premises[0], premises[1], cfg.cards, ExceptiveMode.SOUND_BOUND)
    diverge = not (sound.exception_lo <= literal.exception_lo <= sound.exception_hi)
    lines = [
        f"literal: {literal.describe()}",
        f"sound:   exception ∈ [{sound.exception_lo},{sound.exception_hi}] ({sound.method})",
    ]
    if diverge:
        lines.append("note: the literal exception lies outside the sound range")
    payload = {"literal": literal.to_json(), "sound": sound.to_json(), "diverge": diverge}
    return payload, "\n".join(lines)


def cmd_conclude(path: str, cfg: RunConfig) -> int:
    premises = parse_premises_file(_read(path))
    engine = cfg.engine
    if engine == "interval" and cfg.ker_sup:
        ks = interval_conclude_kersup(premises, cfg.quantifier_table(), cfg.max_total)
        payload = {"conclusion": statement_to_json(ks.statement), "text": render(ks.statement), **ks.to_json()}
        text = f"{render(ks.statement)}\n(kernel {ks.kernel.label()}, support {ks.support.label()})"
    elif engine == "interval":
        res = interval_conclude_statements(premises, cfg.quantifier_table(), cfg.max_total)
        payload = {"conclusion": statement_to_json(res.statement), "text": render(res.statement), **res.result.to_json()}
        text = render(res.statement)
        if res.result.method != "frechet":
            text += f"\n(method: {res.result.method}, max total {cfg.max_total})"
    elif engine == "fuzzy":
        stmt, fuzzy = fuzzy_conclude_statements(premises, cfg.quantifier_table(), cfg.alpha_levels)
        payload = {"conclusion": statement_to_json(stmt), "text": render(stmt), **fuzzy.to_json()}
        rows = [[format_rational(a), format_rational(lo), format_rational(hi)] for a, lo, hi in fuzzy.cuts]
        text = render(stmt) + "\n" + tabulate(rows, headers=["alpha", "lo", "hi"], tablefmt="simple")
    elif engine == "exceptive":
        payload, text = _conclude_exceptive(premises, cfg)
    elif engine == "conditional":
        res = heuristic_conclude(premises, cfg.order(), cfg.prob_config())
        bands = _bands(res)
        payload = {
            "conclusion": statement_to_json(res.statement),
            "text": render(res.statement),
            "trace": list(res.trace),
            "epsilon": format_rational(cfg.epsilon),
            "bands": bands,
        }
        text = "\n".join([render(res.statement), *res.trace, *(f"band: {b['text']}: {b['band']}" for b in bands)])
    else:
        raise Unsupported(engine, "the set engine checks a given conclusion; use check")
    _emit(cfg, payload, text)
    return EXIT_OK


def _bands(res: HeuristicConclusion) -> list[dict]:
    return [
        {"text": render(st), "kind": c.kind.value, "band": c.describe(st.subject.display(), st.predicate.display())}
        for st, c in res.bands
    ]


def _run_engine(fn: Any) -> tuple[Optional[Any], Optional[str]]:
    try:
        return fn(), None
    except SyllogosError as e:
        return None, str(e)


def cmd_compare(path: str, cfg: RunConfig) -> int:
    syl: Syllogism = parse_syllogism_file(_read(path))
    verdict, set_err = _run_engine(
        lambda: check_validity(
            syl, cfg.import_policy, cfg.max_universe, cfg.import_scope, cfg.quantifier_table().semantics
        )
    )
    heur, cond_err = _run_engine(lambda: heuristic_conclude(syl.content_premises, cfg.order(), cfg.prob_config()))

    set_text = verdict.summary() if verdict is not None else f"error: {set_err}"
    cond_text = render(heur.statement) if heur is not None else f"error: {cond_err}"
    agree = (
        verdict is not None
        and heur is not None
        and verdict.is_valid
        and heur.statement == syl.conclusion
    )
    rows = [
        ["stated conclusion", render(syl.conclusion)],
        ["set-based", set_text],
        ["conditional", cond_text],
        ["agreement", "agree" if agree else "diverge"],
    ]
    if heur is not None:
        rows += [[f"band: {b['text']}", b["band"]] for b in _bands(heur)]
    payload = {
        "conclusion": statement_to_json(syl.conclusion),
        "set": verdict_to_json(verdict) if verdict is not None else {"error": set_err},
        "conditional": (
            {"conclusion": statement_to_json(heur.statement), "trace": list(heur.trace), "bands": _bands(heur)}
            if heur is not None
            else {"error": cond_err}
        ),
        "agree": agree,
        "epsilon": format_rational(cfg.epsilon),
    }
    _emit(cfg, payload, tabulate(rows, tablefmt="plain"))
    return EXIT_OK if agree else EXIT_NEGATIVE


def cmd_enumerate(cfg: RunConfig) -> int:
    results = enumerate_classical_moods(
        cfg.import_policy,
        cfg.max_universe,
        cfg.import_scope,
        cfg.quantifier_table().semantics,
        progress=cfg.progress,
    )
    df = census_frame(results)
    summary = census_summary(df)
    total = int(df["valid"].sum())
    payload = {
        "policy": cfg.import_policy.value,
        "scope": cfg.import_scope.value,
        "bound": cfg.max_universe,
        "valid": total,
        "rows": df.to_dict(orient="records"),
    }
    text = (
        tabulate(summary, headers="keys", showindex=False, tablefmt="simple")
        + f"\n\nvalid: {total}/{len(df)} (import {cfg.import_policy.value}, scope {cfg.import_scope.value}, bound {cfg.max_universe})"
    )
    _emit(cfg, payload, text)
    return EXIT_OK


# ---------------- argument parsing ----------------

def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--engine", choices=["set", "interval", "fuzzy", "exceptive", "conditional"], default=None)
    p.add_argument("--import", dest="import_policy", choices=["none", "universal", "explicit"], default=None)
    p.add_argument("--import-scope", dest="import_scope", choices=["subjects", "all"], default=None)
    p.add_argument("--max-universe", type=int, default=None, help="set engine: largest universe to enumerate")
    p.add_argument("--max-total", type=int, default=None, help="interval engine: largest region-vector total")
    p.add_argument("--epsilon", default=None, help="conditional engine: p/q or decimal, 0 < ε < 1/2")
    p.add_argument("--quantifiers", default=None, help="named-quantifier JSON (env SYLLOGOS_QUANTIFIERS)")
    p.add_argument("--card", action="append", default=[], metavar="TERM=N", help="exceptive engine: assumed cardinality")
    p.add_argument("--alpha", default=None, help="fuzzy engine: comma list of α levels")
    p.add_argument("--ker-sup", action="store_true", help="interval engine: propagate kernels and supports into a trapezoid")
    p.add_argument("--order", default=None, help="conditional engine: e.g. all>most>few>some>no>some_not")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--progress", action="store_true", help="show a progress bar for long searches")
    p.add_argument("--verbose", "-v", action="store_true")
    return p


def build_arg_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="syllogos", description="Set-based and conditional syllogistic reasoning")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("parse", "print the canonical form of every statement in FILE"),
        ("check", "check the syllogism in FILE against finite models"),
        ("conclude", "derive a conclusion from the premises in FILE"),
        ("compare", "run both interpretations on the syllogism in FILE"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("file")
    sub.add_parser("enumerate", parents=[common], help="classify all 256 classical moods")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cards = dict(parse_card(c) for c in args.card)
    return build_run_config(
        engine=args.engine,
        import_policy=args.import_policy,
        import_scope=args.import_scope,
        max_universe=args.max_universe,
        max_total=args.max_total,
        epsilon=args.epsilon,
        quantifiers=args.quantifiers,
        output="json" if args.json else None,
        cards=cards or None,
        alpha_levels=args.alpha,
        progress=args.progress or None,
        ker_sup=args.ker_sup or None,
        informativeness=args.order,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        cfg = _config_from_args(args)
        if args.command == "parse":
            return cmd_parse(args.file, cfg)
        if args.command == "check":
            return cmd_check(args.file, cfg)
        if args.command == "conclude":
            return cmd_conclude(args.file, cfg)
        if args.command == "compare":
            return cmd_compare(args.file, cfg)
        return cmd_enumerate(cfg)
    except ParseError as e:
        print(f"error: parse error {e}", file=sys.stderr)
        return EXIT_ERROR
    except SyllogosError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
