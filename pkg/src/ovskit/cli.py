"""Script language and command-line front end.

A script is a line-oriented list of statements behind a
``format-version: 1`` header: definitions (spaces, cones by formula,
hull, or corpus name, subspaces, maps, oracles) and commands (check,
compute, quotient, archimedeanize, factor, falsify).  Names must be
defined before use and are unique; both are enforced at parse time.

Reports come in two formats sharing the record fields ``kind``,
``name``, ``verdict``, ``witness``, ``object``, ``depth``: a structured
mode that emits one JSON record per line and is byte-deterministic for a
fixed script, seed, and budget set, and a human text mode that adds
per-command timing.  False verdicts are ordinary results; the exit code
is nonzero only for parse errors (2), budget or engine errors (3), and
contract violations (4).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import arch, corpus, qe, spaces
from .errors import (
    BudgetExceeded,
    ContractViolation,
    EngineInvariantError,
    OvskitError,
    ParseError,
)
from .linarith import Formula, Token, canonical_str, tokenize, variables, _Parser

FORMAT_VERSION = "format-version: 1"

PREDICATES = (
    "wedge",
    "cone",
    "generating",
    "archimedean",
    "almost-archimedean",
    "arch-element",
    "almost-arch-element",
    "order-ideal",
    "order-convex",
    "uniformly-closed",
    "riesz",
    "order-unit",
)

FALSIFY_PROPS = ("archimedean", "almost-archimedean", "arch-element")


@dataclass
class Options:
    format: str = "text"
    seed: int = 0
    sample_budget: int = 10_000
    cell_budget: int = 100_000
    atom_budget: int = 10_000
    lattice_dim_max: int = 4

    def budget(self) -> qe.Budget:
        return qe.Budget(cell_limit=self.cell_budget, atom_limit=self.atom_budget)


@dataclass(frozen=True)
class Statement:
    kind: str
    line: int
    text: str
    data: dict


@dataclass(frozen=True)
class Script:
    statements: tuple


@dataclass
class Record:
    kind: str
    name: str
    verdict: Optional[bool] = None
    witness: Optional[dict] = None
    object: Optional[dict] = None
    depth: Optional[int] = None
    millis: int = 0


@dataclass
class Report:
    records: list = field(default_factory=list)
    exit_code: int = 0


# ---------------------------------------------------------------------------
# Parsing


class _LineParser(_Parser):
    def __init__(self, tokens, names: dict):
        super().__init__(tokens)
        self.names = names

    def name_token(self) -> Token:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(f"expected a name, found {tok.text!r}", tok.line, tok.column)
        return tok

    def fresh_name(self) -> str:
        tok = self.name_token()
        if tok.text in self.names:
            raise ParseError(f"duplicate name {tok.text!r}", tok.line, tok.column)
        return tok.text

    def known_name(self, kinds=None) -> str:
        tok = self.name_token()
        entry = self.names.get(tok.text)
        if entry is None:
            raise ParseError(
                f"unknown name {tok.text!r} (forward references are rejected)",
                tok.line,
                tok.column,
            )
        if kinds and entry not in kinds:
            raise ParseError(
                f"{tok.text!r} is a {entry}, expected {' or '.join(kinds)}",
                tok.line,
                tok.column,
            )
        return tok.text

    def nat(self) -> int:
        tok = self.next()
        if tok.kind != "num" or "/" in tok.text:
            raise ParseError(f"expected a natural number, found {tok.text!r}", tok.line, tok.column)
        return int(tok.text)

    def rational_value(self) -> Fraction:
        tok = self.peek()
        negative = False
        while tok.kind == "op" and tok.text in ("-", "+"):
            self.next()
            negative ^= tok.text == "-"
            tok = self.peek()
        tok = self.next()
        if tok.kind != "num":
            raise ParseError(f"expected a number, found {tok.text!r}", tok.line, tok.column)
        q = Fraction(tok.text)
        return -q if negative else q

    def vector(self) -> tuple:
        self.expect_op("(")
        values = [self.rational_value()]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.next()
            values.append(self.rational_value())
        self.expect_op(")")
        return tuple(values)

    def vectors(self) -> tuple:
        out = []
        while self.peek().kind == "op" and self.peek().text == "(":
            out.append(self.vector())
        return tuple(out)

    def hyphenated(self) -> str:
        parts = [self.name_token().text]
        while self.peek().kind == "op" and self.peek().text == "-":
            self.next()
            parts.append(self.name_token().text)
        return "-".join(parts)

    def keyword(self, word: str):
        tok = self.next()
        if tok.kind != "name" or tok.text != word:
            raise ParseError(f"expected {word!r}, found {tok.text!r}", tok.line, tok.column)

    def end(self):
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)


def _formula_dim(f: Formula, declared: Optional[int], line: int) -> int:
    names = variables(f)
    indices = []
    for n in names:
        if not (n.startswith("x") and n[1:].isdigit()):
            raise ParseError(f"cone formulas use coordinates x1, x2, ...; found {n!r}", line, 1)
        indices.append(int(n[1:]))
    needed = max(indices, default=0)
    if declared is None:
        return needed
    if needed > declared:
        raise ParseError(
            f"formula mentions x{needed} but the current space has dim {declared}", line, 1
        )
    return declared


def parse(text: str) -> Script:
    """Parse script text; rejects duplicate names, forward references,
    and a missing format-version header."""
    lines = text.splitlines()
    statements = []
    names: dict = {}
    current_dim: Optional[int] = None
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if stripped != FORMAT_VERSION:
                raise ParseError(
                    f"script must start with {FORMAT_VERSION!r}", lineno, 1
                )
            header_seen = True
            continue
        tokens = tokenize(raw, line=lineno)
        p = _LineParser(tokens, names)
        head = p.name_token()
        kind = head.text
        if kind == "space":
            name = p.fresh_name()
            p.keyword("dim")
            dim = p.nat()
            p.end()
            names[name] = "space"
            current_dim = dim
            statements.append(Statement("space", lineno, stripped, {"name": name, "dim": dim}))
        elif kind == "cone":
            name = p.fresh_name()
            p.expect_op("=")
            nxt = p.peek()
            if nxt.kind == "name" and nxt.text == "hull":
                p.next()
                gens = p.vectors()
                p.end()
                data = {"name": name, "hull": gens, "dim": current_dim}
            elif nxt.kind == "name" and nxt.text == "corpus":
                p.next()
                ident = p.name_token()
                if ident.text not in corpus.FACTORIES:
                    raise ParseError(
                        f"unknown corpus entry {ident.text!r}", ident.line, ident.column
                    )
                args = []
                while p.peek().kind != "end":
                    if p.peek().kind == "op" and p.peek().text == "(":
                        args.append(p.vector())
                    else:
                        args.append(p.nat())
                data = {"name": name, "corpus": ident.text, "args": tuple(args)}
            else:
                rest = raw[raw.index("=") + 1 :]
                formula = _parse_line_formula(rest, lineno, raw.index("=") + 2)
                dim = _formula_dim(formula, current_dim, lineno)
                data = {"name": name, "formula": formula, "dim": dim}
            names[name] = "cone"
            statements.append(Statement("cone", lineno, stripped, data))
        elif kind == "oracle":
            name = p.fresh_name()
            p.expect_op("=")
            p.keyword("corpus")
            ident = p.name_token()
            if ident.text not in corpus.ORACLE_FACTORIES:
                raise ParseError(f"unknown oracle entry {ident.text!r}", ident.line, ident.column)
            p.end()
            names[name] = "oracle"
            statements.append(
                Statement("oracle", lineno, stripped, {"name": name, "corpus": ident.text})
            )
        elif kind == "subspace":
            name = p.fresh_name()
            p.expect_op("=")
            p.keyword("span")
            vectors = p.vectors()
            p.end()
            if not vectors and current_dim is None:
                raise ParseError(
                    "an empty span needs a preceding space declaration", lineno, 1
                )
            names[name] = "subspace"
            statements.append(
                Statement(
                    "subspace",
                    lineno,
                    stripped,
                    {"name": name, "vectors": vectors, "dim": current_dim},
                )
            )
        elif kind == "map":
            name = p.fresh_name()
            p.expect_op("=")
            rows = p.vectors()
            p.end()
            if not rows:
                raise ParseError("a map needs at least one row", lineno, 1)
            names[name] = "map"
            statements.append(Statement("map", lineno, stripped, {"name": name, "rows": rows}))
        elif kind == "check":
            pred = p.hyphenated()
            if pred not in PREDICATES:
                raise ParseError(f"unknown predicate {pred!r}", head.line, head.column)
            target = p.known_name(("cone",))
            data = {"pred": pred, "target": target, "point": None, "set": None}
            if pred in ("arch-element", "almost-arch-element", "order-unit"):
                data["point"] = p.vector()
            elif pred in ("order-ideal", "order-convex", "uniformly-closed"):
                data["set"] = p.known_name(("cone", "subspace"))
            p.end()
            statements.append(Statement("check", lineno, stripped, data))
        elif kind == "compute":
            what = p.name_token().text
            if what not in ("N", "D", "closure"):
                raise ParseError(f"compute expects N, D, or closure, not {what!r}", lineno, 1)
            target = p.known_name(("cone",))
            subset = None
            if what == "closure" and p.peek().kind == "name":
                subset = p.known_name(("cone", "subspace"))
            p.end()
            statements.append(
                Statement(
                    "compute", lineno, stripped, {"what": what, "target": target, "set": subset}
                )
            )
        elif kind == "quotient":
            target = p.known_name(("cone",))
            p.keyword("by")
            ideal = p.known_name(("subspace",))
            new_name = None
            if p.peek().kind == "name" and p.peek().text == "as":
                p.next()
                new_name = p.fresh_name()
                names[new_name] = "cone"
            p.end()
            statements.append(
                Statement(
                    "quotient",
                    lineno,
                    stripped,
                    {"target": target, "ideal": ideal, "as": new_name},
                )
            )
        elif kind == "archimedeanize":
            target = p.known_name(("cone",))
            p.end()
            statements.append(Statement("archimedeanize", lineno, stripped, {"target": target}))
        elif kind == "factor":
            map_name = p.known_name(("map",))
            p.keyword("through")
            source = p.known_name(("cone",))
            p.keyword("into")
            target = p.known_name(("cone",))
            p.end()
            statements.append(
                Statement(
                    "factor",
                    lineno,
                    stripped,
                    {"map": map_name, "source": source, "target": target},
                )
            )
        elif kind == "falsify":
            prop = p.hyphenated()
            if prop not in FALSIFY_PROPS:
                raise ParseError(f"unknown falsifiable property {prop!r}", head.line, head.column)
            target = p.known_name(("cone", "oracle"))
            data = {"prop": prop, "target": target, "point": None, "budget": None, "seed": None}
            if prop == "arch-element":
                data["point"] = p.vector()
            while p.peek().kind == "name":
                word = p.name_token().text
                if word == "budget":
                    data["budget"] = p.nat()
                elif word == "seed":
                    data["seed"] = p.nat()
                else:
                    raise ParseError(f"unknown falsify option {word!r}", lineno, 1)
            p.end()
            statements.append(Statement("falsify", lineno, stripped, data))
        else:
            raise ParseError(f"unknown statement {kind!r}", head.line, head.column)
    if not header_seen:
        raise ParseError(f"script must start with {FORMAT_VERSION!r}", 1, 1)
    return Script(tuple(statements))


def _parse_line_formula(text: str, line: int, column: int) -> Formula:
    from .linarith import parse_formula

    return parse_formula(text, line=line, column=column)


# ---------------------------------------------------------------------------
# Rendering


def _render(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple) and all(isinstance(v, Fraction) for v in value):
        return [str(v) for v in value]
    if isinstance(value, (tuple, list)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    return value


def _render_matrix(m):
    return [[str(v) for v in row] for row in m]


def _render_witness(witness):
    if witness is None:
        return None
    return _render(witness)


# ---------------------------------------------------------------------------
# Execution


class _Env:
    def __init__(self, options: Options):
        self.options = options
        self.budget = options.budget()
        self.cones: dict = {}
        self.subspaces: dict = {}
        self.maps: dict = {}
        self.oracles: dict = {}
        self.space_dims: dict = {}
        self.arch_cache: dict = {}

    def set_of(self, name: str) -> spaces.SemilinearSet:
        if name in self.cones:
            return self.cones[name].positive
        return self.subspaces[name].span_set()

    def arch_result(self, name: str) -> arch.ArchResult:
        if name not in self.arch_cache:
            self.arch_cache[name] = arch.archimedeanize(self.cones[name], self.budget)
        return self.arch_cache[name]


def _zero_subspace_set(dim: int) -> spaces.SemilinearSet:
    return spaces.Subspace(dim, ()).span_set()


def _run_check(env: _Env, data: dict) -> Record:
    pred = data["pred"]
    target = env.cones[data["target"]]
    b = env.budget
    if pred == "wedge":
        verdict = target.wedge_verdict(b)
    elif pred == "cone":
        verdict = target.cone_verdict(b)
    elif pred == "generating":
        verdict = target.generating_verdict(b)
    elif pred == "archimedean":
        verdict = spaces.is_archimedean(target, b)
    elif pred == "almost-archimedean":
        verdict = spaces.is_almost_archimedean(target, b)
    elif pred == "arch-element":
        verdict = spaces.is_archimedean_element(target, data["point"], b)
    elif pred == "almost-arch-element":
        verdict = spaces.is_almost_archimedean_element(target, data["point"], b)
    elif pred == "order-unit":
        verdict = spaces.is_order_unit(target, data["point"], b)
    elif pred == "order-ideal":
        verdict = spaces.is_order_ideal(target, env.set_of(data["set"]), b)
    elif pred == "order-convex":
        verdict = spaces.is_order_convex(target, env.set_of(data["set"]), b)
    elif pred == "uniformly-closed":
        verdict = spaces.is_uniformly_closed(target, env.set_of(data["set"]), b)
    elif pred == "riesz":
        verdict = spaces.is_riesz(target, b, max_dim=env.options.lattice_dim_max)
    else:  # pragma: no cover - parser rejects unknown predicates
        raise ValueError(pred)
    qualifier = data["set"] or ""
    name = " ".join(x for x in (pred, data["target"], qualifier) if x)
    if data["point"] is not None:
        name += " at (" + ", ".join(str(v) for v in data["point"]) + ")"
    obj = {"reason": verdict.reason} if verdict.reason else None
    return Record(
        kind="check",
        name=name,
        verdict=verdict.value,
        witness=_render_witness(verdict.witness),
        object=obj,
    )


def _run_compute(env: _Env, data: dict) -> Record:
    target = env.cones[data["target"]]
    b = env.budget
    what = data["what"]
    if what == "N":
        nset, nsub = spaces.infinitesimals(target, b)
        obj = {
            "set": canonical_str(nset.formula),
            "basis": _render_matrix(nsub.basis),
        }
    elif what == "D":
        obj = {"set": canonical_str(spaces.d_wedge(target, b).formula)}
    else:
        subset = (
            env.set_of(data["set"]) if data["set"] else _zero_subspace_set(target.dim)
        )
        closure = spaces.uniform_closure(target, subset, b)
        obj = {"set": canonical_str(closure.formula)}
    name = f"{what} {data['target']}" + (f" {data['set']}" if data["set"] else "")
    return Record(kind="compute", name=name, object=obj)


def _run_quotient(env: _Env, data: dict) -> Record:
    target = env.cones[data["target"]]
    ideal = env.subspaces[data["ideal"]]
    quotient_space, pres = spaces.quotient(target, ideal, env.budget)
    registered = data["as"] or f"{data['target']}/{data['ideal']}"
    env.cones[registered] = quotient_space
    obj = {
        "dim": quotient_space.dim,
        "positive": canonical_str(quotient_space.positive.formula),
        "projection": _render_matrix(pres.projection.matrix),
        "registered": registered,
    }
    return Record(kind="quotient", name=f"{data['target']} by {data['ideal']}", object=obj)


def _run_archimedeanize(env: _Env, data: dict) -> Record:
    res = env.arch_result(data["target"])
    steps = [
        {
            "ideal": _render_matrix(step.ideal.basis),
            "pulled_back_ideal": _render_matrix(step.pulled_back_ideal.basis),
            "projection": _render_matrix(step.presentation.projection.matrix),
        }
        for step in res.steps
    ]
    obj = {
        "steps": steps,
        "composite": _render_matrix(res.composite.matrix),
        "final_dim": res.final_space.dim,
        "final": canonical_str(res.final_space.positive.formula),
        "final_positive_projected": canonical_str(res.final_positive.formula),
    }
    return Record(
        kind="archimedeanize",
        name=data["target"],
        depth=res.stabilization_depth,
        object=obj,
    )


def _run_factor(env: _Env, data: dict) -> Record:
    res = env.arch_result(data["source"])
    phi = env.maps[data["map"]]
    target = env.cones[data["target"]]
    factored = arch.factor_through(res, phi, target, env.budget)
    obj = {"matrix": _render_matrix(factored.matrix)}
    return Record(
        kind="factor",
        name=f"{data['map']} through {data['source']} into {data['target']}",
        object=obj,
    )


def _run_falsify(env: _Env, data: dict) -> Record:
    name = data["target"]
    oracle = env.oracles.get(name)
    if oracle is None:
        oracle = corpus.from_semilinear(env.cones[name], name)
    budget = data["budget"] if data["budget"] is not None else env.options.sample_budget
    seed = data["seed"] if data["seed"] is not None else env.options.seed
    prop = {"arch-element": "element"}.get(data["prop"], data["prop"])
    evidence = corpus.falsify(
        oracle, prop, budget=budget, seed=seed, element=data["point"]
    )
    if evidence is None:
        witness = None
        obj = {"evidence": "none", "budget": budget, "seed": seed}
    else:
        witness = {
            "x": evidence.x,
            "y": evidence.y,
            "scales": {"from": min(evidence.checked), "to": max(evidence.checked)},
        }
        obj = {"evidence": "found", "budget": budget, "seed": seed}
    label = f"{data['prop']} {name}"
    return Record(
        kind="falsify",
        name=label,
        verdict=None if evidence is None else False,
        witness=_render_witness(witness),
        object=obj,
    )


def run(script: Script, options: Options = None) -> Report:
    """Execute a parsed script; statement order is preserved in the
    report.  Errors abort execution, leaving a partial report and the
    matching exit code."""
    options = options or Options()
    env = _Env(options)
    report = Report()
    for stmt in script.statements:
        start = time.monotonic()
        try:
            record = _execute(env, stmt)
        except ContractViolation as exc:
            report.records.append(
                Record(
                    kind="error",
                    name=stmt.text,
                    object={"error": type(exc).__name__, "message": str(exc)},
                )
            )
            report.exit_code = 4
            break
        except (BudgetExceeded, EngineInvariantError, OvskitError) as exc:
            report.records.append(
                Record(
                    kind="error",
                    name=stmt.text,
                    object={"error": type(exc).__name__, "message": str(exc)},
                )
            )
            report.exit_code = 3
            break
        record.millis = int((time.monotonic() - start) * 1000)
        report.records.append(record)
    return report


def _execute(env: _Env, stmt: Statement) -> Record:
    data = stmt.data
    if stmt.kind == "space":
        env.space_dims[data["name"]] = data["dim"]
        return Record(
            kind="define", name=data["name"], object={"type": "space", "dim": data["dim"]}
        )
    if stmt.kind == "cone":
        if "formula" in data:
            ovs = spaces.OVSpace(
                data["dim"], spaces.SemilinearSet(data["dim"], data["formula"])
            )
        elif "hull" in data:
            ovs = corpus.generated_wedge(data["hull"], dim=data["dim"], budget=env.budget)
        else:
            ovs = corpus.FACTORIES[data["corpus"]](*data["args"])
        env.cones[data["name"]] = ovs
        return Record(
            kind="define",
            name=data["name"],
            object={
                "type": "cone",
                "dim": ovs.dim,
                "set": canonical_str(ovs.positive.formula),
            },
        )
    if stmt.kind == "oracle":
        oracle = corpus.ORACLE_FACTORIES[data["corpus"]]()
        env.oracles[data["name"]] = oracle
        return Record(
            kind="define",
            name=data["name"],
            object={"type": "oracle", "dim": oracle.dim, "oracle": oracle.name},
        )
    if stmt.kind == "subspace":
        vectors = data["vectors"]
        dim = data["dim"]
        if dim is None:
            if not vectors:
                raise ParseError("an empty span needs a preceding space declaration", stmt.line, 1)
            dim = len(vectors[0])
        sub = spaces.Subspace(dim, vectors)
        env.subspaces[data["name"]] = sub
        return Record(
            kind="define",
            name=data["name"],
            object={"type": "subspace", "dim": dim, "basis": _render_matrix(sub.basis)},
        )
    if stmt.kind == "map":
        lmap = spaces.LinearMap(data["rows"])
        env.maps[data["name"]] = lmap
        return Record(
            kind="define",
            name=data["name"],
            object={"type": "map", "matrix": _render_matrix(lmap.matrix)},
        )
    if stmt.kind == "check":
        return _run_check(env, data)
    if stmt.kind == "compute":
        return _run_compute(env, data)
    if stmt.kind == "quotient":
        return _run_quotient(env, data)
    if stmt.kind == "archimedeanize":
        return _run_archimedeanize(env, data)
    if stmt.kind == "factor":
        return _run_factor(env, data)
    if stmt.kind == "falsify":
        return _run_falsify(env, data)
    raise ValueError(f"unknown statement kind {stmt.kind}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Output


def format_structured(report: Report) -> str:
    lines = [FORMAT_VERSION]
    for r in report.records:
        lines.append(
            json.dumps(
                {
                    "kind": r.kind,
                    "name": r.name,
                    "verdict": r.verdict,
                    "witness": r.witness,
                    "object": r.object,
                    "depth": r.depth,
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def format_text(report: Report) -> str:
    lines = [FORMAT_VERSION]
    for r in report.records:
        if r.kind == "define":
            summary = json.dumps(r.object, sort_keys=True)
            lines.append(f"define {r.name}: {summary}")
            continue
        if r.kind == "error":
            lines.append(f"error in {r.name!r}: {r.object['error']}: {r.object['message']}")
            continue
        parts = [f"{r.kind} {r.name}:"]
        if r.verdict is not None or r.kind in ("check", "falsify"):
            parts.append({True: "true", False: "false", None: "undecided"}[r.verdict])
        if r.depth is not None:
            parts.append(f"depth={r.depth}")
        if r.object:
            parts.append(json.dumps(r.object, sort_keys=True))
        if r.witness:
            parts.append("witness=" + json.dumps(r.witness, sort_keys=True))
        parts.append(f"({r.millis} ms)")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ovskit",
        description="Check order properties of semilinear cones and compute "
        "their Archimedeanizations from a small script language.",
    )
    parser.add_argument("--file", help="script file (default: standard input)")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sample-budget", type=int, default=10_000)
    parser.add_argument("--cell-budget", type=int, default=100_000)
    parser.add_argument("--atom-budget", type=int, default=10_000)
    parser.add_argument("--lattice-dim-max", type=int, default=4)
    args = parser.parse_args(argv)
    options = Options(
        format=args.format,
        seed=args.seed,
        sample_budget=args.sample_budget,
        cell_budget=args.cell_budget,
        atom_budget=args.atom_budget,
        lattice_dim_max=args.lattice_dim_max,
    )
    if args.file:
        with open(args.file, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = sys.stdin.read()
    try:
        script = parse(text)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    report = run(script, options)
    if options.format == "structured":
        sys.stdout.write(format_structured(report))
    else:
        sys.stdout.write(format_text(report))
    return report.exit_code


def main_entry():  # pragma: no cover - console script shim
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
