"""Command-line front end.

Exit codes: 0 success or pass, 1 mathematical failure or certificate,
2 usage or input error, 3 undecided.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import corpus
from .field import Field
from .linalg import Matrix
from .module import FDModule, check_module, load_module, module_to_json, regular_module
from .theorems import (
    FAIL,
    PASS,
    Undecidable,
    check_genlie,
    check_genlie2,
    check_na1,
    check_t3,
    enumerate_characters,
    ext1_characters,
    orbit_classify,
)
from .triangularize import (
    Character,
    FailureCertificate,
    loewy_series,
    nilpotency_ladder,
    strict_triangularize,
    triangularize,
)
from .extract import extract

OK, FAILED, USAGE, UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_presentation(ref: str):
    try:
        return corpus.resolve_presentation(ref)
    except (FileNotFoundError, KeyError) as exc:
        raise UsageError(str(exc)) from exc


def _load_module(args):
    ref = args.module
    if ref is None:
        raise UsageError("--module is required")
    pres = _load_presentation(args.presentation) if args.presentation else None
    name = ref[len(corpus.BUILTIN_PREFIX):] if ref.startswith(corpus.BUILTIN_PREFIX) else ref
    if not Path(ref).exists() and name in corpus.MODULES:
        m = corpus.builtin_module(name)
        return FDModule(pres, m.action, m.dim) if pres is not None else m
    try:
        return load_module(ref, pres)
    except FileNotFoundError as exc:
        raise UsageError(f"no module file or built-in named {ref!r}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: invalid JSON: {exc}") from exc


def _load_matrices(ref: str) -> list[Matrix]:
    name = ref[len(corpus.BUILTIN_PREFIX):] if ref.startswith(corpus.BUILTIN_PREFIX) else ref
    if not Path(ref).exists() and name in corpus.MATRIX_SETS:
        return corpus.builtin_matrices(name)
    try:
        data = json.loads(Path(ref).read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"no matrix file or built-in named {ref!r}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: invalid JSON: {exc}") from exc
    field = Field(int(data.get("char", 0)))
    try:
        return [Matrix(field, [[field.parse(x) if isinstance(x, str) else field(x) for x in row] for row in m]) for m in data["matrices"]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{ref}: expected {{\"matrices\": [...]}}") from exc


def _rng(args):
    return random.Random(args.seed) if args.seed is not None else None


def _emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _flag_text(res) -> str:
    if isinstance(res, FailureCertificate):
        lines = [f"certificate: {res.reason} at stage {res.stage} (quotient of dimension {res.quotient_dim})"]
        if res.generator:
            lines.append(f"generator: {res.generator}, char poly remainder: {res.remainder}")
        if res.character is not None:
            lines.append(f"character: {res.character}")
        if res.reason == "NoCommonEigenvector":
            lines.append(f"eigenvalue tuples exhausted: {res.exhausted}")
        return "\n".join(lines)
    lines = ["flag found" + (" (strict)" if res.strict else "")]
    lines += [f"layer {k}: {c}" for k, c in enumerate(res.characters)]
    lines.append("transform:")
    lines.append(str(res.transform))
    return "\n".join(lines)


def _parse_character(p, text: str, k: int) -> Character:
    vals = {}
    for part in text.replace(",", " ").split():
        if "=" not in part and ":" not in part:
            raise UsageError(f"character entries look like name=value, got {part!r}")
        name, value = part.replace(":", "=").split("=", 1)
        vals[name.strip()] = value.strip()
    names = p.names[:k]
    missing = [n for n in names if n not in vals]
    if missing:
        raise UsageError("character is missing " + ", ".join(missing))
    return Character(tuple(names), tuple(p.field.parse(vals[n]) for n in names))


# subcommands


def cmd_validate(args) -> int:
    p = _load_presentation(args.presentation)
    rep = p.overlap_consistency_check()
    dat = p.datum_consistency()
    fails = list(rep.failures) + list(dat.failures)
    data = {
        "generators": list(p.names),
        "field": str(p.field),
        "overlaps_checked": rep.checked,
        "consistent": not fails,
        "failures": [{"kind": f.kind, "generators": list(f.generators), "left": f.left, "right": f.right} for f in fails],
    }
    text = "consistent" if not fails else "\n".join(
        f"{f.kind} {' '.join(f.generators)}: {f.left} != {f.right}" for f in fails
    )
    _emit(args, data, text)
    return OK if not fails else FAILED


def cmd_nf(args) -> int:
    p = _load_presentation(args.presentation)
    word = args.word.split()
    unknown = [w for w in word if w not in p.index]
    if unknown:
        raise UsageError("unknown generators: " + ", ".join(unknown))
    out = p.format_poly(p.normal_form(word))
    _emit(args, {"normal_form": out}, out)
    return OK


def cmd_mul(args) -> int:
    p = _load_presentation(args.presentation)
    out = p.format_poly(p.mul(p.parse_poly(args.left), p.parse_poly(args.right)))
    _emit(args, {"product": out}, out)
    return OK


def cmd_check_module(args) -> int:
    m = _load_module(args)
    rep = check_module(m)
    data = {"ok": rep.ok, "checked": rep.checked,
            "failures": [{"relation": f.relation, "lhs": f.lhs.tolist(), "rhs": f.rhs.tolist()} for f in rep.failures]}
    text = "relations hold" if rep.ok else "\n".join(f"{f.relation}:\n{f.lhs}\n!=\n{f.rhs}" for f in rep.failures)
    _emit(args, data, text)
    return OK if rep.ok else FAILED


def _family(args):
    if args.matrices:
        return _load_matrices(args.matrices)
    return _load_module(args)


def cmd_triangularize(args) -> int:
    res = triangularize(_family(args), _rng(args))
    _emit(args, res.to_json(), _flag_text(res))
    return FAILED if isinstance(res, FailureCertificate) else OK


def cmd_strict(args) -> int:
    res = strict_triangularize(_family(args), _rng(args))
    _emit(args, res.to_json(), _flag_text(res))
    return FAILED if isinstance(res, FailureCertificate) else OK


def cmd_loewy(args) -> int:
    res = loewy_series(_family(args))
    _emit(args, res.to_json(), f"layers: {list(res.layers)}\np-semiartinian: {res.p_semiartinian}")
    return OK if res.p_semiartinian else FAILED


def cmd_ladder(args) -> int:
    fam = _family(args)
    mats = fam.action if isinstance(fam, FDModule) else fam
    n = nilpotency_ladder(mats, args.bound)
    text = f"Nilpotent({n})" if n is not None else "NotWithinBound"
    _emit(args, {"nilpotent": n is not None, "index": n}, text)
    return OK if n is not None else FAILED


def cmd_characters(args) -> int:
    p = _load_presentation(args.presentation)
    level = p.n if args.level is None else args.level
    fam = enumerate_characters(p, level)
    lines = [" ".join(fam.names)] + ["  ".join(str(v) for v in c) for c in fam.components]
    _emit(args, fam.to_json(), "\n".join(lines))
    return OK


def cmd_orbit(args) -> int:
    p = _load_presentation(args.presentation)
    level = p.n if args.level is None else args.level
    lam = _parse_character(p, args.character, level - 1)
    rep = orbit_classify(lam, p, level, args.bound or 64)
    _emit(args, rep.to_json(), str(rep))
    if rep.kind == "exceeds-bound":
        return UNDECIDED
    return OK


def cmd_ext1(args) -> int:
    p = _load_presentation(args.presentation)
    level = p.n if args.level is None else args.level
    lam = _parse_character(p, args.lam, level)
    mu = _parse_character(p, args.mu, level)
    d = ext1_characters(p, level, lam, mu)
    _emit(args, {"ext1": d}, str(d))
    return OK


def cmd_verify(args) -> int:
    p = _load_presentation(args.presentation)
    module = _load_module(args) if args.module else None
    if args.theorem == "genlie":
        rep = check_genlie(p)
    elif args.theorem == "genlie2":
        rep = check_genlie2(p, args.bound or 5)
    elif args.theorem == "t3":
        rep = check_t3(p, module, args.bound or 64)
    else:
        if module is None:
            raise UsageError("--theorem na1 needs --module")
        rep = check_na1(p, module)
    lines = [rep.header, f"theorem {rep.theorem}: {rep.overall}"]
    for c in rep.conditions:
        line = f"  {c.condition} {c.level or ''}: {c.verdict}"
        if c.reason:
            line += f" ({c.reason})"
        if c.witness is not None:
            line += f" witness {json.dumps(c.witness)}"
        lines.append(line)
    _emit(args, rep.to_json(), "\n".join(lines))
    return {PASS: OK, FAIL: FAILED}.get(rep.overall, UNDECIDED)


def cmd_regular(args) -> int:
    p = _load_presentation(args.presentation)
    m = regular_module(p)
    data = module_to_json(m)
    text = f"dimension {m.dim}\n" + "\n".join(f"{n}:\n{a}" for n, a in zip(m.names, m.action))
    _emit(args, data, text)
    return OK


def cmd_extract(args) -> int:
    if not args.matrices:
        raise UsageError("--matrices is required")
    res = extract(_load_matrices(args.matrices), _rng(args))
    if isinstance(res, FailureCertificate):
        _emit(args, res.to_json(), _flag_text(res))
        return FAILED
    dsl = res.presentation.to_dsl()
    data = {
        "presentation": dsl,
        "generators": {n: g.tolist() for n, g in zip(res.presentation.names, res.generators)},
        "overlap_consistent": res.overlap.ok,
        "relations_hold": res.module().verified,
    }
    text = dsl + "# generators\n" + "".join(
        f"# {n} = {g.tolist()}\n" for n, g in zip(res.presentation.names, res.generators)
    )
    if not res.overlap.ok:
        text += "# note: as a free presentation with these power relations the overlaps do not resolve\n"
    _emit(args, data, text.rstrip("\n"))
    return OK


def cmd_examples(args) -> int:
    if args.action == "list":
        rows = [("presentation", n) for n in sorted(corpus.PRESENTATIONS)]
        rows += [("matrices", n) for n in sorted(corpus.MATRIX_SETS)]
        rows += [("module", n) for n in sorted(corpus.MODULES)]
        _emit(args, {"examples": [{"kind": k, "name": n} for k, n in rows]}, "\n".join(f"{k:12} {n}" for k, n in rows))
        return OK
    name = args.name
    if name is None:
        raise UsageError("examples emit needs a name")
    if name in corpus.PRESENTATIONS:
        text = corpus.builtin_presentation(name).to_dsl().rstrip("\n")
        _emit(args, {"name": name, "presentation": text + "\n"}, text)
    elif name in corpus.MATRIX_SETS:
        mats = corpus.builtin_matrices(name)
        data = {"char": mats[0].field.char, "matrices": [m.tolist() for m in mats]}
        print(json.dumps(data, indent=2))
    elif name in corpus.MODULES:
        pres_name, _ = corpus.MODULES[name]
        print(json.dumps(module_to_json(corpus.builtin_module(name), corpus.BUILTIN_PREFIX + pres_name), indent=2))
    else:
        raise UsageError(f"no built-in example {name!r}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--presentation", help="presentation file or built-in name")
    common.add_argument("--module", help="module JSON file or built-in module name")
    common.add_argument("--matrices", help="JSON file with a matrix list, or a built-in matrix set")
    common.add_argument("--json", action="store_true", help="print JSON")
    common.add_argument("--seed", type=int, help="seed for randomized search orders")
    common.add_argument("--bound", type=int, help="search bound")

    parser = argparse.ArgumentParser(prog="oreflag", description="Ore-solvable presentations and triangularization")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, **kw):
        sp = sub.add_parser(name, parents=[common], help=help_text, **kw)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "parse and check overlaps")
    add("nf", cmd_nf, "normal form of a word").add_argument("word", help='generator names, e.g. "y x"')
    sp = add("mul", cmd_mul, "product of two polynomials")
    sp.add_argument("left")
    sp.add_argument("right")
    add("check-module", cmd_check_module, "check the defining relations on a module")
    add("triangularize", cmd_triangularize, "find a flag")
    add("strict", cmd_strict, "find a strict flag")
    add("loewy", cmd_loewy, "pointed Loewy layers")
    add("ladder", cmd_ladder, "nilpotency index of the generated algebra")
    add("characters", cmd_characters, "characters of a level").add_argument("--level", type=int)
    sp = add("orbit", cmd_orbit, "sigma-orbit of a character")
    sp.add_argument("--level", type=int)
    sp.add_argument("--character", required=True, help='e.g. "x=1"')
    sp = add("ext1", cmd_ext1, "Ext^1 between two characters")
    sp.add_argument("--level", type=int)
    sp.add_argument("--lam", required=True)
    sp.add_argument("--mu", required=True)
    add("verify", cmd_verify, "check theorem hypotheses").add_argument(
        "--theorem", required=True, choices=["genlie", "genlie2", "t3", "na1"])
    add("regular", cmd_regular, "regular module of a finite-dimensional presentation")
    add("extract", cmd_extract, "Lie-type presentation of a pointed matrix algebra")
    sp = add("examples", cmd_examples, "built-in examples")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_presentation = {"validate", "nf", "mul", "characters", "orbit", "ext1", "verify", "regular"}
    try:
        if args.command in needs_presentation and not args.presentation:
            raise UsageError("--presentation is required")
        return args.func(args)
    except UsageError as exc:
        print(f"oreflag: {exc}", file=sys.stderr)
        return USAGE
    except Undecidable as exc:
        print(f"oreflag: undecided: {exc}", file=sys.stderr)
        return UNDECIDED
    except (ValueError, KeyError, OSError) as exc:
        print(f"oreflag: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
