"""``cellkit`` command line.

Exit codes: 0 success, 1 input error, 2 budget refusal, 3 theorem violation.
Argument errors also exit 1 so that 2 always means a budget refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .abelian import parse_matrix, smith_normal_form
from .cellular import cell_invariants, cover_verdict
from .errors import BudgetExceeded, CellkitError, InputError, ParseError, TheoremViolation
from .groups import (
    DEFAULT_ENUM_BUDGET,
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    GroupHom,
    catalog,
    count_homs,
    direct_product,
    p_socle,
    parse_cycles,
    surjections,
)
from .homology import DEFAULT_BASIS_BUDGET, DEFAULT_DEGREE_CAP, homology

OVERRIDE_ENV = "CELLKIT_BUDGET_OVERRIDE"

_NAME = re.compile(r"C\d+|S\d+|A\d+|D\d+|Q8|SL\(2,\d+\)|E\d+\^\d+")


# -- group specs -------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group argument.

    ``kind`` is ``"name"`` (one catalogue name or a product of them, payload
    is the tuple of names), ``"perm"`` (payload is the tuple of 0-based image
    tuples, all of one degree) or ``"table"`` (payload is a file path).
    """

    text: str
    kind: str
    payload: tuple | str

    def build(self, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
        if self.kind == "name":
            G = catalog(self.payload[0], max_order)
            for name in self.payload[1:]:
                G = direct_product(G, catalog(name, max_order), max_order)
            G.label = self.text
            return G
        if self.kind == "perm":
            degree = len(self.payload[0])
            return FiniteGroup.from_permutations(degree, self.payload, label=self.text, max_order=max_order)
        return load_table(self.payload, max_order)


def _split_top_level(s: str, start: int):
    """Split on commas outside parentheses, yielding ``(offset, piece)``."""
    depth, last = 0, 0
    for i, c in enumerate(s):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            yield start + last, s[last:i]
            last = i + 1
    yield start + last, s[last:]


def parse_group_spec(text: str) -> GroupSpec:
    if text.startswith("perm:"):
        perms = []
        for off, piece in _split_top_level(text[5:], 5):
            if not piece.strip():
                raise ParseError("empty permutation generator", off, text)
            lead = len(piece) - len(piece.lstrip())
            try:
                perms.append(parse_cycles(piece))
            except ParseError as e:
                raise ParseError(str(e).rsplit(" (at offset", 1)[0], off + lead + e.position, text) from None
        degree = max(1, max(len(p) for p in perms))
        perms = tuple(p + tuple(range(len(p), degree)) for p in perms)
        return GroupSpec(text, "perm", perms)
    if text.startswith("table:"):
        path = text[6:]
        if not path:
            raise ParseError("missing table path", 6, text)
        return GroupSpec(text, "table", path)
    names, pos = [], 0
    while True:
        m = _NAME.match(text, pos)
        if not m:
            raise ParseError("expected a group name", pos, text)
        names.append(m.group())
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise ParseError("expected 'x' or end of input", pos, text)
        pos += 1
    return GroupSpec(text, "name", tuple(names))


def load_table(path: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Cayley table JSON: ``{"order": n, "mul": [[...], ...]}``, optional ``generators``."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read table file {path!r}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path!r}: {e.msg}", e.pos) from None
    if not isinstance(data, dict) or "mul" not in data:
        raise InputError(f"{path}: expected an object with a 'mul' table")
    mul = data["mul"]
    if "order" in data and data["order"] != len(mul):
        raise InputError(f"{path}: 'order' is {data['order']} but the table has {len(mul)} rows")
    return FiniteGroup.from_table(mul, data.get("generators"), label=data.get("label", path), max_order=max_order)


# -- configuration -----------------------------------------------------------


@dataclass
class RunConfig:
    prime: int | None = None
    max_order: int = DEFAULT_MAX_ORDER
    basis_budget: int = DEFAULT_BASIS_BUDGET
    enum_budget: int = DEFAULT_ENUM_BUDGET
    degree_cap: int = DEFAULT_DEGREE_CAP
    format: str = "text"
    jobs: int = 1
    env: dict = field(default_factory=lambda: dict(os.environ), repr=False)

    def validate(self):
        for name in ("max_order", "basis_budget", "enum_budget", "degree_cap", "jobs"):
            if getattr(self, name) < 1:
                raise InputError(f"{name.replace('_', '-')} must be positive")
        if self.format not in ("text", "json"):
            raise InputError(f"unknown format {self.format!r}")
        if self.env.get(OVERRIDE_ENV) != "1":
            for name, default in (
                ("max_order", DEFAULT_MAX_ORDER),
                ("basis_budget", DEFAULT_BASIS_BUDGET),
                ("enum_budget", DEFAULT_ENUM_BUDGET),
            ):
                if getattr(self, name) > default:
                    raise BudgetExceeded(
                        f"{name.replace('_', '-')} above the default {default} needs {OVERRIDE_ENV}=1"
                    )

    @property
    def homology_budgets(self) -> dict:
        return {"basis_budget": self.basis_budget, "degree_cap": self.degree_cap}


# -- commands ----------------------------------------------------------------


def _require_prime(cfg):
    if cfg.prime is None:
        raise InputError("this command needs --prime")
    return cfg.prime


def cmd_report(spec: GroupSpec, cfg: RunConfig) -> str:
    G = spec.build(cfg.max_order)
    report = cell_invariants(G, _require_prime(cfg), **cfg.homology_budgets)
    if cfg.format == "json":
        return _dump(report.to_json())
    return report.render_text()


def cmd_homology(spec: GroupSpec, degree: int, cfg: RunConfig) -> str:
    G = spec.build(cfg.max_order)
    H = homology(G, degree, **cfg.homology_budgets)
    if cfg.format == "json":
        return _dump({"group_label": G.label, "degree": degree, "homology": H.to_json()})
    return str(H)


def cmd_socle(spec: GroupSpec, cfg: RunConfig) -> str:
    G = spec.build(cfg.max_order)
    p = _require_prime(cfg)
    S = p_socle(G, p)
    data = {
        "group_label": G.label,
        "prime": p,
        "order": G.order,
        "socle_order": S.order,
        "p_generated": S.is_whole(),
        "generators": [G.element_label(g) for g in S.generators],
    }
    if cfg.format == "json":
        return _dump(data)
    gens = ", ".join(data["generators"]) or "none"
    return (
        f"socle order {S.order} of {G.order}\n"
        f"p-generated {str(S.is_whole()).lower()}\n"
        f"generators  {gens}"
    )


def cmd_hom_count(spec_h: GroupSpec, spec_g: GroupSpec, cfg: RunConfig) -> str:
    H, G = spec_h.build(cfg.max_order), spec_g.build(cfg.max_order)
    n = count_homs(H, G, budget=cfg.enum_budget, jobs=cfg.jobs)
    if cfg.format == "json":
        return _dump({"source": H.label, "target": G.label, "count": n})
    return f"Hom({H.label}, {G.label}) = {n}"


def _resolve_element(G: FiniteGroup, token: str, where: int, text: str) -> int:
    token = token.strip()
    if re.fullmatch(r"\d+", token):
        x = int(token)
        if x >= G.order:
            raise InputError(f"element index {x} out of range for {G.label} of order {G.order}")
        return x
    labels = {G.element_label(x).replace(" ", ""): x for x in range(G.order)}
    key = token.replace(" ", "")
    if key in labels:
        return labels[key]
    raise ParseError(f"{token!r} is neither an element index nor an element of {G.label}", where, text)


def parse_map(H: FiniteGroup, G: FiniteGroup, text: str, cfg: RunConfig) -> GroupHom:
    """``auto`` (first surjection), ``identity``, or images of H's generators separated by commas."""
    if text == "auto":
        found = surjections(H, G, budget=cfg.enum_budget, jobs=cfg.jobs)
        if not found:
            raise InputError(f"no surjection {H.label} -> {G.label}")
        return found[0]
    if text == "identity":
        if not H.same_table(G):
            raise InputError("identity map needs identical source and target")
        return GroupHom(H, G, range(H.order), check=False)
    images = [_resolve_element(G, tok, off, text) for off, tok in _split_top_level(text, 0)]
    return GroupHom.from_generator_images(H, G, images)


def cmd_verify_cover(spec_h: GroupSpec, spec_g: GroupSpec, map_spec: str, cfg: RunConfig) -> str:
    H, G = spec_h.build(cfg.max_order), spec_g.build(cfg.max_order)
    phi = parse_map(H, G, map_spec, cfg)
    v = cover_verdict(H, G, phi, budget=cfg.enum_budget, jobs=cfg.jobs)
    if cfg.format == "json":
        return _dump(
            {
                "source": H.label,
                "target": G.label,
                "images": [G.element_label(phi(g)) for g in H.generators],
                "cover": v.is_cover,
                "hom_source_source": v.hom_hh,
                "hom_source_target": v.hom_hg,
                "composition_injective": v.injective,
                "composition_surjective": v.surjective,
                "kernel_central": v.kernel_central,
            }
        )
    central = "n/a" if v.kernel_central is None else str(v.kernel_central).lower()
    return f"cover: {str(v.is_cover).lower()}, homs: {v.hom_hh}={v.hom_hg}, kernel central: {central}"


def cmd_snf(path: str, cfg: RunConfig, transforms: bool = False) -> str:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read matrix file {path!r}: {e.strerror}") from None
    A = parse_matrix(text)
    snf = smith_normal_form(A)
    ok = snf.U @ A @ snf.V == snf.D
    if not ok:
        raise TheoremViolation("Smith form reconstruction failed")
    if cfg.format == "json":
        data = {"shape": list(A.shape), "diag": list(snf.diag)}
        if transforms:
            data.update(U=snf.U.to_lists(), V=snf.V.to_lists(), reconstruction=ok)
        return _dump(data)
    out = [f"diag: {list(snf.diag)}"]
    if transforms:
        out += ["U:", snf.U.format(), "V:", snf.V.format(), "reconstruction: ok"]
    return "\n".join(out)


def _dump(data) -> str:
    return json.dumps(data, indent=2)


# -- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _group_arg(text):
    return parse_group_spec(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prime", type=int)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    common.add_argument("--basis-budget", type=int, default=DEFAULT_BASIS_BUDGET)
    common.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
    common.add_argument("--jobs", type=int, default=1)

    parser = _Parser(prog="cellkit", description="Z/p-cellularization invariants of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", parents=[common], help="cellular report for a group at a prime")
    p.add_argument("group")
    p = sub.add_parser("homology", parents=[common], help="integral homology H_n(G)")
    p.add_argument("group")
    p.add_argument("--degree", type=int, default=2)
    p = sub.add_parser("socle", parents=[common], help="subgroup generated by elements of order p")
    p.add_argument("group")
    p = sub.add_parser("hom-count", parents=[common], help="number of homomorphisms H -> G")
    p.add_argument("source")
    p.add_argument("target")
    p = sub.add_parser("verify-cover", parents=[common], help="check that H -> G is a cellular cover")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--map", default="auto", help="'auto', 'identity' or comma-separated generator images")
    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    p.add_argument("matrix_file")
    p.add_argument("--transforms", action="store_true", help="also print U and V")
    return parser


def run(argv=None, env=None) -> tuple[int, str, str]:
    """Run a command; returns ``(exit_code, stdout, stderr)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), "", ""
    cfg = RunConfig(
        prime=args.prime,
        max_order=args.max_order,
        basis_budget=args.basis_budget,
        enum_budget=args.enum_budget,
        format=args.format,
        jobs=args.jobs,
        env=dict(os.environ) if env is None else env,
    )
    try:
        cfg.validate()
        if args.command == "report":
            out = cmd_report(parse_group_spec(args.group), cfg)
        elif args.command == "homology":
            out = cmd_homology(parse_group_spec(args.group), args.degree, cfg)
        elif args.command == "socle":
            out = cmd_socle(parse_group_spec(args.group), cfg)
        elif args.command == "hom-count":
            out = cmd_hom_count(parse_group_spec(args.source), parse_group_spec(args.target), cfg)
        elif args.command == "verify-cover":
            out = cmd_verify_cover(parse_group_spec(args.source), parse_group_spec(args.target), args.map, cfg)
        else:
            out = cmd_snf(args.matrix_file, cfg, args.transforms)
    except BudgetExceeded as e:
        return 2, "", f"budget exceeded: {e}\n"
    except TheoremViolation as e:
        return 3, "", f"theorem violation (this is a bug): {e}\n"
    except (CellkitError, ValueError) as e:
        return 1, "", f"error: {e}\n"
    return 0, out + "\n", ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
