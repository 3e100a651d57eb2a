"""Command-line front end.

Every subcommand accepts --seed, --format human|machine, --symbolic and the
search-cap overrides, and emits one report per run.  Exit status: 0 when the
claim searched or checked was established, 1 when a bounded search or an
identity check came back negative (CapExceeded, not-found, failing check),
2 for input errors.  With --figures DIR the reporting subcommands also render
a figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .errors import (
    ArgumentOutOfRange,
    CapExceeded,
    ConstantElement,
    DecompositionFailed,
    DivisionByZero,
    DenominatorVanished,
    ExprSyntaxError,
    FieldFileError,
    MembershipNotFound,
    NoNonconstant,
    NoWitness,
    PoleAtPoint,
    RandomizationExhausted,
    UnboundVariable,
    ZeroFactor,
    ZeroPolynomial,
)
from .fields import (
    DiffField,
    FieldElement,
    MembershipCertificate,
    alg_trdeg,
    diff_trdeg,
    member_of_tower,
    prolongation,
)
from .parsing import build_field, parse_field_file
from .report import RunReport
from .search import SearchConfig, density_step, density_step_with_factor, find_primitive
from .wronskian import family_wronskian, lemma_checks, wronskian

_INPUT_ERRORS = (
    ExprSyntaxError,
    FieldFileError,
    ArgumentOutOfRange,
    ZeroFactor,
    ZeroPolynomial,
    ConstantElement,
    NoNonconstant,
    UnboundVariable,
    DivisionByZero,
    DenominatorVanished,
    PoleAtPoint,
    ValueError,
    OSError,
)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--symbolic", action="store_true",
                        help="compute ranks by exact symbolic elimination")
    common.add_argument("--retries", type=int, default=32)
    common.add_argument("--max-p-degree", type=int, default=6)
    common.add_argument("--max-coeff-height", type=int, default=8)
    common.add_argument("--lambda-height", type=int, default=100)
    common.add_argument("--membership-degree-cap", type=int, default=8)
    common.add_argument("--no-symbolic-confirm", action="store_true",
                        help="skip the symbolic revalidation of search results")
    common.add_argument("--figures", metavar="DIR", default=None,
                        help="also render report figures into DIR")

    parser = argparse.ArgumentParser(
        prog="diffprim",
        description="exact differential-algebra workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trdeg", parents=[common],
                       help="differential transcendence degree of elements")
    p.add_argument("file")
    p.add_argument("--elements", required=True, help="comma-separated element names")

    p = sub.add_parser("wronskian", parents=[common],
                       help="Wronskian determinant of field elements")
    p.add_argument("file")
    p.add_argument("--elements", required=True)

    p = sub.add_parser("wkl", parents=[common],
                       help="power-difference family Wronskian (symbolic)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("density", parents=[common],
                       help="first p with trdeg<a + p(b)> = trdeg<a, b>")
    p.add_argument("file")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", default=None, help="optional nonzero factor: a + c*p(b)")

    p = sub.add_parser("primitive", parents=[common],
                       help="single generator with membership certificates")
    p.add_argument("file")
    p.add_argument("--elements", default=None,
                   help="generators to fold (default: the field's generators)")

    p = sub.add_parser("member", parents=[common],
                       help="membership certificate over a derivative tower")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--tower", required=True, help="element whose derivatives form the tower")
    p.add_argument("--order", type=int, default=None,
                   help="tower order (default: the element's differential trdeg)")
    p.add_argument("--deg-cap", type=int, default=None,
                   help="total degree cap for the certificate search")

    p = sub.add_parser("verify-lemmas", parents=[common],
                       help="check every Wronskian family identity")
    p.add_argument("--k-max", type=int, default=4)

    return parser


def _config_echo(args, cfg: SearchConfig) -> list[tuple[str, str]]:
    return [
        ("seed", str(cfg.seed)),
        ("format", args.format),
        ("symbolic", str(args.symbolic).lower()),
        ("retries", str(cfg.retries)),
        ("max_p_degree", str(cfg.max_p_degree)),
        ("max_coeff_height", str(cfg.max_coeff_height)),
        ("lambda_height", str(cfg.lambda_height)),
        ("membership_degree_cap", str(cfg.membership_degree_cap)),
        ("symbolic_confirm", str(cfg.symbolic_confirm).lower()),
    ]


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        max_p_degree=args.max_p_degree,
        max_coeff_height=args.max_coeff_height,
        lambda_height=args.lambda_height,
        retries=args.retries,
        seed=args.seed,
        membership_degree_cap=args.membership_degree_cap,
        symbolic_confirm=not args.no_symbolic_confirm,
    )


def _load_field(path: str) -> tuple[DiffField, dict[str, FieldElement]]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return build_field(parse_field_file(text))


def _resolve(named: dict[str, FieldElement], name: str) -> FieldElement:
    name = name.strip()
    if name not in named:
        known = ", ".join(sorted(named))
        raise ValueError(f"unknown element {name!r} (known: {known})")
    return named[name]


def _resolve_list(named: dict[str, FieldElement], csv: str) -> list[FieldElement]:
    names = [n for n in (part.strip() for part in csv.split(",")) if n]
    if not names:
        raise ValueError("no element names given")
    return [_resolve(named, n) for n in names]


def _render(e: FieldElement) -> str:
    return e.render()


def _certificate_payload(name: str, cert: MembershipCertificate) -> list[tuple[str, str]]:
    return [
        ("certificate", name),
        ("target", _render(cert.target)),
        ("tower", "; ".join(_render(z) for z in cert.tower)),
        ("degree_bound", str(cert.degree_bound)),
        ("num_coeffs", ",".join(str(c) for c in cert.num_coeffs)),
        ("den_coeffs", ",".join(str(c) for c in cert.den_coeffs)),
    ]


def _cmd_trdeg(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    field, named = _load_field(args.file)
    elements = _resolve_list(named, args.elements)
    rep = diff_trdeg(elements, symbolic=args.symbolic, seed=cfg.seed, retries=cfg.retries)
    payload = [
        ("trdeg", str(rep.trdeg)),
        ("stabilization_order", str(rep.stabilization_order)),
        ("method", rep.method),
    ]
    for point in rep.witness_points:
        payload.append(
            ("witness_point", ",".join(f"{g}={point[g]}" for g in field.generators))
        )
    if args.figures:
        from .figures import save_rank_curve

        orders = list(range(rep.stabilization_order + 2))
        ranks = []
        for order in orders:
            flat = [d for e in elements for d in prolongation(e, order)]
            ranks.append(alg_trdeg(flat, symbolic=args.symbolic, seed=cfg.seed,
                                   retries=cfg.retries))
        path = os.path.join(args.figures, "trdeg_stabilization.png")
        payload.append(("figure", save_rank_curve(orders, ranks, path)))
    return "ok", payload, 0


def _cmd_wronskian(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    _, named = _load_field(args.file)
    elements = _resolve_list(named, args.elements)
    w = wronskian(elements)
    return "ok", [("wronskian", _render(w))], 0


def _cmd_wkl(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    w = family_wronskian(args.k, args.l)
    return "ok", [("k", str(args.k)), ("l", str(args.l)), ("wkl", w.render())], 0


def _cmd_density(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    _, named = _load_field(args.file)
    a, b = _resolve(named, args.a), _resolve(named, args.b)
    if args.c is not None:
        result = density_step_with_factor(a, b, _resolve(named, args.c), cfg)
    else:
        result = density_step(a, b, cfg)
    payload = [
        ("p", result.p.render()),
        ("candidate", _render(result.candidate)),
        ("trdeg_pair", str(result.trdeg_pair)),
        ("trdeg_candidate", str(result.trdeg_candidate)),
    ]
    return "ok", payload, 0


def _cmd_primitive(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    field, named = _load_field(args.file)
    if args.elements:
        names = [n.strip() for n in args.elements.split(",") if n.strip()]
    else:
        names = list(field.generators)
    gens = [_resolve(named, n) for n in names]
    result = find_primitive(gens, cfg)
    payload = [
        ("primitive", _render(result.primitive)),
        ("n", str(result.n)),
        ("lambdas", ",".join(str(c) for c in result.lambdas)),
    ]
    for name, cert in zip(names, result.certificates):
        payload.extend(_certificate_payload(name, cert))
    return "ok", payload, 0


def _cmd_member(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    _, named = _load_field(args.file)
    target = _resolve(named, args.target)
    base = _resolve(named, args.tower)
    order = args.order
    if order is None:
        order = diff_trdeg([base], symbolic=args.symbolic, seed=cfg.seed,
                           retries=cfg.retries).trdeg
    if order < 0:
        raise ValueError("tower order must be nonnegative")
    cap = args.deg_cap if args.deg_cap is not None else cfg.membership_degree_cap
    tower = prolongation(base, order)
    cert = member_of_tower(target, tower, cap)
    payload = [("order", str(order))] + _certificate_payload(args.target, cert)
    return "ok", payload, 0


def _cmd_verify_lemmas(args, cfg: SearchConfig) -> tuple[str, list[tuple[str, str]], int]:
    checks = lemma_checks(args.k_max)
    payload: list[tuple[str, str]] = [("k_max", str(args.k_max))]
    failures = 0
    for check in checks:
        mark = "pass" if check.passed else "FAIL"
        value = f"{mark}\t{check.name}"
        if check.detail:
            value += f"\t{check.detail}"
        payload.append(("check", value))
        failures += 0 if check.passed else 1
    payload.append(("checks", str(len(checks))))
    payload.append(("failures", str(failures)))
    if args.figures:
        from .figures import save_check_grid

        path = os.path.join(args.figures, "verify_lemmas.png")
        payload.append(("figure", save_check_grid(checks, path)))
    if failures:
        return "check-failed", payload, 1
    return "ok", payload, 0


_HANDLERS = {
    "trdeg": _cmd_trdeg,
    "wronskian": _cmd_wronskian,
    "wkl": _cmd_wkl,
    "density": _cmd_density,
    "primitive": _cmd_primitive,
    "member": _cmd_member,
    "verify-lemmas": _cmd_verify_lemmas,
}


def run(argv: list[str] | None = None) -> RunReport:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _build_parser().parse_args(argv)
    cfg = _search_config(args)
    report = RunReport(command=args.command, argv=tuple(argv),
                       config=_config_echo(args, cfg))
    start = time.perf_counter()
    try:
        status, payload, code = _HANDLERS[args.command](args, cfg)
        report.status, report.payload, report.exit_status = status, payload, code
    except CapExceeded as exc:
        report.status = "cap-exceeded"
        report.payload = [("error", str(exc))]
        report.payload.extend(
            ("rejected", f"{list(map(str, lams))} {why}") for lams, why in exc.rejected
        )
        report.exit_status = 1
    except MembershipNotFound as exc:
        report.status = "not-found"
        report.payload = [("error", str(exc)), ("degree_cap", str(exc.degree_cap))]
        report.exit_status = 1
    except RandomizationExhausted as exc:
        report.status = "exhausted"
        report.payload = [("error", str(exc))]
        report.exit_status = 1
    except (DecompositionFailed, NoWitness) as exc:
        report.status = "check-failed"
        report.payload = [("error", str(exc))]
        report.exit_status = 1
    except _INPUT_ERRORS as exc:
        report.status = "input-error"
        report.payload = [("error", str(exc))]
        report.exit_status = 2
    report.timing = time.perf_counter() - start
    return report


def main(argv: list[str] | None = None) -> None:
    report = run(argv)
    fmt = "human"
    source = sys.argv[1:] if argv is None else argv
    if "--format" in source:
        fmt = source[source.index("--format") + 1]
    elif any(a.startswith("--format=") for a in source):
        fmt = next(a.split("=", 1)[1] for a in source if a.startswith("--format="))
    sys.stdout.write(report.render(fmt))
    sys.exit(report.exit_status)
