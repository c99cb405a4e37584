"""Command-line entry point.

Exit codes: 0 success, 1 checked-and-false (not a design, uncertified
bound), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .combinatorics import dimension, enumerate_multiindices
from .designs import DEFAULT_TOL, SPHERE_TOL, design_check, integrate_over_sphere, points_from_dict
from .errors import ParseError
from .gram import build_form, inner_product
from .heights import Subspace, subspace_height
from .moments import moment_gamma_oracle, monte_carlo_moment, normalized_monomial_moment
from .orthogonalizer import (
    DEFAULT_MAX_NODES,
    orthogonal_basis,
    sphere_setup,
    siegel_basis,
    verify_certificate,
)
from .polynomial import Polynomial, format_rational, parse_rational, polynomial_from_dict


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def load_subspace(path: str) -> Subspace:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError("subspace document must be an object")
    if "polynomials" in doc:
        N = doc.get("N")
        polys = [polynomial_from_dict(p, N) for p in doc["polynomials"]]
        if not polys:
            raise ParseError("'polynomials' is empty")
        M = doc.get("M")
        return Subspace.from_polynomials(polys, M)
    if "vectors" in doc:
        vecs = [[parse_rational(x) for x in v] for v in doc["vectors"]]
        if not vecs:
            raise ParseError("'vectors' is empty")
        ambient = None
        if "M" in doc and "N" in doc:
            ambient = enumerate_multiindices(doc["M"], doc["N"])
        return Subspace.from_vectors(vecs, ambient)
    raise ParseError("subspace document needs 'polynomials' or 'vectors'")


def load_matrix(path: str) -> list[list[Fraction]]:
    doc = _load_json(path)
    rows = doc.get("matrix") if isinstance(doc, dict) else doc
    if not isinstance(rows, list):
        raise ParseError("form document must be a list of rows or {'matrix': rows}")
    return [[parse_rational(x) for x in r] for r in rows]


def _parse_eps(text: str) -> tuple[int, ...]:
    try:
        eps = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--eps must be comma-separated integers, got {text!r}") from None
    if any(e < 0 for e in eps):
        raise UsageError("--eps entries must be nonnegative")
    return eps


def _vec_str(v) -> list[str]:
    return [format_rational(x) for x in v]


# --- subcommands: each returns (exit_code, result_dict, human_text) --------

def cmd_dim(args):
    L = dimension(args.M, args.N)
    return 0, {"L": L}, str(L)


def cmd_moment(args):
    eps = _parse_eps(args.eps)
    if len(eps) != args.N:
        raise UsageError(f"--eps has {len(eps)} entries but --N is {args.N}")
    if args.oracle == "mc":
        mean, se = monte_carlo_moment(eps, args.N, args.samples, args.seed)
        return 0, {"mean": mean, "stderr": se}, f"{mean:.6f} ± {se:.6f}"
    fn = moment_gamma_oracle if args.oracle == "gamma" else normalized_monomial_moment
    v = fn(eps, args.N)
    return 0, {"value": format_rational(v)}, format_rational(v)


def cmd_gram(args):
    form = build_form(args.M, args.N)
    doc = form.to_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        summary = {"L": form.size, "stored_entries": len(form.entries), "out": args.out}
        return 0, summary, f"L = {form.size}, {len(form.entries)} stored entries -> {args.out}"
    lines = [f"{e['i']} {e['j']} {e['v']}" for e in doc["entries"]]
    return 0, doc, "\n".join(lines)


def cmd_inner(args):
    F = polynomial_from_dict(_load_json(args.f))
    G = polynomial_from_dict(_load_json(args.g), F.N)
    M = args.M if args.M is not None else max(F.degree(), G.degree(), 1)
    v = inner_product(F, G, build_form(M, F.N))
    return 0, {"M": M, "value": format_rational(v)}, format_rational(v)


def cmd_integrate(args):
    F = polynomial_from_dict(_load_json(args.poly))
    v = integrate_over_sphere(F)
    return 0, {"value": format_rational(v)}, format_rational(v)


def cmd_height(args):
    V = load_subspace(args.subspace)
    h = subspace_height(V)
    approx = f"{h.height:.12g}"
    return 0, {"squared_height": str(h), "height_approx": approx}, f"{h}  (H ~ {approx})"


def cmd_siegel(args):
    V = load_subspace(args.subspace)
    res = siegel_basis(V, max_nodes=args.max_nodes, strategy=args.strategy)
    doc = {
        "vectors": [list(v) for v in res.vectors],
        "heights": [max(abs(x) for x in v) for v in res.vectors],
        "height_product_sq": str(res.product_sq),
        "subspace_height_sq": format_rational(res.height_sq),
        "method": res.method,
        "lattice_basis": res.lattice_basis,
        "certified": res.certified,
    }
    lines = [" ".join(str(x) for x in v) for v in res.vectors]
    lines.append(f"prod H^2 = {res.product_sq} <= H(V)^2 = {format_rational(res.height_sq)}: {res.certified}")
    return (0 if res.certified else 1), doc, "\n".join(lines)


def cmd_orthogonalize(args):
    V = load_subspace(args.subspace)
    if args.form == "sphere":
        if V.ambient is None:
            raise UsageError("--form sphere needs a polynomial subspace (with M and N)")
        V, B = sphere_setup(V)
    else:
        B = load_matrix(args.form)
    cert = orthogonal_basis(V, B, max_nodes=args.max_nodes)
    report = verify_certificate(cert, V, B)
    doc = cert.to_dict(V.ambient)
    doc["verified"] = report.ok
    doc["verification_failures"] = report.failures
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if V.ambient is not None:
        lines = [str(Polynomial.from_vector(v, V.ambient)) for v in cert.vectors]
    else:
        lines = [" ".join(str(x) for x in v) for v in cert.vectors]
    lines.append(f"heights: {list(cert.heights)}; prod H^2 = {cert.product_sq}")
    lines.append(f"orthogonal: {cert.orthogonal}; bound ok: {cert.bound_ok}; siegel certified: {cert.siegel_certified}")
    ok = report.ok and cert.verdict and cert.siegel_certified
    return (0 if ok else 1), doc, "\n".join(lines)


def cmd_design_check(args):
    S = points_from_dict(_load_json(args.points), sphere_tol=args.sphere_tol)
    rep = design_check(S, args.M, tol=args.tol)
    conv = format_rational if S.mode == "exact" else float
    doc = {
        "M": rep.M,
        "mode": rep.mode,
        "k": len(S),
        "passed": rep.passed,
        "failing": [list(m) for m in rep.failing],
        "max_abs_residual": conv(rep.max_abs_residual),
        "residuals": [{"m": list(m), "r": conv(r)} for m, r in rep.residuals.items()],
    }
    verdict = "design" if rep.passed else "not a design"
    lines = [f"{verdict} of strength {rep.M} (max |residual| = {doc['max_abs_residual']})"]
    lines += [f"  fails at {list(m)}: residual {conv(rep.residuals[m])}" for m in rep.failing]
    return (0 if rep.passed else 1), doc, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")

    p = argparse.ArgumentParser(prog="spherepoly", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[common], help="number of monomials of degree <= M")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("moment", parents=[common], help="sphere average of a monomial")
    s.add_argument("--eps", required=True, help="exponents, e.g. 2,0,0")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--oracle", choices=("exact", "gamma", "mc"), default="exact")
    s.add_argument("--samples", type=int, default=1_000_000)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_moment)

    s = sub.add_parser("gram", parents=[common], help="sphere Gram matrix on monomials")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("inner", parents=[common], help="sphere inner product of two polynomials")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--M", type=int)
    s.set_defaults(func=cmd_inner)

    s = sub.add_parser("integrate", parents=[common], help="sphere average of a polynomial")
    s.add_argument("--poly", required=True)
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("height", parents=[common], help="squared height of a subspace")
    s.add_argument("--subspace", required=True)
    s.set_defaults(func=cmd_height)

    s = sub.add_parser("siegel", parents=[common], help="small-height integer basis")
    s.add_argument("--subspace", required=True)
    s.add_argument("--strategy", choices=("auto", "enumerate"), default="auto")
    s.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    s.set_defaults(func=cmd_siegel)

    s = sub.add_parser("orthogonalize", parents=[common], help="orthogonal integer basis with certificate")
    s.add_argument("--subspace", required=True)
    s.add_argument("--form", default="sphere", help="'sphere' or a JSON file holding a symmetric matrix")
    s.add_argument("--out")
    s.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    s.set_defaults(func=cmd_orthogonalize)

    s = sub.add_parser("design-check", parents=[common], help="spherical M-design test")
    s.add_argument("--points", required=True)
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--sphere-tol", type=float, default=SPHERE_TOL)
    s.set_defaults(func=cmd_design_check)
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command", "format")}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "moment" and args.oracle == "mc" and args.seed is None:
            if args.format == "json":
                raise UsageError("--seed is required for Monte Carlo in json mode")
            args.seed = 0
            print("note: no --seed given, using 0", file=stderr)
        code, result, text = args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if args.format == "json":
        doc = {"command": args.command, "config": _config(args), "result": result, "exit_code": code}
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())
