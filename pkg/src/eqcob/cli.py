"""Command line front end.

Every subcommand prints either readable text or a JSON document of the form
``{"request_echo": ..., "result": ..., "diagnostics": [...]}``.  Exit codes:
0 success, 1 a verification failed, 2 bad usage, 3 the computation refused
its input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .algebra.rings import RATIONAL_ADDITIVE, RATIONAL_MULTIPLICATIVE
from .algebra.series import series_to_json
from .equivariant import (
    THEORIES,
    bundle_relation,
    chern_classes_of_sum,
    gln_coefficients,
    mu_n_presentation,
    projective_bundle,
    restrict_gln_to_torus,
    series_ring,
    specialize_theory,
    theory,
    torus_coefficients,
    weighted_gm_projective,
)
from .errors import EqcobError
from .fgl import (
    FormalGroupLaw,
    fgl_additive,
    fgl_conjugate,
    fgl_multiplicative,
    formal_inverse,
    n_series,
    one_var_space,
)
from .verify import SUITES

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3
TRUNC_ENV = "EQCOB_TRUNC"


class Output:
    """Collects text lines, a JSON result and diagnostics for one request."""

    def __init__(self):
        self.lines = []
        self.result = {}
        self.diagnostics = []
        self.failed = False

    def text(self, line=""):
        self.lines.append(line)


def positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {v}")
    return v


def default_trunc() -> int:
    env = os.environ.get(TRUNC_ENV)
    if env is None:
        return 4
    try:
        return positive_int(env)
    except argparse.ArgumentTypeError as e:
        print(f"eqcob: error: {TRUNC_ENV}: {e}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from None


def rational_law(name: str, D: int) -> FormalGroupLaw:
    """The theory's law over its rationalization, so that log and exp exist."""
    if name == "chow":
        return fgl_additive(RATIONAL_ADDITIVE, D)
    if name == "ktheory":
        return fgl_multiplicative(RATIONAL_MULTIPLICATIVE, D)
    return theory(name, D).law


ROOT = re.compile(r"^(?:\[(-?\d+)\])?([^\W\d][\w]*)$")


def parse_roots(tokens, law, D):
    """Roots written as ``0``, ``x`` or ``[m]x`` (the m-series evaluated at x)."""
    parsed = []
    for tok in tokens:
        if tok == "0":
            parsed.append(None)
            continue
        m = ROOT.match(tok)
        if not m:
            raise EqcobError(f"cannot read root {tok!r}; use 0, a variable, or [m]variable")
        parsed.append((int(m.group(1)) if m.group(1) else 1, m.group(2)))
    names = []
    for p in parsed:
        if p is not None and p[1] not in names:
            names.append(p[1])
    base = series_ring(law.ring, names, [1] * len(names), D, "coefficients" + (f"[[{', '.join(names)}]]" if names else ""))
    sp = base.space
    roots = []
    for p in parsed:
        roots.append(sp.zero() if p is None else n_series(law, p[0], p[1]).embed(sp))
    return base, roots


# handlers -------------------------------------------------------------
def do_fgl(args, out):
    law = theory(args.theory, args.trunc).law
    out.text(f"F(u, v) = {law.F}")
    out.result["F"] = series_to_json(law.F)
    if law.log is not None:
        out.text(f"log(u) = {law.log}")
        out.result["log"] = series_to_json(law.log)


def do_nseries(args, out):
    law = theory(args.theory, args.trunc).law
    s = n_series(law, args.n, args.var)
    out.text(str(s))
    out.result = {"n": args.n, "series": series_to_json(s)}


def do_inverse(args, out):
    law = theory(args.theory, args.trunc).law
    s = formal_inverse(law, args.var)
    out.text(str(s))
    out.result = {"inverse": series_to_json(s)}


def do_conjugate(args, out):
    D = args.trunc
    law = rational_law(args.theory, D)
    if args.phi == "exp":
        add = fgl_additive(law.ring, D)
        conj = fgl_conjugate(add, law.exp())
        out.text(f"φ = exp of the {args.theory} law")
        agrees = conj.F == law.F
        out.text(f"F^φ(u, v) = {conj.F}")
        out.text(f"equals the law built from its logarithm: {'yes' if agrees else 'no'}")
        out.result = {"phi": "exp", "F": series_to_json(conj.F), "equals_law_from_log": agrees}
        if not agrees:
            out.failed = True
        return
    try:
        coeffs = [int(c) for c in args.phi.split(",")]
    except ValueError:
        raise EqcobError(f"--phi must be 'exp' or a comma list of integers, got {args.phi!r}") from None
    sp = one_var_space(law.ring, D)
    phi = sp.from_coefficients({(k + 1,): c for k, c in enumerate(coeffs) if c and k < D})
    conj = fgl_conjugate(law, phi)
    out.text(f"φ(u) = {phi}")
    out.text(f"F^φ(u, v) = {conj.F}")
    out.result = {"phi": series_to_json(phi), "F": series_to_json(conj.F)}


def describe_presentation(p, out, key="presentation"):
    for line in p.describe().splitlines():
        out.text(line)
    ranks = p.ranks()
    out.text("ranks by degree: " + ", ".join(f"{d}:{r}" for d, r in enumerate(ranks)))
    out.result[key] = p.to_json()
    out.result[key + "_ranks"] = ranks


def do_coeff(args, out):
    D = args.trunc
    if args.kind == "torus":
        tc = torus_coefficients(args.r, args.theory, D)
        describe_presentation(tc.limit, out)
        out.text("stabilization index by degree: "
                 + ", ".join(f"{d}:{i}" for d, i in sorted(tc.stabilization.items())))
        out.text(f"transitions onto in every degree: {'yes' if not tc.mittag_leffler_failures else 'no'}")
        out.result["stabilization"] = {str(d): i for d, i in tc.stabilization.items()}
        out.result["mittag_leffler_failures"] = [list(f) for f in tc.mittag_leffler_failures]
        out.result["verified"] = tc.verified
        if not tc.verified:
            out.diagnostics.append("tower does not match the limit")
    elif args.kind == "gln":
        g = gln_coefficients(args.n, D, args.theory)
        describe_presentation(g.limit, out)
        out.text(f"evidence: Gr({args.n},{args.n + g.evidence_stage}) ranks "
                 + ", ".join(str(r) for r in g.evidence_ranks))
        out.text(f"agrees with the series ring through degree {D}: {'yes' if g.consistent else 'no'}")
        out.result["evidence_stage"] = g.evidence_stage
        out.result["evidence_ranks"] = g.evidence_ranks
        out.result["consistent"] = g.consistent
    else:
        p = mu_n_presentation(args.n, args.theory, D)
        for line in p.describe().splitlines():
            out.text(line)
        reports = [p.piece_report(d) for d in range(D + 1)]
        for r in reports:
            out.text(f"degree {r.degree}: {r.describe(p.ring)}")
        out.result["presentation"] = p.to_json()
        out.result["pieces"] = [r.to_json() for r in reports]


def do_pn_weighted(args, out):
    p = weighted_gm_projective(args.weights, args.theory, args.trunc)
    describe_presentation(p, out)
    out.text(f"relation: {bundle_relation(p)}")
    out.text(f"rank over coefficients[[t]]: {p.rank_over(('t',))}")
    out.result["relation"] = series_to_json(bundle_relation(p))
    out.result["rank_over_base"] = p.rank_over(("t",))


def do_pb(args, out):
    law = theory(args.theory, args.trunc).law
    base, roots = parse_roots(args.roots, law, args.trunc)
    p = projective_bundle(base, roots, args.trunc)
    describe_presentation(p, out)
    out.text(f"rank over base: {p.rank_over(base.names)}")
    out.result["rank_over_base"] = p.rank_over(base.names)


def do_chern(args, out):
    law = theory(args.theory, args.trunc).law
    base, roots = parse_roots(args.roots, law, args.trunc)
    cs = chern_classes_of_sum(roots, base.space)
    for k, c in enumerate(cs):
        out.text(f"c{k} = {c}")
    out.result["chern_classes"] = [series_to_json(c) for c in cs]


def do_restrict(args, out):
    rep = restrict_gln_to_torus(args.n, args.trunc, args.theory)
    for k, v in rep.images.items():
        out.text(f"{k} ↦ {v}")
    out.text(f"symmetric images: {'yes' if rep.invariant else 'no'}")
    for d, (r, k) in rep.degree_ranks.items():
        out.text(f"degree {d}: rank {r} of {k}")
    out.text(f"injective through degree {args.trunc}: {'yes' if rep.injective else 'no'}")
    out.result = rep.to_json()
    if not rep.passed:
        out.failed = True


def do_specialize(args, out):
    D = args.trunc
    if args.weights:
        src = weighted_gm_projective(args.weights, "universal", D)
        got = specialize_theory(src, args.to)
        direct = weighted_gm_projective(args.weights, args.to, D).rationalize()
        describe_presentation(got, out)
    else:
        src = theory("universal", D).law
        got = specialize_theory(src, args.to)
        direct = rational_law(args.to, D)
        out.text(f"F(u, v) = {got.F}")
        out.result["F"] = series_to_json(got.F)
        got, direct = got.F, direct.F
    agrees = got == direct
    out.text(f"agrees with the direct {args.to} computation: {'yes' if agrees else 'no'}")
    out.result["agrees_with_direct"] = agrees
    if not agrees:
        out.failed = True


def do_verify(args, out):
    kwargs = {}
    if args.suite == "whitney":
        kwargs = {"trials": args.trials, "seed": args.seed}
    checks = SUITES[args.suite](args.trunc, **kwargs)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        out.text(f"{status} {c.name}" + (f"  [{c.detail}]" if c.detail and not c.passed else ""))
    npass = sum(c.passed for c in checks)
    out.text(f"{npass}/{len(checks)} checks passed")
    out.result = {"suite": args.suite, "checks": [c.to_json() for c in checks], "passed": npass == len(checks)}
    if npass != len(checks):
        out.failed = True


# parser ---------------------------------------------------------------
class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=THEORIES, default="universal")
    common.add_argument("--trunc", type=positive_int, default=None,
                        help=f"truncation order (default 4, or ${TRUNC_ENV})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    parser = Parser(prog="eqcob", description="Exact formal group law and equivariant coefficient ring computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("fgl", parents=[common], help="print the theory's formal group law")
    p.set_defaults(handler=do_fgl)

    p = sub.add_parser("nseries", parents=[common], help="the n-series [n](t)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--var", default="t")
    p.set_defaults(handler=do_nseries)

    p = sub.add_parser("inverse", parents=[common], help="the formal inverse")
    p.add_argument("--var", default="t")
    p.set_defaults(handler=do_inverse)

    p = sub.add_parser("conjugate", parents=[common], help="conjugate a law by a series")
    p.add_argument("--phi", default="exp",
                   help="'exp' (additive law by the theory's exponential) or integer coefficients a1,a2,...")
    p.set_defaults(handler=do_conjugate)

    p = sub.add_parser("coeff", help="equivariant coefficient rings")
    csub = p.add_subparsers(dest="kind", required=True, parser_class=Parser)
    q = csub.add_parser("torus", parents=[common])
    q.add_argument("-r", type=positive_int, default=1)
    q.set_defaults(handler=do_coeff)
    q = csub.add_parser("gln", parents=[common])
    q.add_argument("-n", type=positive_int, default=2)
    q.set_defaults(handler=do_coeff)
    q = csub.add_parser("mu", parents=[common])
    q.add_argument("-n", type=int, default=2)
    q.set_defaults(handler=do_coeff)

    p = sub.add_parser("pn-weighted", parents=[common], help="projective space with a weighted G_m action")
    p.add_argument("weights", type=int, nargs="+")
    p.set_defaults(handler=do_pn_weighted)

    p = sub.add_parser("pb", parents=[common], help="projective bundle of a sum of line bundles")
    p.add_argument("roots", nargs="+", help="first Chern classes: 0, x, or [m]x")
    p.set_defaults(handler=do_pb)

    p = sub.add_parser("chern", parents=[common], help="Chern classes of a sum of line bundles")
    p.add_argument("roots", nargs="+", help="first Chern classes: 0, x, or [m]x")
    p.set_defaults(handler=do_chern)

    p = sub.add_parser("restrict-gln", parents=[common], help="restriction from GL_n to its torus")
    p.add_argument("-n", type=positive_int, default=2)
    p.set_defaults(handler=do_restrict)

    p = sub.add_parser("specialize", parents=[common], help="push universal results to chow or ktheory")
    p.add_argument("--to", choices=("chow", "ktheory"), required=True)
    p.add_argument("--weights", type=int, nargs="+", help="specialize this weighted projective space (default: the law)")
    p.set_defaults(handler=do_specialize)

    p = sub.add_parser("verify", parents=[common], help="run a built-in verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=positive_int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=do_verify)
    return parser


def request_echo(args) -> dict:
    echo = {k: v for k, v in vars(args).items() if k not in ("handler", "out")}
    return echo


def render(args, out: Output) -> str:
    if args.format == "json":
        doc = {"request_echo": request_echo(args), "result": out.result, "diagnostics": out.diagnostics}
        return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    lines = list(out.lines) + [f"note: {d}" for d in out.diagnostics]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if args.trunc is None:
        try:
            args.trunc = default_trunc()
        except SystemExit as e:
            return e.code
    out = Output()
    try:
        args.handler(args, out)
    except EqcobError as e:
        print(f"eqcob: error: {type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}", file=sys.stderr)
        return EXIT_ERROR
    text = render(args, out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAILED if out.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
