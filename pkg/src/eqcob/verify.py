"""Built-in verification suites.

Each suite returns a list of :class:`Check` records; a suite passes when every
record does.  Randomized suites take a seed so their output is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, factorial

from .algebra.rings import INTEGER_ADDITIVE, LAZARD_RATIONAL
from .algebra.series import SeriesSpace
from .equivariant import (
    THEORIES,
    gln_coefficients,
    mu_n_coefficients,
    restrict_gln_to_torus,
    theory,
    torus_coefficients,
    whitney_check,
)
from .fgl import fgl_additive, fgl_conjugate, fgl_verify_axioms, n_series
from .presentations import flag_ring, grassmannian_ring, monomials_of_order


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def suite_fgl(D: int = 5) -> list:
    out = []
    for name in THEORIES:
        report = fgl_verify_axioms(theory(name, D).law)
        for c in report.checks:
            out.append(Check(f"{name}: {c.name}", c.passed, c.witness or ""))
    law = theory("universal", D).law
    conj = fgl_conjugate(fgl_additive(LAZARD_RATIONAL, D), law.exp())
    out.append(Check("universal: additive law conjugated by exp", conj.F == law.F))
    return out


def random_roots(rng: random.Random, law, space: SeriesSpace, count: int) -> list:
    """Random first Chern classes: zero, integer combinations of variables, or n-series."""
    xs = space.vars()
    roots = []
    for _ in range(count):
        kind = rng.randrange(3)
        if kind == 0:
            roots.append(space.zero())
        elif kind == 1:
            r = space.zero()
            for x in xs:
                r = r + x * rng.randint(-3, 3)
            roots.append(r)
        else:
            name = rng.choice(space.names)
            s = n_series(law, rng.randint(-3, 3), name)
            roots.append(s.embed(space))
    return roots


def suite_whitney(D: int = 4, trials: int = 50, seed: int = 0) -> list:
    out = []
    rng = random.Random(seed)
    for name in THEORIES:
        th = theory(name, D)
        sp = SeriesSpace(th.ring, (("t1", 1), ("t2", 1), ("t3", 1)), D)
        failures = []
        for k in range(trials):
            a = random_roots(rng, th.law, sp, rng.randint(0, 3))
            b = random_roots(rng, th.law, sp, rng.randint(0, 3))
            rep = whitney_check(a, b, sp)
            if not rep.passed:
                failures.append(f"trial {k}: degree {rep.degree}")
        out.append(Check(f"{name}: {trials} random trials", not failures, "; ".join(failures)))
    return out


def suite_towers(D: int = 4) -> list:
    out = []
    for name in THEORIES:
        for r in (1, 2, 3):
            tc = torus_coefficients(r, name, D)
            expected = {d: d + 2 for d in range(D + 1)}
            out.append(Check(f"{name}: torus rank {r} stabilizes at d+2", tc.stabilization == expected,
                             str(tc.stabilization)))
            out.append(Check(f"{name}: torus rank {r} transitions onto", not tc.mittag_leffler_failures,
                             str(tc.mittag_leffler_failures)))
            out.append(Check(f"{name}: torus rank {r} limit ranks", tc.verified, str(tc.ranks)))
    for n in (1, 2, 3):
        g = gln_coefficients(n, D, "chow")
        fails = g.tower.verify_mittag_leffler(D)
        out.append(Check(f"Grassmannian tower n={n} transitions onto", not fails, str(fails)))
    return out


def partitions_with_parts_at_most(d: int, n: int) -> int:
    return len(monomials_of_order(list(range(1, n + 1)), d))


def suite_ranks(D: int = 5) -> list:
    out = []
    for m in range(1, 6):
        total = sum(flag_ring(m).ranks())
        out.append(Check(f"flag ring m={m} has rank {m}!", total == factorial(m), str(total)))
    for n in range(1, 6):
        for i in range(1, 7 - n):
            total = sum(grassmannian_ring(n, i, ring=INTEGER_ADDITIVE).ranks())
            out.append(Check(f"Gr({n},{n + i}) has rank C({n + i},{n})", total == comb(n + i, n), str(total)))
    for n in (1, 2, 3):
        g = gln_coefficients(n, D, "chow")
        expected = [partitions_with_parts_at_most(d, n) for d in range(D + 1)]
        out.append(Check(f"GL_{n} ranks equal partition counts",
                         g.limit_ranks == expected and g.consistent, str(g.evidence_ranks)))
    return out


def suite_mu(D: int = 4) -> list:
    out = []
    for name in ("chow", "ktheory"):
        for n in (2, 3, 4):
            reps = mu_n_coefficients(n, name, D)
            ok = reps[0].invariant_factors == (0,) and all(r.invariant_factors == (n,) for r in reps[1:])
            out.append(Check(f"{name}: μ_{n} pieces are Z then Z/{n}", ok,
                             ", ".join(r.describe() for r in reps)))
    for n in (2, 3, 4):
        reps = mu_n_coefficients(n, "universal", D)
        ok = reps[0].rank == 1 and all(r.rank == 0 for r in reps[1:])
        out.append(Check(f"universal: μ_{n} vanishes in positive degree", ok,
                         ", ".join(r.describe() for r in reps)))
    return out


def suite_restriction(D: int = 4) -> list:
    out = []
    for n in (1, 2, 3):
        rep = restrict_gln_to_torus(n, D)
        out.append(Check(f"n={n}: images are symmetric", rep.invariant, str(rep.invariance_failures)))
        out.append(Check(f"n={n}: injective through degree {D}", rep.injective, str(rep.degree_ranks)))
    return out


SUITES = {
    "fgl": suite_fgl,
    "whitney": suite_whitney,
    "towers": suite_towers,
    "ranks": suite_ranks,
    "mu": suite_mu,
    "restriction": suite_restriction,
}
