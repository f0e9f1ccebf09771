#!/usr/bin/env python3
"""Walk a few fixed hyperbolic contexts through the decomposition
pipeline and print what happens at each stage.

No randomness; the output is stable and safe to diff.
"""

from fractions import Fraction

from hklat import (
    denominator_audit,
    discriminant_group,
    make_cone_context,
    make_lattice,
    primal,
    ruling_curve_class,
    q_eval,
    verify_decomposition,
    zariski_decompose,
)
from hklat.errors import DomainError


def show(v):
    return "(" + ", ".join(str(c) for c in v.coords) + ")"


def run_case(title, gram, h, primes, divisors):
    print(f"== {title}")
    lat = make_lattice(gram)
    ctx = make_cone_context(lat, primal(h), [primal(p) for p in primes])
    group = discriminant_group(lat)
    print(f"   gram {gram}, discriminant order {group.order}")
    for e in ctx.primes:
        ell = ruling_curve_class(lat, e)
        print(f"   prime {show(e)}: q = {q_eval(lat, e, e)}, "
              f"ruling class {show(ell)}")
    for d in divisors:
        dv = primal(d)
        try:
            dec = zariski_decompose(ctx, dv)
        except DomainError as exc:
            print(f"   D = {show(dv)}: {type(exc).__name__}: {exc}")
            continue
        rep = verify_decomposition(ctx, dv, dec.positive, dec.negative)
        aud = denominator_audit(ctx, dec, max(group.order, 1))
        coeff_str = ", ".join(
            f"a{i} = {c}" for i, c in zip(dec.support, dec.coefficients))
        print(f"   D = {show(dv)}: P = {show(dec.positive)}, "
              f"N = {show(dec.negative)}")
        print(f"      support {dec.support} ({coeff_str or 'empty'}), "
              f"lcm {dec.denominator_lcm}, verified: {rep.ok}")
        print(f"      lcm divides |det support| = {aud.support_det}: "
              f"{aud.lcm_divides_det}")
    print()


def main():
    run_case(
        "orthogonal prime",
        [[2, 0], [0, -2]], (1, 0), [(0, 1)],
        [(1, 2), (1, 0), (3, 1)],
    )
    run_case(
        "skew prime, fractional coefficient",
        [[2, 1], [1, -4]], (1, 0), [(0, 1)],
        [(1, 1), (2, -1)],
    )
    run_case(
        "two primes, rank 3",
        [[3, 0, 0], [0, -3, 1], [0, 1, -4]], (1, 0, 0),
        [(0, 1, 0), (0, 0, 1)],
        [(1, -2, 1), (2, 3, 3), (0, 1, 1)],
    )


if __name__ == "__main__":
    main()
