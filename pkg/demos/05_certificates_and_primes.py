"""Certificates, finite-field filtering, and why verdicts carry a field.

Exact emptiness claims are backed by membership certificates: a power of
every variable is exhibited inside the ideal.  Nonemptiness is backed by
a witness point.  Fast mode trades certainty for speed by working modulo
a prime, and the report names the field so a PROBABLE verdict is legible
as a statement about the reduction.
"""

import time

from monadforge import (
    QQ,
    Matrix,
    PrimeField,
    barth_verify,
    gen_null_correlation,
    monad_maps,
    presentation,
)
from monadforge.forms import Form, Ideal, minor_ideal
from monadforge.groebner import projective_emptiness, spot_check_empty
from monadforge.matrices import rank_kernel


def main() -> None:
    x = [Form.variable(QQ, 4, i) for i in range(4)]

    ideal = Ideal(QQ, 4, tuple(x))
    cert = projective_emptiness(ideal, mode="certified")
    print("coordinate ideal:", cert.kind,
          "with per-variable exponents", cert.exponents)
    ok, _ = spot_check_empty(ideal, 32003, 200, seed=1)
    print("  200-point spot check agrees:", ok)

    partial = Ideal(QQ, 4, (x[0], x[1], x[2]))
    cert = projective_emptiness(partial, mode="certified")
    print("first three coordinates only:", cert.kind,
          "with witness", [str(c) for c in cert.witness])

    net = gen_null_correlation()
    _, adual = monad_maps(presentation(net))
    cert = projective_emptiness(minor_ideal(adual, 1), mode="certified")
    print("minor ideal of the smallest verified net:", cert.kind,
          "exponents", cert.exponents)

    print()
    print("fast mode names the field it worked in:")
    t0 = time.perf_counter()
    exact = barth_verify(net, mode="exact")
    t1 = time.perf_counter()
    fast = barth_verify(net, mode="fast", prime=32003)
    t2 = time.perf_counter()
    print(f"  exact: field {exact.field_name}, overall {exact.overall}, "
          f"{1000 * (t1 - t0):.1f} ms")
    print(f"  fast:  field {fast.field_name}, overall {fast.overall}, "
          f"{1000 * (t2 - t1):.1f} ms")

    print()
    print("rank over the rationals vs three word-sized primes:")
    entries = [[3, -7, 2, 9], [1, 0, -4, 5], [2, -7, 6, 4]]
    rank_q, kernel_q = rank_kernel(Matrix(QQ, entries))
    print(f"  rationals: rank {rank_q}, kernel {len(kernel_q)}")
    for p in (32003, 65537, 1_000_003):
        rank_p, kernel_p = rank_kernel(Matrix(PrimeField(p), entries))
        print(f"  mod {p}: rank {rank_p}, kernel {len(kernel_p)}, "
              f"agrees = {(rank_p, len(kernel_p)) == (rank_q, len(kernel_q))}")


if __name__ == "__main__":
    main()
