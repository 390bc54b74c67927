"""Move an octuple around by the two-part group and watch what survives.

The action has an orthogonal part, which conjugates everything, and a
mixing part, which recombines the vector pairs.  The derived skew form
never notices the mixing part at all, so every verdict computed from it
is invariant.  The wedge ranks are a property of the lift rather than of
the form, and the end of this script shows the one way they can change.
"""

from fractions import Fraction

from monadforge import (
    BarthOctuple,
    Matrix,
    QQ,
    closed_residuals,
    gamma_conditions,
    gen_closed_octuple,
    h_action,
    orbit_test,
    skew_of_octuple,
)


def verdicts(report):
    return [(c.name, c.verdict) for c in report.conditions]


def main() -> None:
    oct_, _ = gen_closed_octuple(2, seed=77)
    g = Matrix(QQ, [[Fraction(3, 5), Fraction(-4, 5)],
                    [Fraction(4, 5), Fraction(3, 5)]])
    m = Matrix(QQ, [[2, 1], [1, 1]])

    moved = h_action(g, m, oct_)
    print("closed identities survive the move:",
          all(r.is_zero() for r in closed_residuals(moved)))

    before = gamma_conditions(oct_, mode="exact")
    after = gamma_conditions(moved, mode="exact")
    print("verdicts before and after agree:",
          verdicts(before) == verdicts(after))

    pure_mix = h_action(Matrix.identity(QQ, 2), m, oct_)
    print("skew form ignores pure mixing:",
          skew_of_octuple(pure_mix) == skew_of_octuple(oct_))

    print()
    print("randomized orbit test (one line per compared invariant):")
    rep = orbit_test(oct_, seed=4242, mode="exact")
    for check in rep.checks:
        detail = f"  ({check.detail})" if check.detail else ""
        print(f"  {check.name}: matched = {check.matched}{detail}")

    # The exception.  Here the second vector pair is proportional, which is
    # allowed by all the identities, and a mixing matrix whose first column
    # solves s * a2 + u * b2 = 0 collapses the moved pair: the wedge-rank
    # verdict flips while everything derived from the skew form persists.
    degenerate = BarthOctuple(
        Matrix(QQ, [[2, -1], [-1, 3]]), Matrix(QQ, [[2, 1], [1, 3]]),
        Matrix(QQ, [[3, 1], [1, -1]]), Matrix(QQ, [[-1, 1], [1, 0]]),
        Matrix(QQ, [[-1], [-2]]), Matrix(QQ, [[0], [2]]),
        Matrix(QQ, [[-3], [-3]]), Matrix(QQ, [[0], [-1]]))
    killer = Matrix(QQ, [[Fraction(1, 2), Fraction(-1, 2)], [1, 1]])
    collapsed = h_action(Matrix.identity(QQ, 2), killer, degenerate)
    print()
    print("a deliberately degenerate example:")
    print("  moved a2 vector is zero:", collapsed.a_vec2.is_zero())
    print("  skew form unchanged anyway:",
          skew_of_octuple(collapsed) == skew_of_octuple(degenerate))
    flips = [(b.name, b.verdict, a.verdict)
             for b, a in zip(gamma_conditions(degenerate).conditions,
                             gamma_conditions(collapsed).conditions)
             if b.verdict != a.verdict]
    print("  verdicts that changed:", flips)


if __name__ == "__main__":
    main()
