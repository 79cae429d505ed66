"""Multivariate Newton–Hensel lifting over truncated series or p-adic rings.

The rings are :class:`~.series.SeriesRing` or :class:`~.padic.TruncLocalRing`
instances: both expose ``precision``, ``with_precision``, ``coerce``,
``is_unit`` and the usual arithmetic.
"""


class HenselError(ArithmeticError):
    pass


def _default_lift(R, c):
    return R.from_int(c) if isinstance(c, int) else R.scalar(c)


def solve_unit_system(R, J, b):
    """Solve ``J x = b`` over a local ring when ``det J`` is a unit."""
    n = len(J)
    m = [list(row) + [bi] for row, bi in zip(J, b)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if R.is_unit(m[i][c]):
                piv = i
                break
        if piv is None:
            raise HenselError("Jacobian is not a unit")
        m[c], m[piv] = m[piv], m[c]
        inv = R.inv(m[c][c])
        m[c] = [R.mul(inv, v) for v in m[c]]
        for i in range(n):
            if i != c and not R.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [R.sub(v, R.mul(f, w)) for v, w in zip(m[i], m[c])]
    return [row[n] for row in m]


def jacobian(eqs, nfixed):
    return [[E.derivative(nfixed + j) for j in range(len(eqs))] for E in eqs]


def _eval(E, R, point, lift):
    return E.evaluate(point, R, lambda c: lift(R, c))


def hensel_lift_point(eqs, x0, ring, target, fixed=None, lift=None):
    """Lift an approximate root ``x0`` (precision ``ring.precision``) to ``target``.

    ``eqs`` are ``r`` :class:`MultiPoly` in ``k + r`` variables; the first ``k``
    are fixed to the values ``fixed(R)`` in each working ring ``R`` (e.g.
    ``x = lambda + t``).  ``lift(R, c)`` maps a coefficient into ``R``.
    Returns the unique lift as a tuple of elements of ``ring.with_precision(target)``.
    """
    lift = lift or _default_lift
    fixed = fixed or (lambda R: ())
    r = len(eqs)
    if len(x0) != r:
        raise HenselError("need as many unknowns as equations")
    m0 = ring.precision
    if target < m0:
        raise HenselError("target precision below the starting precision")
    pt = list(fixed(ring)) + [ring.coerce(v) for v in x0]
    for E in eqs:
        if not ring.is_zero(_eval(E, ring, pt, lift)):
            raise HenselError("equations do not vanish at the starting point")
    J = jacobian(eqs, len(pt) - r)
    # the Jacobian only needs to be a unit modulo the maximal ideal
    R1 = ring.with_precision(1)
    pt1 = list(fixed(R1)) + [R1.coerce(v) for v in x0]
    Jv = [[_eval(D, R1, pt1, lift) for D in row] for row in J]
    _check_unit_det(R1, Jv)
    x = [tuple(v) for v in x0]
    prec = m0
    while prec < target:
        prec = min(2 * prec, target)
        R = ring.with_precision(prec)
        xs = [R.coerce(v) for v in x]
        point = list(fixed(R)) + xs
        Fv = [_eval(E, R, point, lift) for E in eqs]
        Jv = [[_eval(D, R, point, lift) for D in row] for row in J]
        delta = solve_unit_system(R, Jv, Fv)
        x = [R.sub(a, d) for a, d in zip(xs, delta)]
    Rt = ring.with_precision(target)
    return tuple(Rt.coerce(v) for v in x)


def _check_unit_det(R1, Jv):
    try:
        solve_unit_system(R1, Jv, [R1.zero] * len(Jv))
    except (HenselError, ZeroDivisionError) as exc:
        raise HenselError("Jacobian is not a unit at the starting point") from exc
