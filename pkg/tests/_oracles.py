"""Independent numeric oracles used across the test suite.

The derivative oracles evaluate Richardson-extrapolated central finite
differences of the log weight phi(t) = ln(1 + t^(-2*alpha)) in
high-precision arithmetic, so they share no code path with the package's
symbolic recurrence.
"""

import mpmath as mp


def phi(t, alpha):
    return mp.log(1 + t ** (-2 * alpha))


def _central_fd(f, t, m, h):
    total = mp.mpf(0)
    for j in range(m + 1):
        total += (-1) ** j * mp.binomial(m, j) * f(t + (mp.mpf(m) / 2 - j) * h)
    return total / h**m


def _richardson_fd(f, t, m, h):
    d1 = _central_fd(f, t, m, h)
    d2 = _central_fd(f, t, m, h / 2)
    return (4 * d2 - d1) / 3


def phi_derivative_fd(t, alpha, m, dps=60):
    """m-th derivative of phi at t, as a float."""
    with mp.workdps(dps):
        a = mp.mpf(repr(alpha))
        tt = mp.mpf(repr(t))
        h = mp.mpf("1e-4") * max(1, abs(tt))
        return float(_richardson_fd(lambda x: phi(x, a), tt, m, h))


def transition_fd(t, alpha, order, dps=60):
    """Transition function of the given order at t, straight from its
    defining derivative expression (no rational normal form)."""
    with mp.workdps(dps):
        a = mp.mpf(repr(alpha))
        tt = mp.mpf(repr(t))
        fact = mp.factorial(order)

        def bracket(x):
            d = _richardson_fd(lambda u: phi(u, a), x, order + 1,
                               mp.mpf("1e-4") * max(1, abs(x)))
            return (-x) ** (order + 1) / fact * d

        h = mp.mpf("1e-4") * max(1, abs(tt))
        d1 = -(bracket(tt + h) - bracket(tt - h)) / (2 * h)
        d2 = -(bracket(tt + h / 2) - bracket(tt - h / 2)) / h
        return float((4 * d2 - d1) / 3)


def log_grid(lo, hi, n):
    import math

    return [
        10.0 ** (math.log10(lo) + (math.log10(hi) - math.log10(lo)) * i / (n - 1))
        for i in range(n)
    ]
