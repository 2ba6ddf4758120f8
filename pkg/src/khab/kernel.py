"""Kernel weight A_n(x) = integral of (1-y)^n / y over [x, 1].

The closed form used in production comes from the binomial expansion of
(1-y)^n:

    A_n(x) = -ln x + sum_{k=1}^{n} C(n,k) (-1)^k (1 - x^k) / k

and is O(n) per call.  An adaptive-quadrature evaluation of the defining
integral is kept alongside as a cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quad import QuadResult, integrate


@dataclass(frozen=True)
class KernelSpec:
    """Kernel order n >= 0."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("kernel order n must be a nonnegative integer")


def kernel_eval(spec: KernelSpec, x: float) -> float:
    """Closed-form A_n(x) for 0 < x <= 1."""
    if x <= 0.0:
        raise ValueError("kernel_eval requires x > 0 (log divergence at 0)")
    if x > 1.0:
        raise ValueError("kernel_eval requires x <= 1")
    acc = -math.log(x)
    for k in range(1, spec.n + 1):
        acc += math.comb(spec.n, k) * (-1.0) ** k * (1.0 - x**k) / k
    return acc


def kernel_eval_quadrature(spec: KernelSpec, x: float, tol: float) -> QuadResult:
    """A_n(x) by adaptive quadrature of the defining integrand."""
    if x <= 0.0:
        raise ValueError("kernel_eval_quadrature requires x > 0")
    if x > 1.0:
        raise ValueError("kernel_eval_quadrature requires x <= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x == 1.0:
        return QuadResult(0.0, 0.0, 1)
    n = spec.n
    return integrate(lambda y: (1.0 - y) ** n / y, x, 1.0, tol)
