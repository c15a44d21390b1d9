# ABOUTME: Monomial maps x -> x^M on vectors of log-sign scalars
# ABOUTME: Column convention: y_i is the product over j of x_j ** M[j][i]; powers and products cost one op

from collections.abc import Sequence

from binomial_roots.arith.logsign import LogSign, precision_context
from binomial_roots.utils.counters import record


def power_cost(exponents) -> int:
    """LogSign operations to evaluate prod_j x_j ** m_j.

    One power per term whose exponent is not 1 and one product per extra term. A power only scales
    log|x|, so it costs one operation whatever the size of m_j.
    """
    nonzero = [m for m in exponents if m]
    if not nonzero:
        return 0
    return sum(1 for m in nonzero if m != 1) + len(nonzero) - 1


def apply_exponent(x: Sequence[LogSign], M: Sequence[Sequence[int]]) -> list[LogSign]:
    """Apply the monomial map `y = x^M`.

    `logabs(y_i) = sum_j M[j][i] * logabs(x_j)` is accumulated exactly and rounded once at the
    largest precision among the inputs; `sign(y_i)` is the product of `sign(x_j)` over the odd
    entries `M[j][i]`.

    With `x = (-2, 3)` in log-sign form and `M = [[1], [1]]` the single output is -6.
    """
    if len(x) != len(M):
        raise ValueError(f"Vector of length {len(x)} does not match a matrix with {len(M)} rows.")
    if not x:
        return []
    precision = max(v.precision for v in x)
    ctx = precision_context(precision)
    columns = len(M[0])

    result = []
    for i in range(columns):
        terms = [(M[j][i], x[j].logabs) for j in range(len(x)) if M[j][i]]
        sign = 1
        for j in range(len(x)):
            if M[j][i] % 2:
                sign *= x[j].sign
        # fdot converts the integer exponents exactly and rounds the sum once
        logabs = ctx.fdot(terms) if terms else ctx.zero
        record(logsign_ops=power_cost(M[j][i] for j in range(len(x))))
        result.append(LogSign(sign, logabs, precision))
    return result
