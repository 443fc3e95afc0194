"""One-parameter formal deformations, truncated at a finite order.

A deformation stores the coefficient tables of the bracket power series
and the coefficient matrices of the operator power series; index 0 holds
the base data.  All verification is per order: the Leibniz identity and
the operator identity of the deformed pair turn into convolution sums
over indices summing to the order under inspection.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .poly import LinearForm, MultiPoly, X, lam
from .report import Report, checked
from .structure import (
    XF,
    L1,
    L2,
    ConformalAlgebra,
    ConformalElement,
    DimensionError,
    PdModuleMap,
    eval_table_bracket,
    normalize_table,
    zero_element,
)
from .representation import adjoint_rep
from .cohomology import (
    HNLAPair,
    cochain_from_bracket_table,
    cochain_from_map,
    coboundary_HNLA,
    coboundary_homL,
    phi_map,
)


@dataclass(frozen=True)
class DeformationData:
    base: ConformalAlgebra
    brackets: tuple  # brackets[i] = bracket table of order i; brackets[0] = base
    operators: tuple  # operators[i] = matrix of order i; operators[0] = base operator

    def __post_init__(self):
        if not self.brackets or not self.operators:
            raise ValueError("a deformation needs at least the order-0 data")
        if normalize_table(dict(self.brackets[0]), self.base.rank) != self.base.structure:
            raise ValueError("order-0 bracket must be the base structure")
        for m in self.operators:
            if m.rows != self.base.rank or m.cols != self.base.rank:
                raise DimensionError("operator order has wrong shape")

    @property
    def order(self) -> int:
        return max(len(self.brackets), len(self.operators)) - 1

    @property
    def base_operator(self) -> PdModuleMap:
        return self.operators[0]

    def bracket_table(self, i: int):
        return self.brackets[i] if i < len(self.brackets) else {}

    def operator(self, i: int) -> PdModuleMap:
        if i < len(self.operators):
            return self.operators[i]
        return PdModuleMap.zero(self.base.rank)


def make_deformation(
    base: ConformalAlgebra,
    base_operator: PdModuleMap,
    bracket_orders: dict[int, dict] | None = None,
    operator_orders: dict[int, PdModuleMap] | None = None,
    min_order: int = 0,
) -> DeformationData:
    """Assemble deformation data from per-order increments (order >= 1)."""
    bracket_orders = bracket_orders or {}
    operator_orders = operator_orders or {}
    top = max([min_order] + list(bracket_orders) + list(operator_orders))
    brackets = [dict(base.structure)]
    operators = [base_operator]
    for i in range(1, top + 1):
        brackets.append(normalize_table(bracket_orders.get(i, {}), base.rank))
        operators.append(operator_orders.get(i, PdModuleMap.zero(base.rank)))
    return DeformationData(base, tuple(brackets), tuple(operators))


def verify_deformation_order(data: DeformationData, n: int) -> Report:
    """The order-n coefficient equations of the deformed pair.

    Three groups of checks on basis tuples:

      multiplicativity : twist(p x q)_n = (twist p x twist q)_n and
                         twist commutes with the order-n operator
      leibniz          : the convolution over i+j=n of the twisted Leibniz
                         identity
      operator         : the convolution over i+j+k=n of the operator
                         identity (outer operator, inner operator, bracket)

    Order 0 reproduces the base axioms verbatim.
    """
    if n > data.order:
        raise ValueError(f"order {n} exceeds stored order {data.order}")
    alg = data.base
    rank = alg.rank
    a = alg.alpha

    def ev(i, left, right, w):
        return eval_table_bracket(data.bracket_table(i), rank, left, right, w)

    with checked(f"deformation_order_{n}") as c:
        comm = a.compose(data.operator(n)) - data.operator(n).compose(a)
        if not comm.is_zero:
            c.add(("multiplicativity", "operator_twist"), str(comm))
        for i in range(rank):
            p = alg.basis(i)
            for j in range(rank):
                q = alg.basis(j)
                res = a.apply(ev(n, p, q, XF)) - ev(n, a.apply(p), a.apply(q), XF)
                c.add_nonzero(("multiplicativity", i, j), res)
        for i in range(rank):
            p = alg.basis(i)
            ap = a.apply(p)
            for j in range(rank):
                q = alg.basis(j)
                aq = a.apply(q)
                for k in range(rank):
                    r = alg.basis(k)
                    acc = zero_element(rank)
                    for o in range(n + 1):
                        i2 = n - o
                        acc = acc + ev(i2, ap, ev(o, q, r, L2), L1)
                        acc = acc - ev(i2, ev(o, p, q, L1), a.apply(r), L1 + L2)
                        acc = acc - ev(i2, aq, ev(o, p, r, L1), L2)
                    c.add_nonzero(("leibniz", i, j, k), acc)
        for i in range(rank):
            p = alg.basis(i)
            for j in range(rank):
                q = alg.basis(j)
                acc = zero_element(rank)
                for o1 in range(n + 1):
                    for o2 in range(n + 1 - o1):
                        o3 = n - o1 - o2
                        nj, nk = data.operator(o2), data.operator(o3)
                        acc = acc + ev(o1, nj.apply(p), nk.apply(q), L1)
                        inner = (
                            ev(o3, p, nj.apply(q), L1)
                            + ev(o3, nj.apply(p), q, L1)
                            - nj.apply(ev(o3, p, q, L1))
                        )
                        acc = acc - data.operator(o1).apply(inner)
                c.add_nonzero(("operator", i, j), acc)
    return c.report


def infinitesimal_pair(data: DeformationData) -> HNLAPair:
    """The order-1 coefficients viewed in the combined complex over the
    algebra acting on itself."""
    if data.order < 1:
        raise ValueError("deformation has no order-1 data")
    f = cochain_from_bracket_table(data.bracket_table(1), data.base.rank)
    g = cochain_from_map(data.operator(1))
    return HNLAPair(f, g)


def infinitesimal_cocycle_check(data: DeformationData) -> tuple[bool, Report]:
    """Whether the order-1 pair is killed by the combined coboundary."""
    alg = data.base
    rep = dataclasses.replace(adjoint_rep(alg), n_m=data.base_operator)
    pair = infinitesimal_pair(data)
    with checked("infinitesimal_cocycle") as c:
        image = coboundary_HNLA(pair, alg, data.base_operator, rep)
        for key in sorted(image.f.table):
            c.add_nonzero(("upper",) + key, ConformalElement(image.f.value(key)))
        if image.g is not None:
            for key in sorted(image.g.table):
                c.add_nonzero(("lower",) + key, ConformalElement(image.g.value(key)))
    return c.report.passed, c.report


def coboundary_of_map(
    alg: ConformalAlgebra, base_operator: PdModuleMap, psi: PdModuleMap
) -> HNLAPair:
    """d(psi, 0) in the combined complex: the pair whose upper part is the
    plain coboundary of psi and whose lower part is -phi(psi)."""
    rep = dataclasses.replace(adjoint_rep(alg), n_m=base_operator)
    f = cochain_from_map(psi)
    upper = coboundary_homL(f, alg, rep)
    lower = -phi_map(f, base_operator, rep)
    return HNLAPair(upper, lower)


def perturb_by_pair(data: DeformationData, pair: HNLAPair) -> DeformationData:
    """Add a combined 2-pair to the order-1 coefficients of a deformation."""
    if pair.f.arity != 2 or pair.g is None or pair.g.arity != 1:
        raise DimensionError("expected a pair of arities (2, 1)")
    rank = data.base.rank
    l1v = LinearForm.variable(X)
    bracket1 = dict(data.bracket_table(1))
    for key, vec in pair.f.table.items():
        cur = bracket1.get(key, (MultiPoly.zero(),) * rank)
        add = tuple(p.substitute(lam(1), l1v) for p in vec)
        bracket1[key] = tuple(a + b for a, b in zip(cur, add))
    delta_op = PdModuleMap(
        [
            [pair.g.value((j,))[i] for j in range(rank)]
            for i in range(rank)
        ]
    )
    op1 = data.operator(1) + delta_op
    brackets = list(data.brackets) + [{}] * max(0, 2 - len(data.brackets))
    operators = list(data.operators) + [PdModuleMap.zero(rank)] * max(
        0, 2 - len(data.operators)
    )
    brackets[1] = normalize_table(bracket1, rank)
    operators[1] = op1
    return DeformationData(data.base, tuple(brackets), tuple(operators))


def equivalence_order1_check(
    psi1: PdModuleMap, data_a: DeformationData, data_b: DeformationData
) -> Report:
    """Order-1 consequences of a formal isomorphism psi = id + t psi1.

    Checks, on basis pairs, the two printed order-1 relations

      psi1([p q]) + [p q]'_1 = [psi1 p, q] + [p, psi1 q] + [p q]_1
      psi1 . N' + N'_1        = N . psi1 + N_1

    (primes = data_b) and, independently, that the difference of the
    order-1 pairs equals the combined coboundary of (psi1, 0).
    """
    if data_a.base is not data_b.base and data_a.base != data_b.base:
        raise ValueError("the two deformations must share a base")
    alg = data_a.base
    rank = alg.rank
    if psi1.rows != rank or psi1.cols != rank:
        raise DimensionError("psi1 has the wrong shape")

    def ev(data, i, left, right, w):
        return eval_table_bracket(data.bracket_table(i), rank, left, right, w)

    with checked("equivalence_order1") as c:
        for i in range(rank):
            p = alg.basis(i)
            for j in range(rank):
                q = alg.basis(j)
                res = (
                    psi1.apply(ev(data_a, 0, p, q, XF))
                    + ev(data_b, 1, p, q, XF)
                    - ev(data_a, 0, psi1.apply(p), q, XF)
                    - ev(data_a, 0, p, psi1.apply(q), XF)
                    - ev(data_a, 1, p, q, XF)
                )
                c.add_nonzero(("bracket_relation", i, j), res)
        op_res = (
            psi1.compose(data_b.base_operator)
            + data_b.operator(1)
            - data_a.base_operator.compose(psi1)
            - data_a.operator(1)
        )
        if not op_res.is_zero:
            c.add(("operator_relation",), str(op_res))
        diff_f = cochain_from_bracket_table(
            data_b.bracket_table(1), rank
        ) - cochain_from_bracket_table(data_a.bracket_table(1), rank)
        diff_g = cochain_from_map(data_b.operator(1)) - cochain_from_map(
            data_a.operator(1)
        )
        target = coboundary_of_map(alg, data_a.base_operator, psi1)
        upper = diff_f - target.f
        lower = diff_g - target.g
        for key in sorted(upper.table):
            c.add_nonzero(("cohomologous_upper",) + key, ConformalElement(upper.value(key)))
        for key in sorted(lower.table):
            c.add_nonzero(("cohomologous_lower",) + key, ConformalElement(lower.value(key)))
    return c.report
