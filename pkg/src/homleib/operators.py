"""Nijenhuis and Rota-Baxter operators: verification and derived brackets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Rat, print_poly
from .report import Report, checked
from .structure import (
    XF,
    L1,
    ConformalAlgebra,
    DimensionError,
    PdModuleMap,
    eval_bracket,
    verify_hom_leibniz,
)

NIJENHUIS = "nijenhuis"
ROTA_BAXTER = "rota_baxter"
MODIFIED_ROTA_BAXTER = "modified_rota_baxter"


@dataclass(frozen=True)
class OperatorKind:
    tag: str
    weight: Fraction | None = None

    def __post_init__(self):
        if self.tag == NIJENHUIS:
            if self.weight is not None:
                raise ValueError("a Nijenhuis operator has no weight")
        elif self.tag in (ROTA_BAXTER, MODIFIED_ROTA_BAXTER):
            if self.weight is None:
                raise ValueError(f"{self.tag} needs a weight")
        else:
            raise ValueError(f"unknown operator kind {self.tag!r}")

    @staticmethod
    def nijenhuis() -> "OperatorKind":
        return OperatorKind(NIJENHUIS)

    @staticmethod
    def rota_baxter(weight: Rat) -> "OperatorKind":
        return OperatorKind(ROTA_BAXTER, Fraction(weight))

    @staticmethod
    def modified_rota_baxter(weight: Rat) -> "OperatorKind":
        return OperatorKind(MODIFIED_ROTA_BAXTER, Fraction(weight))


class PreconditionError(ValueError):
    """A construction was asked to run on data failing its hypothesis."""


def _check_square(alg: ConformalAlgebra, op: PdModuleMap):
    if op.rows != alg.rank or op.cols != alg.rank:
        raise DimensionError("operator shape does not match algebra rank")


def verify_operator(alg: ConformalAlgebra, op: PdModuleMap, kind: OperatorKind) -> Report:
    """Check twist compatibility and the defining identity of `kind`.

    All three identities are checked on basis pairs with one formal
    parameter; D-linearity of the operator extends them to all elements.
    Residuals are recorded as lhs - rhs.
    """
    _check_square(alg, op)
    with checked(f"operator_{kind.tag}") as c:
        comm = alg.alpha.compose(op) - op.compose(alg.alpha)
        for i in range(alg.rank):
            for j in range(alg.rank):
                if not comm.entries[i][j].is_zero:
                    c.add(("twist_commute", i, j), print_poly(comm.entries[i][j]))
        for i in range(alg.rank):
            p = alg.basis(i)
            np_ = op.apply(p)
            for j in range(alg.rank):
                q = alg.basis(j)
                nq = op.apply(q)
                lhs = eval_bracket(alg, np_, nq, L1)
                mixed = eval_bracket(alg, np_, q, L1) + eval_bracket(alg, p, nq, L1)
                plain = eval_bracket(alg, p, q, L1)
                if kind.tag == NIJENHUIS:
                    rhs = op.apply(mixed - op.apply(plain))
                elif kind.tag == ROTA_BAXTER:
                    rhs = op.apply(mixed + plain.scale(kind.weight))
                else:
                    rhs = op.apply(mixed) + plain.scale(kind.weight)
                c.add_nonzero((i, j), lhs - rhs)
    return c.report


def deformed_bracket(
    alg: ConformalAlgebra, n: PdModuleMap, strict: bool = False
) -> ConformalAlgebra:
    """Bracket deformed by an operator: [p q]_N = [Np q] + [p Nq] - N[p q].

    The formula is total, so construction never needs the Nijenhuis
    hypothesis; with strict=True it is enforced, since only then are the
    derived guarantees (the output satisfies the Leibniz identity, n stays
    Nijenhuis on it, and n is a morphism back to the input) available.
    """
    _check_square(alg, n)
    if strict:
        rep = verify_operator(alg, n, OperatorKind.nijenhuis())
        if not rep.passed:
            raise PreconditionError(
                f"operator is not Nijenhuis; first residual at {rep.violations[0].context}"
            )
    table = {}
    for i in range(alg.rank):
        p = alg.basis(i)
        np_ = n.apply(p)
        for j in range(alg.rank):
            q = alg.basis(j)
            value = (
                eval_bracket(alg, np_, q, XF)
                + eval_bracket(alg, p, n.apply(q), XF)
                - n.apply(eval_bracket(alg, p, q, XF))
            )
            table[(i, j)] = value.coords
    return alg.with_structure(table)


def check_morphism(
    f: PdModuleMap,
    src: ConformalAlgebra,
    dst: ConformalAlgebra,
    n_src: PdModuleMap | None = None,
    n_dst: PdModuleMap | None = None,
) -> Report:
    """f must intertwine brackets and, when given, the two operators."""
    if f.cols != src.rank or f.rows != dst.rank:
        raise DimensionError("morphism shape does not match the two algebras")
    if (n_src is None) != (n_dst is None):
        raise ValueError("operator compatibility needs an operator on both sides")
    with checked("morphism") as c:
        talpha = f.compose(src.alpha) - dst.alpha.compose(f)
        for i in range(talpha.rows):
            for j in range(talpha.cols):
                if not talpha.entries[i][j].is_zero:
                    c.add(("twist", i, j), print_poly(talpha.entries[i][j]))
        if n_src is not None:
            tn = f.compose(n_src) - n_dst.compose(f)
            for i in range(tn.rows):
                for j in range(tn.cols):
                    if not tn.entries[i][j].is_zero:
                        c.add(("operator", i, j), print_poly(tn.entries[i][j]))
        for i in range(src.rank):
            for j in range(src.rank):
                lhs = f.apply(eval_bracket(src, src.basis(i), src.basis(j), XF))
                rhs = eval_bracket(
                    dst, f.apply(src.basis(i)), f.apply(src.basis(j)), XF
                )
                c.add_nonzero(("bracket", i, j), lhs - rhs)
    return c.report


def nijenhuis_rb_correspondence(
    alg: ConformalAlgebra, op: PdModuleMap, case: int
) -> Report:
    """Nijenhuis <-> Rota-Baxter correspondences, tested in both directions.

    case 1: given op^2 = 0,   Nijenhuis <-> Rota-Baxter of weight 0
    case 2: given op^2 = op,  Nijenhuis <-> Rota-Baxter of weight -1
    case 3: given op^2 = +-1, Nijenhuis <-> modified Rota-Baxter of weight -+1
    case 4: given op^2 = 1,   Nijenhuis <-> op +- 1 Rota-Baxter of weight -+2

    The report carries a `square` violation when the hypothesis fails and
    an `iff` violation when the two sides disagree on this operator.
    """
    _check_square(alg, op)
    sq = op.compose(op)
    ident = PdModuleMap.identity(alg.rank)
    with checked(f"correspondence_case{case}") as c:
        nij_ok = verify_operator(alg, op, OperatorKind.nijenhuis()).passed

        def record(other_ok: bool, label: str):
            if nij_ok != other_ok:
                c.add(
                    ("iff", label),
                    f"nijenhuis={'pass' if nij_ok else 'fail'} {label}={'pass' if other_ok else 'fail'}",
                )

        if case == 1:
            if sq != PdModuleMap.zero(alg.rank):
                c.add(("square",), "op^2 != 0")
            record(
                verify_operator(alg, op, OperatorKind.rota_baxter(0)).passed,
                "rb_weight_0",
            )
        elif case == 2:
            if sq != op:
                c.add(("square",), "op^2 != op")
            record(
                verify_operator(alg, op, OperatorKind.rota_baxter(-1)).passed,
                "rb_weight_-1",
            )
        elif case == 3:
            if sq == ident:
                weight = Fraction(-1)
            elif sq == ident.scale(-1):
                weight = Fraction(1)
            else:
                c.add(("square",), "op^2 != +-1")
                weight = Fraction(-1)
            record(
                verify_operator(alg, op, OperatorKind.modified_rota_baxter(weight)).passed,
                f"mrb_weight_{weight}",
            )
        elif case == 4:
            if sq != ident:
                c.add(("square",), "op^2 != 1")
            record(
                verify_operator(alg, op + ident, OperatorKind.rota_baxter(-2)).passed,
                "op+1_rb_weight_-2",
            )
            record(
                verify_operator(alg, op - ident, OperatorKind.rota_baxter(2)).passed,
                "op-1_rb_weight_2",
            )
        else:
            raise ValueError("case must be 1..4")
    return c.report


def verify_deformed_suite(alg: ConformalAlgebra, n: PdModuleMap) -> list[Report]:
    """The three guarantees of a Nijenhuis deformation, as checks.

    For a passing operator: the deformed algebra satisfies the Leibniz
    identity, the operator is still Nijenhuis there, and it is a morphism
    from the deformed algebra back to the original.
    """
    deformed = deformed_bracket(alg, n)
    return [
        verify_hom_leibniz(deformed),
        verify_operator(deformed, n, OperatorKind.nijenhuis()),
        check_morphism(n, deformed, alg, n_src=n, n_dst=n),
    ]
