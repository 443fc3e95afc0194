"""Representations: two-sided module actions with a module twist.

A representation stores left and right action tables independently,
mirroring the fact that neither determines the other.  Actions evaluate
by the same sesquilinearity rules as the bracket:

    l(f(D)p) at w on g(D)m   is  f(-w) g(D + w) l(p) m
    r(g(D)m) at w on f(D)p   is  g(-w) f(D + w) r(m) p

where the acting parameter may again be any linear form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import D, X, LinearForm, MultiPoly
from .report import Report, checked
from .structure import (
    XF,
    L1,
    L2,
    ConformalAlgebra,
    ConformalElement,
    DimensionError,
    PdModuleMap,
    basis_element,
    eval_table_bracket,
    normalize_table,
)
from .operators import OperatorKind, PreconditionError, verify_operator


@dataclass(frozen=True)
class Representation:
    alg_rank: int
    rank: int
    l_structure: dict  # (algebra index, module index) -> module vector in D, x
    r_structure: dict  # (module index, algebra index) -> module vector in D, x
    beta: PdModuleMap
    n_m: PdModuleMap | None = None
    basis_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.beta.rows != self.rank or self.beta.cols != self.rank:
            raise DimensionError("module twist shape does not match module rank")
        if self.n_m is not None and (self.n_m.rows != self.rank or self.n_m.cols != self.rank):
            raise DimensionError("module operator shape does not match module rank")
        if not self.basis_names:
            object.__setattr__(
                self, "basis_names", tuple(f"m{i+1}" for i in range(self.rank))
            )

    def module_basis(self, j: int) -> ConformalElement:
        return basis_element(self.rank, j)


def eval_l(
    rep: Representation, p: ConformalElement, m: ConformalElement, w: LinearForm
) -> ConformalElement:
    """Left action l(p) at parameter w applied to m."""
    if p.ambient_rank != rep.alg_rank or m.ambient_rank != rep.rank:
        raise DimensionError("left action rank mismatch")
    return _eval_action(rep.l_structure, rep.rank, p, m, w)


def eval_r(
    rep: Representation, m: ConformalElement, p: ConformalElement, w: LinearForm
) -> ConformalElement:
    """Right action r(m) at parameter w applied to p."""
    if p.ambient_rank != rep.alg_rank or m.ambient_rank != rep.rank:
        raise DimensionError("right action rank mismatch")
    return _eval_action(rep.r_structure, rep.rank, m, p, w)


def _eval_action(table, out_rank, first, second, w):
    neg_w = (-w).to_poly()
    shift_w = (LinearForm.variable(D) + w).to_poly()
    wp = w.to_poly()
    out = [MultiPoly.zero()] * out_rank
    for i in range(first.ambient_rank):
        fi = first.coords[i]
        if fi.is_zero:
            continue
        fi = fi.substitute(D, neg_w)
        for j in range(second.ambient_rank):
            gj = second.coords[j]
            if gj.is_zero:
                continue
            vec = table.get((i, j))
            if vec is None:
                continue
            factor = fi * gj.substitute(D, shift_w)
            for k in range(out_rank):
                pk = vec[k]
                if not pk.is_zero:
                    out[k] = out[k] + factor * pk.substitute(X, wp)
    return ConformalElement(tuple(out))


def adjoint_rep(alg: ConformalAlgebra) -> Representation:
    """The algebra acting on itself: left action from the bracket, right
    action from the bracket with arguments swapped, module twist = twist."""
    l_structure = dict(alg.structure)
    r_structure = dict(alg.structure)
    return Representation(
        alg_rank=alg.rank,
        rank=alg.rank,
        l_structure=l_structure,
        r_structure=r_structure,
        beta=alg.alpha,
        basis_names=alg.basis_names,
    )


def verify_representation(alg: ConformalAlgebra, rep: Representation) -> Report:
    """The compatibility axioms of a two-sided module, on basis tuples.

    Sesquilinearity in all four slots holds by construction of the
    evaluators and is not re-derived here; the five substantive
    conditions are labelled:

      r_bracket_a : r(b(m)) w1 [p w2 q] = r(r(m) w1 p) w1+w2 a(q) + l(a(p)) w2 (r(m) w1 q)
      r_bracket_b : r(b(m)) w1 [p w2 q] = -r(l(p) w2 m) w1+w2 a(q) + l(a(p)) w2 (r(m) w1 q)
      l_l         : l(a(p)) w1 (l(q) w2 m) = l([p w1 q]) w1+w2 b(m) + l(a(q)) w2 (l(p) w1 m)
      beta_l      : b(l(p) w1 m) = l(a(p)) w1 b(m)
      beta_r      : b(r(m) w1 p) = r(b(m)) w1 a(p)

    plus the consequence of the two r_bracket forms:

      r_consistency : r(r(m) w1 p + l(p) w2 m) w1+w2 a(q) = 0
    """
    if rep.alg_rank != alg.rank:
        raise DimensionError("representation is over a different algebra rank")
    a, b = alg.alpha, rep.beta
    with checked("representation") as c:
        for i in range(alg.rank):
            p = alg.basis(i)
            ap = a.apply(p)
            for j in range(alg.rank):
                q = alg.basis(j)
                bracket12 = eval_table_bracket(alg.structure, alg.rank, p, q, L2)
                bracket_l1 = eval_table_bracket(alg.structure, alg.rank, p, q, L1)
                for k in range(rep.rank):
                    m = rep.module_basis(k)
                    bm = b.apply(m)
                    lhs = eval_r(rep, bm, bracket12, L1)
                    rhs_a = eval_r(rep, eval_r(rep, m, p, L1), a.apply(q), L1 + L2) + eval_l(
                        rep, ap, eval_r(rep, m, q, L1), L2
                    )
                    c.add_nonzero(("r_bracket_a", i, j, k), lhs - rhs_a)
                    rhs_b = -eval_r(rep, eval_l(rep, p, m, L2), a.apply(q), L1 + L2) + eval_l(
                        rep, ap, eval_r(rep, m, q, L1), L2
                    )
                    c.add_nonzero(("r_bracket_b", i, j, k), lhs - rhs_b)
                    lhs_ll = eval_l(rep, ap, eval_l(rep, q, m, L2), L1)
                    rhs_ll = eval_l(rep, bracket_l1, bm, L1 + L2) + eval_l(
                        rep, a.apply(q), eval_l(rep, p, m, L1), L2
                    )
                    c.add_nonzero(("l_l", i, j, k), lhs_ll - rhs_ll)
                    cons = eval_r(
                        rep,
                        eval_r(rep, m, p, L1) + eval_l(rep, p, m, L2),
                        a.apply(q),
                        L1 + L2,
                    )
                    c.add_nonzero(("r_consistency", i, j, k), cons)
        for i in range(alg.rank):
            p = alg.basis(i)
            ap = a.apply(p)
            for k in range(rep.rank):
                m = rep.module_basis(k)
                c.add_nonzero(
                    ("beta_l", i, k),
                    b.apply(eval_l(rep, p, m, L1)) - eval_l(rep, ap, b.apply(m), L1),
                )
                c.add_nonzero(
                    ("beta_r", i, k),
                    b.apply(eval_r(rep, m, p, L1)) - eval_r(rep, b.apply(m), ap, L1),
                )
    return c.report


def verify_nijenhuis_representation(
    alg: ConformalAlgebra, n: PdModuleMap, rep: Representation
) -> Report:
    """Compatibility of a module operator with an algebra operator.

    Requires rep.n_m.  Checks, on basis pairs:

      l(n(p)) w nm(m) = nm( l(n(p)) w m + l(p) w nm(m) - nm(l(p) w m) )
      r(nm(m)) w n(p) = nm( r(nm(m)) w p + r(m) w n(p) - nm(r(m) w p) )

    together with twist commutation b nm = nm b.
    """
    if rep.n_m is None:
        raise ValueError("representation carries no module operator")
    nm = rep.n_m
    with checked("nijenhuis_representation") as c:
        comm = rep.beta.compose(nm) - nm.compose(rep.beta)
        if not comm.is_zero:
            c.add(("twist_commute",), str(comm))
        for i in range(alg.rank):
            p = alg.basis(i)
            np_ = n.apply(p)
            for k in range(rep.rank):
                m = rep.module_basis(k)
                nmm = nm.apply(m)
                lhs = eval_l(rep, np_, nmm, L1)
                rhs = nm.apply(
                    eval_l(rep, np_, m, L1)
                    + eval_l(rep, p, nmm, L1)
                    - nm.apply(eval_l(rep, p, m, L1))
                )
                c.add_nonzero(("l", i, k), lhs - rhs)
                lhs_r = eval_r(rep, nmm, np_, L1)
                rhs_r = nm.apply(
                    eval_r(rep, nmm, p, L1)
                    + eval_r(rep, m, np_, L1)
                    - nm.apply(eval_r(rep, m, p, L1))
                )
                c.add_nonzero(("r", i, k), lhs_r - rhs_r)
    return c.report


def induced_representation(
    alg: ConformalAlgebra, n: PdModuleMap, rep: Representation, strict: bool = False
) -> Representation:
    """Actions twisted by the operator pair, giving a module over the
    deformed algebra:

      l'(p) m = l(n(p)) m + l(p) nm(m) - nm(l(p) m)
      r'(m) p = r(nm(m)) p + r(m) n(p) - nm(r(m) p)
    """
    if rep.n_m is None:
        raise ValueError("representation carries no module operator")
    if strict:
        for pre in (
            verify_operator(alg, n, OperatorKind.nijenhuis()),
            verify_nijenhuis_representation(alg, n, rep),
        ):
            if not pre.passed:
                raise PreconditionError(f"{pre.check_name} fails")
    nm = rep.n_m
    l_structure = {}
    r_structure = {}
    for i in range(alg.rank):
        p = alg.basis(i)
        np_ = n.apply(p)
        for k in range(rep.rank):
            m = rep.module_basis(k)
            nmm = nm.apply(m)
            lval = (
                eval_l(rep, np_, m, XF)
                + eval_l(rep, p, nmm, XF)
                - nm.apply(eval_l(rep, p, m, XF))
            )
            l_structure[(i, k)] = lval.coords
            rval = (
                eval_r(rep, nmm, p, XF)
                + eval_r(rep, m, np_, XF)
                - nm.apply(eval_r(rep, m, p, XF))
            )
            r_structure[(k, i)] = rval.coords
    return Representation(
        alg_rank=rep.alg_rank,
        rank=rep.rank,
        l_structure=normalize_table(l_structure, rep.rank),
        r_structure=normalize_table(r_structure, rep.rank),
        beta=rep.beta,
        n_m=rep.n_m,
        basis_names=rep.basis_names,
    )
