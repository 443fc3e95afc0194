"""Finite-rank twisted Leibniz conformal algebras.

An algebra of rank r is a free module over polynomials in D with a
bracket determined by structure polynomials P_ij^k(D, x): the bracket of
basis elements e_i, e_j is the sum over k of P_ij^k e_k, where x marks
the formal bracket parameter.  Evaluation on arbitrary elements extends
the table by sesquilinearity:

    [f(D) p  g(D) q]  evaluated at parameter w  is  f(-w) g(D + w) [p q],

with the structure slot x set to w.  The twist is a matrix over
polynomials in D, hence automatically commutes with the D-action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import (
    D,
    X,
    LinearForm,
    MultiPoly,
    Rat,
    lam,
    print_poly,
)
from .report import Report, checked

BracketTable = Mapping[tuple[int, int], tuple[MultiPoly, ...]]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class ConformalElement:
    """A module element: a coordinate vector of polynomials in D and l<i>."""

    coords: tuple[MultiPoly, ...]

    @property
    def ambient_rank(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def __add__(self, other: "ConformalElement") -> "ConformalElement":
        self._check_rank(other)
        return ConformalElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ConformalElement") -> "ConformalElement":
        self._check_rank(other)
        return ConformalElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ConformalElement":
        return ConformalElement(tuple(-a for a in self.coords))

    def scale(self, p: MultiPoly | Rat) -> "ConformalElement":
        if not isinstance(p, MultiPoly):
            p = MultiPoly.const(p)
        return ConformalElement(tuple(p * c for c in self.coords))

    def substitute(self, v: int, target) -> "ConformalElement":
        return ConformalElement(tuple(c.substitute(v, target) for c in self.coords))

    def _check_rank(self, other: "ConformalElement"):
        if self.ambient_rank != other.ambient_rank:
            raise DimensionError(
                f"rank mismatch: {self.ambient_rank} vs {other.ambient_rank}"
            )

    def __str__(self) -> str:
        return "[" + ", ".join(print_poly(c) for c in self.coords) + "]"


def zero_element(rank: int) -> ConformalElement:
    return ConformalElement((MultiPoly.zero(),) * rank)


def basis_element(rank: int, i: int) -> ConformalElement:
    coords = [MultiPoly.zero()] * rank
    coords[i] = MultiPoly.const(1)
    return ConformalElement(tuple(coords))


class PdModuleMap:
    """A D-linear map between free modules: a matrix of polynomials in D."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[MultiPoly]]):
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionError("ragged matrix")
            for p in row:
                bad = p.variables() - {D}
                if bad:
                    raise ValueError(f"map entry uses a non-D variable: {print_poly(p)}")

    @staticmethod
    def identity(n: int) -> "PdModuleMap":
        one, zero = MultiPoly.const(1), MultiPoly.zero()
        return PdModuleMap(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zero(rows: int, cols: int | None = None) -> "PdModuleMap":
        cols = rows if cols is None else cols
        z = MultiPoly.zero()
        return PdModuleMap([[z] * cols for _ in range(rows)])

    @staticmethod
    def scalar(n: int, c: Rat | MultiPoly) -> "PdModuleMap":
        p = c if isinstance(c, MultiPoly) else MultiPoly.const(c)
        z = MultiPoly.zero()
        return PdModuleMap([[p if i == j else z for j in range(n)] for i in range(n)])

    def apply(self, e: ConformalElement) -> ConformalElement:
        if self.cols != e.ambient_rank:
            raise DimensionError(f"map of width {self.cols} applied to rank {e.ambient_rank}")
        out = []
        for i in range(self.rows):
            acc = MultiPoly.zero()
            for j in range(self.cols):
                entry = self.entries[i][j]
                if not entry.is_zero:
                    acc = acc + entry * e.coords[j]
            out.append(acc)
        return ConformalElement(tuple(out))

    def compose(self, other: "PdModuleMap") -> "PdModuleMap":
        """self after other (matrix product self @ other)."""
        if self.cols != other.rows:
            raise DimensionError("composition shape mismatch")
        rows = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = MultiPoly.zero()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return PdModuleMap(rows)

    def power(self, n: int) -> "PdModuleMap":
        if self.rows != self.cols:
            raise DimensionError("power of a non-square map")
        out = PdModuleMap.identity(self.rows)
        for _ in range(n):
            out = out.compose(self)
        return out

    def __add__(self, other: "PdModuleMap") -> "PdModuleMap":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("sum shape mismatch")
        return PdModuleMap(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "PdModuleMap") -> "PdModuleMap":
        return self + other.scale(-1)

    def scale(self, c: Rat) -> "PdModuleMap":
        return PdModuleMap([[p * c for p in row] for row in self.entries])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PdModuleMap)
            and self.rows == other.rows
            and self.entries == other.entries
        )

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)

    def __str__(self) -> str:
        return "[" + "; ".join(
            ", ".join(print_poly(p) for p in row) for row in self.entries
        ) + "]"


@dataclass(frozen=True)
class ConformalAlgebra:
    rank: int
    basis_names: tuple[str, ...]
    structure: dict
    alpha: PdModuleMap

    def __post_init__(self):
        if len(self.basis_names) != self.rank:
            raise DimensionError("basis names do not match rank")
        if self.alpha.rows != self.rank or self.alpha.cols != self.rank:
            raise DimensionError("twist matrix shape does not match rank")
        for (i, j), vec in self.structure.items():
            if not (0 <= i < self.rank and 0 <= j < self.rank) or len(vec) != self.rank:
                raise DimensionError(f"bad structure entry at {(i, j)}")
            for p in vec:
                bad = p.variables() - {D, X}
                if bad:
                    raise ValueError(
                        f"structure polynomial at {(i, j)} uses a forbidden variable"
                    )

    def structure_poly(self, i: int, j: int) -> tuple[MultiPoly, ...]:
        return self.structure.get((i, j), (MultiPoly.zero(),) * self.rank)

    def basis(self, i: int) -> ConformalElement:
        return basis_element(self.rank, i)

    def with_structure(self, table: BracketTable) -> "ConformalAlgebra":
        return ConformalAlgebra(self.rank, self.basis_names, normalize_table(dict(table), self.rank), self.alpha)


def normalize_table(table: dict, rank: int) -> dict:
    """Drop all-zero rows so table equality is meaningful."""
    out = {}
    for key, vec in table.items():
        if any(not p.is_zero for p in vec):
            out[key] = tuple(vec)
    return out


# ---------------------------------------------------------------------------
# bracket evaluation
# ---------------------------------------------------------------------------


def eval_table_bracket(
    table: BracketTable,
    rank: int,
    left: ConformalElement,
    right: ConformalElement,
    w: LinearForm,
) -> ConformalElement:
    """Sesquilinear extension of a structure table, at parameter w.

    w may mention D (the skew-symmetry check passes -D - l1); the D in w
    then refers to the D acting on the result.
    """
    if left.ambient_rank != rank or right.ambient_rank != rank:
        raise DimensionError("element rank does not match the bracket table")
    neg_w = (-w).to_poly()
    shift_w = (LinearForm.variable(D) + w).to_poly()
    wp = w.to_poly()
    out = [MultiPoly.zero()] * rank
    for i in range(rank):
        fi = left.coords[i]
        if fi.is_zero:
            continue
        fi = fi.substitute(D, neg_w)
        if fi.is_zero:
            continue
        for j in range(rank):
            gj = right.coords[j]
            if gj.is_zero:
                continue
            vec = table.get((i, j))
            if vec is None:
                continue
            gj = gj.substitute(D, shift_w)
            factor = fi * gj
            for k in range(rank):
                pk = vec[k]
                if not pk.is_zero:
                    out[k] = out[k] + factor * pk.substitute(X, wp)
    return ConformalElement(tuple(out))


def eval_bracket(
    alg: ConformalAlgebra,
    left: ConformalElement,
    right: ConformalElement,
    w: LinearForm,
) -> ConformalElement:
    return eval_table_bracket(alg.structure, alg.rank, left, right, w)


def apply_map(m: PdModuleMap, e: ConformalElement) -> ConformalElement:
    return m.apply(e)


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------


L1 = LinearForm.variable(lam(1))
L2 = LinearForm.variable(lam(2))
XF = LinearForm.variable(X)


def verify_multiplicativity(alg: ConformalAlgebra) -> Report:
    """twist([e_i x e_j]) must equal [twist(e_i) x twist(e_j)]."""
    with checked("multiplicativity") as c:
        for i in range(alg.rank):
            for j in range(alg.rank):
                lhs = alg.alpha.apply(eval_bracket(alg, alg.basis(i), alg.basis(j), XF))
                rhs = eval_bracket(alg, alg.alpha.apply(alg.basis(i)), alg.alpha.apply(alg.basis(j)), XF)
                c.add_nonzero((i, j), lhs - rhs)
    return c.report


def verify_hom_leibniz(alg: ConformalAlgebra) -> Report:
    """Twisted left Leibniz identity on all basis triples.

    [a(p) w1 [q w2 r]] = [[p w1 q] w1+w2 a(r)] + [a(q) w2 [p w1 r]]
    """
    with checked("hom_leibniz") as c:
        a = alg.alpha
        for i in range(alg.rank):
            pi = alg.basis(i)
            api = a.apply(pi)
            for j in range(alg.rank):
                pj = alg.basis(j)
                apj = a.apply(pj)
                left_ij = eval_bracket(alg, pi, pj, L1)
                for k in range(alg.rank):
                    pk = alg.basis(k)
                    lhs = eval_bracket(alg, api, eval_bracket(alg, pj, pk, L2), L1)
                    rhs = eval_bracket(alg, left_ij, a.apply(pk), L1 + L2) + eval_bracket(
                        alg, apj, eval_bracket(alg, pi, pk, L1), L2
                    )
                    c.add_nonzero((i, j, k), lhs - rhs)
    return c.report


def verify_skew_symmetry(alg: ConformalAlgebra) -> Report:
    """Conformal skew-symmetry [p w q] = -[q (-w - D) p]; marks Lie-ness."""
    minus = -L1 - LinearForm.variable(D)
    with checked("skew_symmetry") as c:
        for i in range(alg.rank):
            for j in range(alg.rank):
                direct = eval_bracket(alg, alg.basis(i), alg.basis(j), L1)
                flipped = eval_bracket(alg, alg.basis(j), alg.basis(i), minus)
                c.add_nonzero((i, j), direct + flipped)
    return c.report


def verify_algebra(alg: ConformalAlgebra) -> list[Report]:
    return [verify_hom_leibniz(alg), verify_multiplicativity(alg)]


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def virasoro() -> ConformalAlgebra:
    """Rank-1 algebra with bracket (D + 2x) on its generator."""
    p = MultiPoly.var(D) + MultiPoly.var(X) * 2
    return ConformalAlgebra(
        rank=1,
        basis_names=("L",),
        structure={(0, 0): (p,)},
        alpha=PdModuleMap.identity(1),
    )


def current_algebra(
    rank: int,
    constants: Mapping[tuple[int, int], Sequence[Rat]],
    twist: Sequence[Sequence[Rat]],
    basis_names: Sequence[str] | None = None,
) -> ConformalAlgebra:
    """Lift a finite-dimensional algebra to a conformal one.

    Structure constants become constant structure polynomials and the
    twist matrix lifts entrywise.  The lift satisfies the conformal
    Leibniz identity exactly when the input satisfies the
    finite-dimensional one.
    """
    structure = {}
    for (i, j), vec in constants.items():
        if len(vec) != rank:
            raise DimensionError(f"constant vector at {(i, j)} has wrong length")
        structure[(i, j)] = tuple(MultiPoly.const(Fraction(v)) for v in vec)
    alpha = PdModuleMap([[MultiPoly.const(Fraction(v)) for v in row] for row in twist])
    names = tuple(basis_names) if basis_names else tuple(f"e{i+1}" for i in range(rank))
    return ConformalAlgebra(rank, names, normalize_table(structure, rank), alpha)
