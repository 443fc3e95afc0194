"""Cochains and the three coboundary operators.

An n-cochain stores, for each n-tuple of algebra basis indices, a module
vector over polynomials in D and l1..l(n-1).  Evaluation on arbitrary
arguments extends the table multilinearly together with the slot rules

    slot i < n : a D acting on argument i becomes multiplication by -w_i,
    slot n     : a D on the last argument becomes D + w_1 + ... + w_(n-1),

where w_1..w_(n-1) are the evaluation parameters.  Stored cochains always
use the canonical variables l1..l(n-1); every application with a shuffled
parameter list substitutes them positionally (and simultaneously) at
evaluation time.

Coboundary convention.  The degree-raising operator has three groups of
terms: single left actions l(p_i) with sign (-1)^(i+1), one right action
with sign (-1)^(n+1), and bracket insertions in which [p_i w_i p_j]
replaces the argument p_j (argument i removed, the other arguments
twisted), carrying parameter w_i + w_j and sign (-1)^i.  When j = n+1
the bracket occupies the final slot, which carries no parameter of its
own, so no extra parameter appears.  This placement makes the operator
square to zero on every algebra satisfying the twisted Leibniz identity,
including non-skew ones.  The alternative convention that moves the
bracket to the front with sign (-1)^(i+j) squares to zero only on skew
(Lie-type) brackets; the square-zero tests reject it on the rank-2
current-algebra example.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .poly import D, MultiPoly, LinearForm, X, lam
from .report import Report, checked
from .representation import Representation, eval_l, eval_r
from .structure import (
    ConformalAlgebra,
    ConformalElement,
    DimensionError,
    PdModuleMap,
    eval_bracket,
    normalize_table,
    zero_element,
)

_TMP_BASE = 10**6  # scratch variable ids for simultaneous relabeling


@dataclass(frozen=True)
class Cochain:
    arity: int
    alg_rank: int
    rep_rank: int
    table: dict  # n-tuple of basis indices -> tuple of MultiPoly

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("cochains start at arity 1")
        allowed = {D} | {lam(i) for i in range(1, self.arity)}
        for key, vec in self.table.items():
            if len(key) != self.arity or len(vec) != self.rep_rank:
                raise DimensionError(f"bad cochain entry at {key}")
            for p in vec:
                if p.variables() - allowed:
                    raise ValueError(
                        f"cochain value at {key} uses a variable outside D, l1..l{self.arity - 1}"
                    )

    def value(self, key: tuple[int, ...]) -> tuple[MultiPoly, ...]:
        return self.table.get(key, (MultiPoly.zero(),) * self.rep_rank)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for vec in self.table.values() for p in vec)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._match(other)
        keys = set(self.table) | set(other.table)
        table = {
            k: tuple(a + b for a, b in zip(self.value(k), other.value(k))) for k in keys
        }
        return Cochain(self.arity, self.alg_rank, self.rep_rank, normalize_table(table, self.rep_rank))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        if not isinstance(c, MultiPoly):
            c = MultiPoly.const(c)
        table = {k: tuple(c * p for p in vec) for k, vec in self.table.items()}
        return Cochain(self.arity, self.alg_rank, self.rep_rank, normalize_table(table, self.rep_rank))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        self._match(other)
        return (self - other).is_zero

    def _match(self, other: "Cochain"):
        if (self.arity, self.alg_rank, self.rep_rank) != (
            other.arity,
            other.alg_rank,
            other.rep_rank,
        ):
            raise DimensionError("cochain shapes differ")


def zero_cochain(arity: int, alg_rank: int, rep_rank: int) -> Cochain:
    return Cochain(arity, alg_rank, rep_rank, {})


def cochain_from_map(m: PdModuleMap) -> Cochain:
    """View a module map L -> M as an arity-1 cochain."""
    table = {}
    for i in range(m.cols):
        vec = tuple(m.entries[k][i] for k in range(m.rows))
        if any(not p.is_zero for p in vec):
            table[(i,)] = vec
    return Cochain(1, m.cols, m.rows, table)


def cochain_from_bracket_table(table, rank: int) -> Cochain:
    """View a bracket table (values in D, x) as an arity-2 cochain in D, l1."""
    out = {}
    l1 = LinearForm.variable(lam(1))
    for key, vec in table.items():
        out[key] = tuple(p.substitute(X, l1) for p in vec)
    return Cochain(2, rank, rank, normalize_table(out, rank))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def eval_cochain(
    f: Cochain, args: list[ConformalElement], lams: list[LinearForm]
) -> ConformalElement:
    """Multilinear, sesquilinear extension of the stored table."""
    n = f.arity
    if len(args) != n or len(lams) != n - 1:
        raise DimensionError(
            f"arity-{n} cochain applied to {len(args)} arguments and {len(lams)} parameters"
        )
    for a in args:
        if a.ambient_rank != f.alg_rank:
            raise DimensionError("argument rank does not match the cochain")
    last_shift = LinearForm.variable(D)
    for w in lams:
        last_shift = last_shift + w
    last_shift_p = last_shift.to_poly()
    # per-slot substituted coefficients, keeping only nonzero entries
    slot_coeffs: list[dict[int, MultiPoly]] = []
    for s, a in enumerate(args):
        subst = (-lams[s]).to_poly() if s < n - 1 else last_shift_p
        entries = {}
        for b, coeff in enumerate(a.coords):
            if coeff.is_zero:
                continue
            coeff = coeff.substitute(D, subst)
            if not coeff.is_zero:
                entries[b] = coeff
        slot_coeffs.append(entries)
    out = [MultiPoly.zero()] * f.rep_rank
    if any(not entries for entries in slot_coeffs):
        return ConformalElement(tuple(out))
    for key in itertools.product(*(sorted(e) for e in slot_coeffs)):
        vec = f.table.get(key)
        if vec is None:
            continue
        factor = MultiPoly.const(1)
        for s, b in enumerate(key):
            factor = factor * slot_coeffs[s][b]
        if factor.is_zero:
            continue
        for k, p in enumerate(vec):
            if not p.is_zero:
                out[k] = out[k] + factor * _relabel(p, n - 1, lams)
    return ConformalElement(tuple(out))


def _relabel(p: MultiPoly, count: int, lams: list[LinearForm]) -> MultiPoly:
    """Substitute stored l1..l<count> by the parameter list, simultaneously.

    Targets may themselves mention l-variables (and D), so the stored
    variables are moved to scratch ids first.
    """
    if count == 0:
        return p
    live = p.variables()
    needed = [i for i in range(1, count + 1) if lam(i) in live]
    if not needed:
        return p
    for i in needed:
        p = p.substitute(lam(i), LinearForm.variable(_TMP_BASE + i))
    for i in needed:
        p = p.substitute(_TMP_BASE + i, lams[i - 1])
    return p


def check_cochain_compat(f: Cochain, alg: ConformalAlgebra, rep: Representation) -> Report:
    """Twist equivariance: f applied to twisted arguments equals the module
    twist of f.  Checked, not enforced, so counterexamples stay expressible."""
    lams = [LinearForm.variable(lam(i)) for i in range(1, f.arity)]
    with checked("cochain_twist_equivariance") as c:
        for key in itertools.product(range(alg.rank), repeat=f.arity):
            args = [alg.alpha.apply(alg.basis(i)) for i in key]
            lhs = eval_cochain(f, args, lams)
            rhs = rep.beta.apply(ConformalElement(f.value(key)))
            c.add_nonzero(key, lhs - rhs)
    return c.report


# ---------------------------------------------------------------------------
# coboundaries
# ---------------------------------------------------------------------------


def _output_lams(n: int) -> list[LinearForm]:
    return [LinearForm.variable(lam(i)) for i in range(1, n + 1)]


def _l_term_lams(n: int, i: int) -> list[LinearForm]:
    """Parameters for the hatted application in the i-th left-action term."""
    return [LinearForm.variable(lam(k)) for k in range(1, n + 1) if k != i]


def _insertion_lams(n: int, i: int, j: int) -> list[LinearForm]:
    """Parameters for the insertion term (i, j): argument i removed, the
    bracket of arguments i and j standing at position j among 1..n+1."""
    occupants = [s for s in range(1, n + 2) if s != i]
    out = []
    for s in occupants[: n - 1]:
        if s == j:
            out.append(LinearForm.variable(lam(i)) + LinearForm.variable(lam(j)))
        else:
            out.append(LinearForm.variable(lam(s)))
    return out


def coboundary_homL(f: Cochain, alg: ConformalAlgebra, rep: Representation) -> Cochain:
    """The degree-raising operator of the two-sided module complex."""
    _check_ranks(f, alg, rep)
    n = f.arity
    alpha_pow = alg.alpha.power(n - 1) if n >= 1 else alg.alpha
    table = {}
    for key in itertools.product(range(alg.rank), repeat=n + 1):
        acc = zero_element(rep.rank)
        basis = [alg.basis(t) for t in key]
        # left-action terms
        for i in range(1, n + 1):
            reduced = [basis[s] for s in range(n + 1) if s != i - 1]
            v = eval_cochain(f, reduced, _l_term_lams(n, i))
            term = eval_l(rep, alpha_pow.apply(basis[i - 1]), v, LinearForm.variable(lam(i)))
            acc = acc + term if (i % 2 == 1) else acc - term
        # right-action term
        w = eval_cochain(f, basis[:n], _output_lams(n - 1))
        total = LinearForm()
        for k in range(1, n + 1):
            total = total + LinearForm.variable(lam(k))
        term = eval_r(rep, w, alpha_pow.apply(basis[n]), total)
        acc = acc + term if (n + 1) % 2 == 0 else acc - term
        # bracket-insertion terms
        for i in range(1, n + 2):
            for j in range(i + 1, n + 2):
                inner = eval_bracket(
                    alg, basis[i - 1], basis[j - 1], LinearForm.variable(lam(i))
                )
                args = [
                    inner if s == j else alg.alpha.apply(basis[s - 1])
                    for s in range(1, n + 2)
                    if s != i
                ]
                v = eval_cochain(f, args, _insertion_lams(n, i, j))
                acc = acc - v if i % 2 == 1 else acc + v
        if not acc.is_zero:
            table[key] = acc.coords
    return Cochain(n + 1, alg.rank, rep.rank, table)


def coboundary_HN(
    g: Cochain,
    alg: ConformalAlgebra,
    n_op: PdModuleMap,
    rep: Representation,
) -> Cochain:
    """The operator-twisted coboundary, written out term by term.

    Each group of the plain coboundary splits in three: left actions act
    through n_op on the argument, through the module operator on the
    value, and once more with the module operator pulled outside (with a
    minus sign); the right-action and insertion groups split the same
    way.  The result coincides with the plain coboundary taken over the
    deformed bracket and the induced actions, which is asserted as a test
    cross-check rather than used as the implementation.
    """
    if rep.n_m is None:
        raise ValueError("representation carries no module operator")
    _check_ranks(g, alg, rep)
    nm = rep.n_m
    n = g.arity
    alpha_pow = alg.alpha.power(n - 1)
    table = {}
    for key in itertools.product(range(alg.rank), repeat=n + 1):
        acc = zero_element(rep.rank)
        basis = [alg.basis(t) for t in key]
        for i in range(1, n + 1):
            reduced = [basis[s] for s in range(n + 1) if s != i - 1]
            v = eval_cochain(g, reduced, _l_term_lams(n, i))
            ai = alpha_pow.apply(basis[i - 1])
            wi = LinearForm.variable(lam(i))
            term = (
                eval_l(rep, n_op.apply(ai), v, wi)
                + eval_l(rep, ai, nm.apply(v), wi)
                - nm.apply(eval_l(rep, ai, v, wi))
            )
            acc = acc + term if (i % 2 == 1) else acc - term
        w = eval_cochain(g, basis[:n], _output_lams(n - 1))
        total = LinearForm()
        for k in range(1, n + 1):
            total = total + LinearForm.variable(lam(k))
        an = alpha_pow.apply(basis[n])
        term = (
            eval_r(rep, nm.apply(w), an, total)
            + eval_r(rep, w, n_op.apply(an), total)
            - nm.apply(eval_r(rep, w, an, total))
        )
        acc = acc + term if (n + 1) % 2 == 0 else acc - term
        for i in range(1, n + 2):
            for j in range(i + 1, n + 2):
                pi, pj = basis[i - 1], basis[j - 1]
                wi = LinearForm.variable(lam(i))
                inner = (
                    eval_bracket(alg, n_op.apply(pi), pj, wi)
                    + eval_bracket(alg, pi, n_op.apply(pj), wi)
                    - n_op.apply(eval_bracket(alg, pi, pj, wi))
                )
                args = [
                    inner if s == j else alg.alpha.apply(basis[s - 1])
                    for s in range(1, n + 2)
                    if s != i
                ]
                v = eval_cochain(g, args, _insertion_lams(n, i, j))
                acc = acc - v if i % 2 == 1 else acc + v
        if not acc.is_zero:
            table[key] = acc.coords
    return Cochain(n + 1, alg.rank, rep.rank, table)


def phi_map(f: Cochain, n_op: PdModuleMap, rep: Representation) -> Cochain:
    """Comparison map between the plain and operator-twisted complexes.

    Alternating sum over argument subsets: arguments outside the subset
    stay bare and contribute one factor of the module operator outside,

        sum over S of (-1)^(n-|S|) nm^(n-|S|) f(n_op on S, bare off S).

    At arity 2 this is the familiar four-term expression
    f(Np, Nq) - nm f(p, Nq) - nm f(Np, q) + nm^2 f(p, q); at arity 1 it is
    f(Np) - nm f(p).  The square-zero and commuting-square tests force
    this form of the higher terms.
    """
    if rep.n_m is None:
        raise ValueError("representation carries no module operator")
    _check_ranks(f, alg=None, rep=rep)
    if n_op.rows != f.alg_rank or n_op.cols != f.alg_rank:
        raise DimensionError("operator shape does not match the cochain")
    n = f.arity
    nm = rep.n_m
    nm_powers = [PdModuleMap.identity(rep.rank)]
    for _ in range(n):
        nm_powers.append(nm.compose(nm_powers[-1]))
    lams = _output_lams(n - 1)
    table = {}
    for key in itertools.product(range(f.alg_rank), repeat=n):
        basis = [ConformalElement(tuple(
            MultiPoly.const(1) if b == t else MultiPoly.zero()
            for b in range(f.alg_rank)
        )) for t in key]
        mapped = [n_op.apply(e) for e in basis]
        acc = zero_element(rep.rank)
        for mask in itertools.product((0, 1), repeat=n):
            bare = n - sum(mask)
            args = [mapped[s] if mask[s] else basis[s] for s in range(n)]
            v = nm_powers[bare].apply(eval_cochain(f, args, lams))
            acc = acc + v if bare % 2 == 0 else acc - v
        if not acc.is_zero:
            table[key] = acc.coords
    return Cochain(n, f.alg_rank, rep.rank, table)


def _check_ranks(f: Cochain, alg: ConformalAlgebra | None, rep: Representation):
    if alg is not None and f.alg_rank != alg.rank:
        raise DimensionError("cochain is over a different algebra rank")
    if f.rep_rank != rep.rank:
        raise DimensionError("cochain values live in a different module rank")


# ---------------------------------------------------------------------------
# the combined complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HNLAPair:
    """Element of the combined complex: an arity-n cochain paired with an
    arity-(n-1) one.  The degree-1 pair carries None in the second slot,
    standing for the zero component below arity 1."""

    f: Cochain
    g: Cochain | None

    def __post_init__(self):
        if self.g is None:
            if self.f.arity != 1:
                raise DimensionError("missing lower component only allowed at arity 1")
            return
        if self.g.arity != self.f.arity - 1:
            raise DimensionError("pair arities must differ by one")
        if (self.g.alg_rank, self.g.rep_rank) != (self.f.alg_rank, self.f.rep_rank):
            raise DimensionError("pair components live over different ranks")

    @property
    def is_zero(self) -> bool:
        return self.f.is_zero and (self.g is None or self.g.is_zero)

    def __sub__(self, other: "HNLAPair") -> "HNLAPair":
        if (self.g is None) != (other.g is None):
            raise DimensionError("pair shapes differ")
        return HNLAPair(
            self.f - other.f, None if self.g is None else self.g - other.g
        )


def coboundary_HNLA(
    pair: HNLAPair,
    alg: ConformalAlgebra,
    n_op: PdModuleMap,
    rep: Representation,
) -> HNLAPair:
    """d(f, g) = (delta f, -partial g - phi f)."""
    df = coboundary_homL(pair.f, alg, rep)
    second = -phi_map(pair.f, n_op, rep)
    if pair.g is not None:
        second = second - coboundary_HN(pair.g, alg, n_op, rep)
    return HNLAPair(df, second)


def is_cocycle(
    x: Cochain | HNLAPair,
    alg: ConformalAlgebra,
    rep: Representation,
    n_op: PdModuleMap | None = None,
) -> tuple[bool, Report]:
    with checked("cocycle") as c:
        if isinstance(x, Cochain):
            image = coboundary_homL(x, alg, rep)
            for key in sorted(image.table):
                c.add_nonzero(key, ConformalElement(image.value(key)))
        else:
            if n_op is None:
                raise ValueError("pair cocycle check needs the algebra operator")
            image = coboundary_HNLA(x, alg, n_op, rep)
            for key in sorted(image.f.table):
                c.add_nonzero(("upper",) + key, ConformalElement(image.f.value(key)))
            if image.g is not None:
                for key in sorted(image.g.table):
                    c.add_nonzero(("lower",) + key, ConformalElement(image.g.value(key)))
    return c.report.passed, c.report


# ---------------------------------------------------------------------------
# random cochains for the square-zero experiments
# ---------------------------------------------------------------------------


def random_cochain(
    alg_rank: int,
    rep_rank: int,
    arity: int,
    rng: Random,
    max_deg: int = 2,
) -> Cochain:
    """Seeded random cochain with entries of total degree <= max_deg."""
    vs = [D] + [lam(i) for i in range(1, arity)]
    monomials = []
    for degs in itertools.product(range(max_deg + 1), repeat=len(vs)):
        if sum(degs) <= max_deg:
            key = tuple((v, e) for v, e in zip(vs, degs) if e)
            monomials.append(key)
    monomials.sort()
    table = {}
    for key in itertools.product(range(alg_rank), repeat=arity):
        vec = []
        for _ in range(rep_rank):
            terms = {}
            for mono in monomials:
                c = rng.randint(-2, 2)
                if c:
                    terms[mono] = Fraction(c)
            vec.append(MultiPoly(terms))
        if any(not p.is_zero for p in vec):
            table[key] = tuple(vec)
    return Cochain(arity, alg_rank, rep_rank, table)
