"""Tensor fields with homogeneous polynomial coefficients.

A field of tensor degree p lives in the maximally row-filled symmetry
type for the ambient complex order N. Internally a field is a sparse
vector over pairs (slot key, exponent vector): the slot key lists the
strictly increasing index set of each column, padded with empty slots up
to N - 1, and the exponent vector records one monomial. This canonical
storage makes the differential a small cached matrix multiplication.

The degree-raising differential is realized by a graded insertion of the
derivative index into the column that row filling grows, followed by the
projection onto the irreducible symmetry type. `young_derivative` keeps
the alternative route (raw derivative plus full symmetrizer) as an
independent reference; the two agree up to a nonzero constant on every
block, which the test suite pins down.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import linalg
from . import tensor_core as tc
from .diagrams import Diagram, max_diagram, schur_dim
from .errors import ShapeError, VerificationError
from .tensor_core import CO, CONTRA, Tensor


class BlockLabel(NamedTuple):
    """The bigrading that keeps every computation finite."""

    N: int
    D: int
    p: int
    q: int

    def validate(self) -> "BlockLabel":
        if self.N < 2 or self.D < 1:
            raise ShapeError(f"bad block {self}")
        if not (0 <= self.p <= (self.N - 1) * self.D) or self.q < 0:
            raise ShapeError(f"block {self} out of range")
        return self


def _pad(key, width: int):
    return tuple(key) + ((),) * (width - len(key))


def _strip(key, n_cols: int):
    return tuple(key[:n_cols])


@lru_cache(maxsize=None)
def monomials(D: int, q: int) -> tuple:
    """Exponent vectors of the homogeneous degree-q monomials, lex sorted."""
    if q < 0:
        return ()

    def gen(d, total):
        if d == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in gen(d - 1, total - first):
                yield (first,) + rest

    return tuple(sorted(gen(D, q)))


@lru_cache(maxsize=None)
def field_keys(N: int, D: int, p: int) -> tuple:
    """Padded slot keys of the degree-p symmetry type."""
    Y = max_diagram(N, p)
    return tuple(_pad(S, N - 1) for S in tc.wedge_keys(Y.rows, D))


class PolyTensorField:
    """Homogeneous polynomial tensor field of maximally filled type."""

    __slots__ = ("N", "D", "p", "q", "variance", "data")

    def __init__(self, N, D, p, q, variance=CO, data=None):
        self.N, self.D, self.p, self.q = int(N), int(D), int(p), int(q)
        self.variance = tc._check_variance(variance)
        if self.N < 2 or self.D < 1 or self.p < 0 or self.q < 0:
            raise ShapeError(f"bad field grading N={N} D={D} p={p} q={q}")
        clean = {}
        for (key, exp), v in (data or {}).items():
            v = Fraction(v)
            if not v:
                continue
            clean[(tuple(tuple(s) for s in key), tuple(exp))] = v
        if clean and self.p > (self.N - 1) * self.D:
            raise ShapeError(f"degree {self.p} exceeds the top degree of the complex")
        self.data = clean

    @classmethod
    def zero(cls, N, D, p, q, variance=CO) -> "PolyTensorField":
        return cls(N, D, p, q, variance, {})

    @property
    def block(self) -> BlockLabel:
        return BlockLabel(self.N, self.D, self.p, self.q)

    @property
    def shape(self) -> Diagram:
        return max_diagram(self.N, self.p)

    @property
    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyTensorField)
            and (self.N, self.D, self.p, self.q, self.variance) ==
            (other.N, other.D, other.p, other.q, other.variance)
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.N, self.D, self.p, self.q, self.variance,
                     tuple(sorted(self.data.items()))))

    def __add__(self, other) -> "PolyTensorField":
        if (self.N, self.D, self.p, self.q, self.variance) != (
            other.N, other.D, other.p, other.q, other.variance
        ):
            raise ShapeError("cannot add fields from different blocks")
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data.get(k, Fraction(0)) + v
        return PolyTensorField(self.N, self.D, self.p, self.q, self.variance, data)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "PolyTensorField":
        c = Fraction(c)
        return PolyTensorField(
            self.N, self.D, self.p, self.q, self.variance,
            {k: c * v for k, v in self.data.items()},
        )

    def __repr__(self):
        return (f"PolyTensorField(N={self.N}, D={self.D}, p={self.p}, q={self.q}, "
                f"{self.variance}, {len(self.data)} entries)")

    # -- conversions ------------------------------------------------------

    def tensor_slice(self, exp) -> Tensor:
        """The tensor multiplying one monomial."""
        exp = tuple(exp)
        Y = self.shape
        wvec = {_strip(k, Y.n_cols): v for (k, e), v in self.data.items() if e == exp}
        return tc.tensor_from_wedge(Y, self.D, wvec, self.variance)

    def exponents(self) -> list:
        return sorted({e for _, e in self.data})

    def component(self, idx, exp) -> Fraction:
        """Full component at a column-read index tuple and monomial."""
        Y = self.shape
        res = tc._canonicalize(tuple(idx), tc._column_blocks(Y.rows))
        if res is None:
            return Fraction(0)
        key, sign = res
        return sign * self.data.get((_pad(key, self.N - 1), tuple(exp)), Fraction(0))

    @classmethod
    def from_components(cls, N, D, p, q, variance, components, validate=True):
        """Build a field from full components keyed by (index tuple, exponent)."""
        Y = max_diagram(N, p)
        slices: dict = {}
        for (idx, exp), v in components.items():
            v = Fraction(v)
            if not v:
                continue
            if sum(exp) != q:
                raise ShapeError(f"exponent {exp} is not homogeneous of degree {q}")
            slices.setdefault(tuple(exp), {})[tuple(idx)] = v
        data: dict = {}
        for exp, comp in slices.items():
            T = Tensor(D, p, variance, comp, Y)
            if validate and not tc.schur_conditions_ok(Y, T):
                raise ShapeError(f"slice at exponent {exp} does not have symmetry type {Y}")
            for key, v in tc.tensor_to_wedge(Y, T, validate=validate).items():
                data[(_pad(key, N - 1), exp)] = v
        return cls(N, D, p, q, variance, data)

    def full_components(self) -> dict:
        """All nonzero (index tuple, exponent) components."""
        out: dict = {}
        for exp in self.exponents():
            T = self.tensor_slice(exp)
            for idx, v in T.components.items():
                out[(idx, exp)] = v
        return out

    def to_json(self) -> str:
        entries = [
            {"idx": list(idx), "exp": list(exp),
             "num": str(v.numerator), "den": str(v.denominator)}
            for (idx, exp), v in sorted(self.full_components().items())
        ]
        doc = {
            "N": self.N, "dim": self.D, "degree": self.p, "poly_degree": self.q,
            "variance": self.variance, "shape": self.shape.to_list(), "entries": entries,
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "PolyTensorField":
        doc = json.loads(text)
        comps = {
            (tuple(e["idx"]), tuple(e["exp"])): Fraction(int(e["num"]), int(e["den"]))
            for e in doc["entries"]
        }
        return cls.from_components(
            doc["N"], doc["dim"], doc["degree"], doc["poly_degree"],
            doc["variance"], comps,
        )


def scalar_field(N, D, poly: dict, variance=CO) -> PolyTensorField:
    """Degree-0 field from a homogeneous polynomial {exponent: value}."""
    exps = {tuple(e) for e in poly}
    qs = {sum(e) for e in exps}
    if len(qs) > 1:
        raise ShapeError("polynomial must be homogeneous")
    q = qs.pop() if qs else 0
    key = _pad((), N - 1)
    return PolyTensorField(N, D, 0, q, variance,
                           {(key, tuple(e)): v for e, v in poly.items()})


# ---------------------------------------------------------------------------
# the differential

def _top_degree(N, D):
    return (N - 1) * D


@lru_cache(maxsize=None)
def _insertion(N: int, D: int, p: int):
    """Graded insertion of one index followed by projection.

    Returns (ins, lam) with ins[mu][key] a list of (new key, integer
    coefficient); dividing by lam gives the projected insertion. The
    receiving slot is the column that row filling grows at degree p + 1,
    and the sign is the one of moving the new generator past all slots to
    its left and past the smaller entries of its own slot.
    """
    Y1 = max_diagram(N, p + 1)
    n_cols1 = Y1.n_cols
    Mcols, lam = tc.projector_columns(Y1.rows, D)
    r = p % (N - 1)
    ins = {mu: {} for mu in range(1, D + 1)}
    for key in field_keys(N, D, p):
        prefix = -1 if sum(len(key[j]) for j in range(r)) % 2 else 1
        slot = key[r]
        for mu in range(1, D + 1):
            if mu in slot:
                continue
            less = sum(1 for x in slot if x < mu)
            sign = prefix * (-1 if less % 2 else 1)
            new_slot = tuple(sorted(slot + (mu,)))
            k1 = key[:r] + (new_slot,) + key[r + 1:]
            col = Mcols[_strip(k1, n_cols1)]
            ins[mu][key] = ins[mu].get(key, []) + [
                (_pad(k2, N - 1), sign * c) for k2, c in col.items()
            ]
    return ins, lam


def _apply_d_int(N, D, p, vec: dict) -> dict:
    """One differential step on an integer slot vector, scaled by lam."""
    ins, _ = _insertion(N, D, p)
    out: dict = {}
    for (key, exp), v in vec.items():
        for mu in range(1, D + 1):
            em = exp[mu - 1]
            if not em:
                continue
            targets = ins[mu].get(key)
            if not targets:
                continue
            exp2 = exp[: mu - 1] + (em - 1,) + exp[mu:]
            w = v * em
            for k2, c in targets:
                kk = (k2, exp2)
                acc = out.get(kk, 0) + w * c
                if acc:
                    out[kk] = acc
                else:
                    out.pop(kk, None)
    return out


def n_diff(F: PolyTensorField) -> PolyTensorField:
    """The degree-raising differential; N-th powers vanish identically."""
    N, D = F.N, F.D
    if F.p >= _top_degree(N, D) or F.q == 0:
        return PolyTensorField.zero(N, D, min(F.p + 1, _top_degree(N, D)),
                                    max(F.q - 1, 0), F.variance)
    _, lam = _insertion(N, D, F.p)
    raw = _apply_d_int(N, D, F.p, F.data)
    data = {k: Fraction(v) / lam for k, v in raw.items()}
    return PolyTensorField(N, D, F.p + 1, F.q - 1, F.variance, data)


def d_power(F: PolyTensorField, k: int) -> PolyTensorField:
    out = F
    for _ in range(k):
        out = n_diff(out)
    return out


def nabla(F: PolyTensorField):
    """Raw derivative: one graded index insertion, no projection.

    Returns a multiform whose receiving slot is the column that row
    filling grows; projecting it yields the differential.
    """
    from .multiforms import d_slot, embed_field

    return d_slot((F.p % (F.N - 1)) + 1, embed_field(F))


def young_derivative(F: PolyTensorField) -> PolyTensorField:
    """Reference route for the differential via the full symmetrizer.

    Places the derivative index in the cell that row filling adds, keeps
    the old cells in place, applies the degree sign and the full Young
    projector. Proportional to `n_diff` on every block by a nonzero
    constant; kept as an independent oracle.
    """
    N, D, p, q = F.N, F.D, F.p, F.q
    if p >= _top_degree(N, D) or q == 0:
        return PolyTensorField.zero(N, D, min(p + 1, _top_degree(N, D)),
                                    max(q - 1, 0), F.variance)
    Y, Y1 = max_diagram(N, p), max_diagram(N, p + 1)
    cols1 = Y1.columns()
    offsets = [0]
    for m in cols1:
        offsets.append(offsets[-1] + m)
    old_pos = [offsets[c] + r for (r, c) in Y.cells()]
    new_cell_col = p % (N - 1)
    new_pos = offsets[new_cell_col] + cols1[new_cell_col] - 1

    sign = -1 if p % 2 else 1
    raw_slices: dict = {}
    for exp in F.exponents():
        T = F.tensor_slice(exp)
        for I, v in T.components.items():
            for mu in range(1, D + 1):
                em = exp[mu - 1]
                if not em:
                    continue
                J = [0] * (p + 1)
                for i, pos in enumerate(old_pos):
                    J[pos] = I[i]
                J[new_pos] = mu
                exp2 = exp[: mu - 1] + (em - 1,) + exp[mu:]
                sl = raw_slices.setdefault(exp2, {})
                key = tuple(J)
                acc = sl.get(key, Fraction(0)) + v * em
                if acc:
                    sl[key] = acc
                else:
                    sl.pop(key, None)
    data: dict = {}
    for exp2, comps in raw_slices.items():
        T1 = tc.young_project(Y1, Tensor(D, p + 1, F.variance, comps))
        for key, v in tc.tensor_to_wedge(Y1, T1, validate=False).items():
            data[(_pad(key, N - 1), exp2)] = sign * v
    return PolyTensorField(N, D, p + 1, q - 1, F.variance, data)


# ---------------------------------------------------------------------------
# block bases

@lru_cache(maxsize=None)
def _block_int_basis(N: int, D: int, p: int, q: int) -> tuple:
    """Integer slot-vector basis of one block, deterministic order."""
    if p > _top_degree(N, D):
        return ()
    Y = max_diagram(N, p)
    if schur_dim(Y, D) == 0:
        return ()
    svecs = tc.schur_wedge_basis(Y.rows, D) if Y.size else ({(): 1},)
    out = []
    for s in svecs:
        for e in monomials(D, q):
            out.append({(_pad(k, N - 1), e): c for k, c in s.items()})
    return tuple(out)


def block_dim(N, D, p, q) -> int:
    if p > _top_degree(N, D) or p < 0 or q < 0:
        return 0
    return schur_dim(max_diagram(N, p), D) * len(monomials(D, q))


def block_basis(N, D, p, q, variance=CO) -> list[PolyTensorField]:
    """Basis fields of one block: symmetry basis times monomial basis."""
    return [
        PolyTensorField(N, D, p, q, variance, {k: Fraction(v) for k, v in vec.items()})
        for vec in _block_int_basis(N, D, p, q)
    ]


def random_field(N, D, p, q, rng, variance=CO, span=5) -> PolyTensorField:
    """Small-integer random combination of block basis fields."""
    out = PolyTensorField.zero(N, D, p, q, variance)
    for b in block_basis(N, D, p, q, variance):
        c = rng.randint(-span, span)
        if c:
            out = out + b.scale(c)
    return out


# ---------------------------------------------------------------------------
# the codifferential and duality

def delta(F: PolyTensorField) -> PolyTensorField:
    """Divergence-type codifferential on contravariant fields.

    Contracts a derivative into the last entry of the rightmost tall
    column, then projects. In the well-filled case the projection is
    already the identity.
    """
    if F.variance != CONTRA:
        raise ShapeError("the codifferential acts on contravariant fields")
    N, D, p = F.N, F.D, F.p
    if p == 0 or F.q == 0:
        return PolyTensorField.zero(N, D, max(p - 1, 0), max(F.q - 1, 0), CONTRA)
    raw, lam, p0 = _delta_raw(F, project=True)
    data = {k: v / lam for k, v in raw.items()}
    return PolyTensorField(N, D, p0, F.q - 1, CONTRA, data)


def _delta_raw(F: PolyTensorField, project: bool):
    """Shared contraction step; optionally skips the projection."""
    N, D, p = F.N, F.D, F.p
    slot = (p - 1) % (N - 1)
    Y0 = max_diagram(N, p - 1)
    n_cols0 = Y0.n_cols
    Mcols, lam = tc.projector_columns(Y0.rows, D)
    out: dict = {}
    for (key, exp), v in F.data.items():
        S = key[slot]
        for i, nu in enumerate(S):
            em = exp[nu - 1]
            if not em:
                continue
            sign = -1 if (len(S) - 1 - i) % 2 else 1
            k1 = key[:slot] + (S[:i] + S[i + 1:],) + key[slot + 1:]
            exp2 = exp[: nu - 1] + (em - 1,) + exp[nu:]
            w = v * em * sign
            if project:
                for k2, c in Mcols[_strip(k1, n_cols0)].items():
                    kk = (_pad(k2, N - 1), exp2)
                    acc = out.get(kk, Fraction(0)) + w * c
                    if acc:
                        out[kk] = acc
                    else:
                        out.pop(kk, None)
            else:
                kk = (k1, exp2)
                acc = out.get(kk, Fraction(0)) + w * lam
                if acc:
                    out[kk] = acc
                else:
                    out.pop(kk, None)
    return out, lam, p - 1


def delta_unprojected(F: PolyTensorField) -> PolyTensorField:
    """The contraction step alone, for checking when projection is free."""
    if F.variance != CONTRA:
        raise ShapeError("the codifferential acts on contravariant fields")
    if F.p == 0 or F.q == 0:
        return PolyTensorField.zero(F.N, F.D, max(F.p - 1, 0), max(F.q - 1, 0), CONTRA)
    raw, lam, p0 = _delta_raw(F, project=False)
    data = {k: v / lam for k, v in raw.items()}
    return PolyTensorField(F.N, F.D, p0, F.q - 1, CONTRA, data)


def dual_star_field(F: PolyTensorField) -> PolyTensorField:
    """Epsilon duality applied slice by slice; flips the variance."""
    N, D = F.N, F.D
    p2 = _top_degree(N, D) - F.p
    if p2 < 0:
        raise ShapeError("degree out of range for duality")
    Y2 = max_diagram(N, p2)
    variance2 = CONTRA if F.variance == CO else CO
    data: dict = {}
    for exp in F.exponents():
        T = F.tensor_slice(exp)
        T2 = tc.dual_star(N, T)
        for key, v in tc.tensor_to_wedge(Y2, T2, validate=False).items():
            data[(_pad(key, N - 1), exp)] = v
    return PolyTensorField(N, D, p2, F.q, variance2, data)


@lru_cache(maxsize=None)
def _double_dual_constant(N: int, D: int, p: int) -> Fraction:
    """Scalar of the double dual on the degree-p contravariant block."""
    pairs = []
    for b in block_basis(N, D, p, 0, CONTRA):
        pairs.append((dual_star_field(dual_star_field(b)).data, b.data))
    c = linalg.proportionality(pairs)
    if not c:
        raise VerificationError(f"double dual degenerate at N={N} D={D} p={p}")
    return c


def star_inverse_field(F: PolyTensorField) -> PolyTensorField:
    """Preimage of F under the duality map of opposite variance."""
    c = _double_dual_constant(F.N, F.D, F.p)
    return dual_star_field(F).scale(1 / c)


def star_relation_constants(N: int, D: int, q_values=(1, 2)) -> dict:
    """Per-degree constants relating the codifferential to star d star.

    For each n returns the unique nonzero c with
    delta = c * (star compose d compose star inverse) on degree n,
    verified on full block bases over the given polynomial degrees.
    """
    out = {}
    for n in range(1, _top_degree(N, D) + 1):
        pairs = []
        for q in q_values:
            for b in block_basis(N, D, n, q, CONTRA):
                lhs = delta(b)
                rhs = dual_star_field(n_diff(star_inverse_field(b)))
                pairs.append((lhs.data, rhs.data))
        try:
            c = linalg.proportionality(pairs)
        except ValueError as exc:
            raise VerificationError(
                f"no single constant relates delta and star d star at degree {n}: {exc}"
            ) from exc
        if not c:
            raise VerificationError(f"degenerate star relation at degree {n}")
        out[n] = c
    return out


# ---------------------------------------------------------------------------
# the graded product

def field_product(F: PolyTensorField, G: PolyTensorField) -> PolyTensorField:
    """Projected tensor product of two fields.

    Bilinear over polynomial scalars but not assumed associative.
    """
    if (F.N, F.D, F.variance) != (G.N, G.D, G.variance):
        raise ShapeError("product requires matching order, dimension and variance")
    N, D = F.N, F.D
    p = F.p + G.p
    q = F.q + G.q
    if p > _top_degree(N, D):
        return PolyTensorField.zero(N, D, _top_degree(N, D), q, F.variance)
    Y = max_diagram(N, p)
    data: dict = {}
    for ef in F.exponents():
        Tf = F.tensor_slice(ef)
        for eg in G.exponents():
            Tg = G.tensor_slice(eg)
            exp = tuple(a + b for a, b in zip(ef, eg))
            comps: dict = {}
            for I, a in Tf.components.items():
                for J, b in Tg.components.items():
                    K = I + J
                    acc = comps.get(K, Fraction(0)) + a * b
                    if acc:
                        comps[K] = acc
                    else:
                        comps.pop(K, None)
            proj = tc.young_project(Y, Tensor(D, p, F.variance, comps))
            for key, v in tc.tensor_to_wedge(Y, proj, validate=False).items():
                kk = (_pad(key, N - 1), exp)
                acc = data.get(kk, Fraction(0)) + v
                if acc:
                    data[kk] = acc
                else:
                    data.pop(kk, None)
    return PolyTensorField(N, D, p, q, F.variance, data)
