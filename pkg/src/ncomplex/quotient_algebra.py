"""The associative algebra acting on the graded space of symmetry types.

Words in base vectors act on the right of the graded space by repeated
append-and-project; the kernel of that action is a two-sided ideal of
the tensor algebra, and the quotient is the associative cousin of the
nonassociative projected product. Nothing here materializes the quotient
algebra itself: every statement is phrased through kernel and image
dimensions of the action, which keeps the whole module linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .diagrams import max_diagram, schur_dim
from .errors import ShapeError
from .fields import _insertion, _pad, _strip, _top_degree
from .multiforms import CheckReport
from .tensor_core import CONTRA, Tensor, tensor_from_wedge, tensor_to_wedge


def unit_element(N: int, D: int) -> Tensor:
    """The degree-zero generator, a cyclic vector for the action."""
    return Tensor(D, 0, CONTRA, {(): Fraction(1)}, max_diagram(N, 0))


def _insert_index(N, D, p, vec, mu, exact=False):
    """Append one base index and project, on slot coordinates."""
    ins, lam = _insertion(N, D, p)
    out: dict = {}
    for key, v in vec.items():
        for k2, c in ins[mu].get(key, ()):
            acc = out.get(k2, 0) + v * c
            if acc:
                out[k2] = acc
            else:
                out.pop(k2, None)
    if exact:
        out = {k: Fraction(v, lam) for k, v in out.items()}
    return out


def _act_vec(N, D, p, vec, letters, exact=False):
    """Apply a word of base indices to a slot vector of degree p."""
    cur, cp = vec, p
    for mu in letters:
        if cp >= _top_degree(N, D):
            return {}
        cur = _insert_index(N, D, cp, cur, mu, exact=exact)
        cp += 1
        if not cur:
            return {}
    return cur


def act(N: int, T: Tensor, word) -> Tensor:
    """Right action of a word of vectors on a graded element.

    Each letter is appended and projected in turn; the result drops to
    zero as soon as the degree leaves the finite range.
    """
    if T.shape is None or T.shape != max_diagram(N, T.degree):
        raise ShapeError("the element must carry its maximally filled shape")
    D = T.dim
    p = T.degree
    vec = {_pad(k, N - 1): v for k, v in tensor_to_wedge(T.shape, T).items()}
    for X in word:
        X = [Fraction(x) for x in X]
        if len(X) != D:
            raise ShapeError(f"word letter of length {len(X)}, expected {D}")
        if p >= _top_degree(N, D):
            vec = {}
            p += 1
            continue
        nxt: dict = {}
        for mu in range(1, D + 1):
            if not X[mu - 1]:
                continue
            img = _insert_index(N, D, p, vec, mu, exact=True)
            for k, v in img.items():
                acc = nxt.get(k, Fraction(0)) + X[mu - 1] * v
                if acc:
                    nxt[k] = acc
                else:
                    nxt.pop(k, None)
        vec = nxt
        p += 1
    p_out = min(p, _top_degree(N, D) + 1)
    if p_out > _top_degree(N, D) or not vec:
        deg = min(p, _top_degree(N, D))
        return Tensor(D, deg, CONTRA, {}, max_diagram(N, deg))
    Y = max_diagram(N, p)
    return tensor_from_wedge(Y, D, {_strip(k, Y.n_cols): v for k, v in vec.items()}, CONTRA)


@dataclass(frozen=True)
class _GradedBasis:
    """Slot-coordinate bases of every degree, shared by the checks."""

    N: int
    D: int

    def degrees(self):
        return range(0, _top_degree(self.N, self.D) + 1)

    def basis(self, p):
        from .tensor_core import schur_wedge_basis

        Y = max_diagram(self.N, p)
        if schur_dim(Y, self.D) == 0:
            return ()
        if Y.size == 0:
            return ({_pad((), self.N - 1): 1},)
        return tuple(
            {_pad(k, self.N - 1): c for k, c in vec.items()}
            for vec in schur_wedge_basis(Y.rows, self.D)
        )


def _word_action_column(N, D, letters):
    """Stacked action of one word over every degree, as a sparse column."""
    gb = _GradedBasis(N, D)
    col: dict = {}
    n = len(letters)
    for p in gb.degrees():
        if p + n > _top_degree(N, D):
            continue
        for j, vec in enumerate(gb.basis(p)):
            img = _act_vec(N, D, p, vec, letters)
            for k, v in img.items():
                col[(p, j, k)] = v
    return col


def kernel_dim(N: int, D: int, n: int) -> int:
    """Dimension of the degree-n kernel of the word action."""
    if n == 0:
        return 0
    cols = [
        _word_action_column(N, D, letters)
        for letters in itertools.product(range(1, D + 1), repeat=n)
    ]
    return D ** n - linalg.rank(cols)


def image_dims(N: int, D: int, n: int) -> int:
    """Rank of the degree-n word action (the quotient algebra dimension)."""
    cols = [
        _word_action_column(N, D, letters)
        for letters in itertools.product(range(1, D + 1), repeat=n)
    ]
    return linalg.rank(cols)


# ---------------------------------------------------------------------------
# relation families

def _symmetrized_positions(word, positions):
    """Sum of position permutations of a word over the chosen slots."""
    out: dict = {}
    vals = [word[t] for t in positions]
    for perm in itertools.permutations(vals):
        w = list(word)
        for t, v in zip(positions, perm):
            w[t] = v
        key = tuple(w)
        out[key] = out.get(key, 0) + 1
    return out


def _acts_as_zero(N, D, u: dict, degree: int) -> bool:
    """True when a tensor-algebra element kills every graded basis vector."""
    gb = _GradedBasis(N, D)
    for p in gb.degrees():
        if p + degree > _top_degree(N, D):
            continue
        for vec in gb.basis(p):
            total: dict = {}
            for letters, c in u.items():
                img = _act_vec(N, D, p, vec, letters)
                for k, v in img.items():
                    acc = total.get(k, 0) + c * v
                    if acc:
                        total[k] = acc
                    else:
                        total.pop(k, None)
            if total:
                return False
    return True


def symmetrized_power_check(N: int, D: int) -> bool:
    """Fully symmetrized words of length N act as zero, all index choices."""
    for multiset in itertools.combinations_with_replacement(range(1, D + 1), N):
        u = _symmetrized_positions(tuple(multiset), tuple(range(N)))
        if not _acts_as_zero(N, D, u, N):
            return False
    return True


def _cyclic_generators(D):
    """Degree-3 generating family: u v w + w u v + v w u."""
    gens = []
    for u in range(1, D + 1):
        for v in range(1, D + 1):
            for w in range(1, D + 1):
                vec = {}
                for key in ((u, v, w), (w, u, v), (v, w, u)):
                    vec[key] = vec.get(key, 0) + 1
                gens.append(vec)
    return gens


def _quartic_generators(D):
    """Degree-4 family: polarizations of X (x) Y (x) X (x) X."""
    gens = []
    for xs in itertools.combinations_with_replacement(range(1, D + 1), 3):
        for y in range(1, D + 1):
            vec: dict = {}
            for perm in itertools.permutations(xs):
                key = (perm[0], y, perm[1], perm[2])
                vec[key] = vec.get(key, 0) + 1
            gens.append(vec)
    return gens


def _ideal_dim(D, gens_by_degree, n) -> int:
    """Degree-n dimension of the two-sided ideal the generators span."""
    cols = []
    for g_deg, gens in gens_by_degree.items():
        if g_deg > n:
            continue
        for left_len in range(0, n - g_deg + 1):
            right_len = n - g_deg - left_len
            for left in itertools.product(range(1, D + 1), repeat=left_len):
                for right in itertools.product(range(1, D + 1), repeat=right_len):
                    for g in gens:
                        col = {}
                        for mid, c in g.items():
                            key = left + mid + right
                            col[key] = col.get(key, 0) + c
                        cols.append(col)
    return linalg.rank(cols)


def relation_checks(N: int, D: int, degree_cap: int | None = None, rng=None) -> CheckReport:
    """Verdicts on the relation families of the word action.

    Covers the symmetric-entry kernel, the order-3 cyclic and quartic
    relations, the bounded comparison of the generated ideal against the
    full kernel, and cyclicity of the degree-zero generator.
    """
    if degree_cap is None:
        degree_cap = 2 * N - 2
    rep = CheckReport("algebra_relations", {"N": N, "D": D, "degree_cap": degree_cap})

    rep.record("fully symmetrized length-N words act as zero",
               symmetrized_power_check(N, D))

    base_words = list(itertools.product(range(1, D + 1), repeat=min(N + 1, degree_cap)))
    if rng is not None:
        rng.shuffle(base_words)
        base_words = base_words[:10]
    ok = True
    size = min(N + 1, degree_cap)
    for word in base_words:
        for positions in itertools.combinations(range(size), N):
            u = _symmetrized_positions(word, positions)
            if not _acts_as_zero(N, D, u, size):
                ok = False
    rep.record(f"words of length {size} symmetric in {N} entries act as zero", ok)

    if N == 3:
        ok3 = all(_acts_as_zero(3, D, g, 3) for g in _cyclic_generators(D))
        rep.record("cyclic three-letter relation acts as zero", ok3)
        ok4 = all(_acts_as_zero(3, D, g, 4) for g in _quartic_generators(D))
        rep.record("quartic relation acts as zero", ok4)
        if D <= 2:
            gens = {3: _cyclic_generators(D), 4: _quartic_generators(D)}
            for n in range(3, degree_cap + 1):
                ideal_n = _ideal_dim(D, gens, n)
                kernel_n = kernel_dim(3, D, n)
                rep.record(
                    f"ideal dimension equals kernel dimension at degree {n}",
                    ideal_n == kernel_n,
                    {"ideal": ideal_n, "kernel": kernel_n},
                )

    gb = _GradedBasis(N, D)
    for n in range(0, degree_cap + 1):
        if n > _top_degree(N, D):
            break
        cols = []
        for letters in itertools.product(range(1, D + 1), repeat=n):
            img = _act_vec(N, D, 0, {_pad((), N - 1): 1}, letters)
            cols.append(img)
        rep.record(
            f"unit generates degree {n}",
            linalg.rank(cols) == schur_dim(max_diagram(N, n), D),
        )
    return rep
