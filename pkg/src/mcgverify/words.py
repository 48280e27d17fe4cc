"""Words in the extended mapping class group and how they act.

Letters (the literal syntax is bit-exact):

``r``        rotation sigma
``R``        its inverse
``t``        the reflection tau
``q``        tau after the twist about ``b0``
``T[name]``  right-handed twist about a named curve
``T'[name]`` its inverse

Whitespace is ignored and words compose like functions: the rightmost
letter acts first.  ``q`` has order two; the replayer checks this before
any word relying on ``q^-1 = q`` is trusted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .curves import (
    CurveError,
    NormalCurve,
    homology_vector,
    oriented_walk,
    side_pairing,
    side_vector,
)
from .surface import PolygonSurface, SimplicialMap, reflection_map, rotation_map
from .closed import project, run_stages, symmetry_stages, twist_stages
from .triangulation import compile_moves, run_compiled
from .twist import TwistSpec, max_bits, twist_moves


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Letter:
    kind: str  # one of r R t q T
    name: str | None = None
    sign: int = 1

    def inverse(self) -> "Letter":
        if self.kind == "r":
            return Letter("R")
        if self.kind == "R":
            return Letter("r")
        if self.kind == "T":
            return Letter("T", self.name, -self.sign)
        return self  # t and q are involutions

    def __str__(self) -> str:
        if self.kind == "T":
            return f"T{'' if self.sign > 0 else chr(39)}[{self.name}]"
        return self.kind


_TOKEN = re.compile(r"T('?)\[([A-Za-z0-9_]+)\]")


def parse_word(text: str) -> "MCWord":
    letters = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "rRtq":
            letters.append(Letter(ch))
            i += 1
        elif ch == "T":
            m = _TOKEN.match(text, i)
            if not m:
                raise WordParseError("malformed twist letter", i + 1)
            letters.append(Letter("T", m.group(2), -1 if m.group(1) else 1))
            i = m.end()
        else:
            raise WordParseError(f"unexpected character {ch!r}", i + 1)
    return MCWord(tuple(letters))


@dataclass(frozen=True)
class MCWord:
    letters: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "MCWord":
        return parse_word(text)

    @classmethod
    def twist(cls, name: str, sign: int = 1) -> "MCWord":
        return cls((Letter("T", name, sign),))

    def __str__(self) -> str:
        return "".join(map(str, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "MCWord") -> "MCWord":
        return MCWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "MCWord":
        base = self if k >= 0 else self.inverse()
        return MCWord(base.letters * abs(k))

    def inverse(self) -> "MCWord":
        return MCWord(tuple(x.inverse() for x in reversed(self.letters)))

    @property
    def character(self) -> int:
        flips = sum(1 for x in self.letters if x.kind in "tq")
        return -1 if flips % 2 else 1

    def alphabet(self) -> set[str]:
        return {x.kind for x in self.letters}


def rotation_word(k: int) -> MCWord:
    return MCWord((Letter("r" if k > 0 else "R"),) * abs(k))


def free_reduce(w: MCWord) -> MCWord:
    stack: list[Letter] = []
    for x in w.letters:
        if stack and stack[-1] == x.inverse():
            stack.pop()
        else:
            stack.append(x)
    return MCWord(tuple(stack))


def reduce_rotations(w: MCWord, order: int) -> MCWord:
    """Free reduction that also shortens rotation runs modulo ``order``."""
    out: list[Letter] = []
    run = 0

    def flush():
        nonlocal run
        k = run % order
        if k > order // 2:
            k -= order
        out.extend(rotation_word(k).letters)
        run = 0

    for x in free_reduce(w).letters:
        if x.kind in "rR":
            run += 1 if x.kind == "r" else -1
            continue
        flush()
        if out and out[-1] == x.inverse():
            out.pop()
            # a cancellation may expose a rotation run to merge with
            while out and out[-1].kind in "rR":
                y = out.pop()
                run += 1 if y.kind == "r" else -1
        else:
            out.append(x)
    flush()
    return free_reduce(MCWord(tuple(out)))


# -- structured words ----------------------------------------------------------


class Expr:
    """A word kept as a tree of products and inverses.

    Proofs compose the same pieces (conjugates of verified elements, pair
    elements reused across steps) many times over; keeping the structure
    lets the evaluator cache the action of each piece on each curve.
    ``flat()`` gives the plain word.
    """

    __slots__ = ("kind", "parts", "_flat", "_inv")

    def __init__(self, kind: str, parts: tuple):
        self.kind = kind  # "w" plain word, "p" product, "i" inverse
        self.parts = parts
        self._flat = None
        self._inv = None

    def flat(self) -> MCWord:
        if self._flat is None:
            if self.kind == "w":
                self._flat = self.parts[0]
            elif self.kind == "p":
                self._flat = MCWord(tuple(x for p in self.parts for x in p.flat().letters))
            else:
                self._flat = self.parts[0].flat().inverse()
        return self._flat

    @property
    def character(self) -> int:
        return self.flat().character

    def __len__(self) -> int:
        return len(self.flat())

    def inverse(self) -> "Expr":
        if self._inv is None:
            if self.kind == "i":
                self._inv = self.parts[0]
            else:
                self._inv = Expr("i", (self,))
                self._inv._inv = self
        return self._inv

    def __mul__(self, other: "Expr") -> "Expr":
        return prod(self, other)


def leaf(w) -> Expr:
    if isinstance(w, str):
        w = parse_word(w)
    return Expr("w", (w,))


def prod(*parts: Expr) -> Expr:
    return Expr("p", tuple(parts))


def conj(k: int, e: Expr) -> Expr:
    """``sigma^k e sigma^-k``."""
    return prod(leaf(rotation_word(k)), e, leaf(rotation_word(-k)))


# -- registry ----------------------------------------------------------------


def _solve(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int]:
    """Exact solution of a unimodular integer system."""
    n = len(matrix)
    m = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    out = [m[i][n] for i in range(n)]
    if any(v.denominator != 1 for v in out):
        raise ArithmeticError("pairing matrix is not unimodular on this input")
    return [int(v) for v in out]


class CurveRegistry:
    """Named curves on one surface plus the homology basis ``a1 .. a2g``.

    ``a<i>`` is indexed mod ``2g+1`` and ``b<j>`` mod ``4g+2``.
    """

    def __init__(self, surface: PolygonSurface, a0: NormalCurve, b0: NormalCurve):
        self.surface = surface
        self.genus = g = surface.genus
        self.sigma = rotation_map(surface)
        self.tau = reflection_map(surface)
        self.curves: dict[str, NormalCurve] = {}
        w = a0.weights
        for i in range(2 * g + 1):
            self.curves[f"a{i}"] = NormalCurve(g, w)
            w = self.sigma.apply_weights(w)
        self.a_period_ok = w == a0.weights
        w = b0.weights
        for j in range(4 * g + 2):
            self.curves[f"b{j}"] = NormalCurve(g, w)
            w = self.sigma.apply_weights(w)
        self.b_period_ok = w == b0.weights
        self._basis_vectors = [homology_vector(self.a(i)) for i in range(1, 2 * g + 1)]
        self.J = [[side_pairing(u, v) for v in self._basis_vectors] for u in self._basis_vectors]
        self._JT = [list(col) for col in zip(*self.J)]

    # names
    def a(self, i: int) -> NormalCurve:
        return self.curves[f"a{i % (2 * self.genus + 1)}"]

    def b(self, j: int) -> NormalCurve:
        return self.curves[f"b{j % (4 * self.genus + 2)}"]

    def resolve(self, name: str) -> NormalCurve:
        m = re.fullmatch(r"([ab])(-?\d+)", name)
        if m:
            k = int(m.group(2))
            return self.a(k) if m.group(1) == "a" else self.b(k)
        try:
            return self.curves[name]
        except KeyError:
            raise KeyError(f"unknown curve {name!r}") from None

    def add(self, name: str, c: NormalCurve) -> None:
        if re.fullmatch(r"[ab]-?\d+", name):
            raise ValueError(f"{name!r} is reserved for the orbit curves")
        self.curves[name] = c

    def filling_family(self) -> list[tuple[str, NormalCurve]]:
        g = self.genus
        return [(f"a{i}", self.a(i)) for i in range(2 * g + 1)] + [
            (f"b{j}", self.b(j)) for j in range(4 * g + 2)
        ]

    # homology
    def class_of_vector(self, v: Sequence[int]) -> list[int]:
        m = [side_pairing(v, u) for u in self._basis_vectors]
        return _solve(self._JT, m)

    def homology_class(self, c: NormalCurve) -> list[int]:
        return self.class_of_vector(homology_vector(c))

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        n = len(x)
        return sum(x[i] * self.J[i][k] * y[k] for i in range(n) for k in range(n))

    def map_matrix(self, m: SimplicialMap) -> list[list[int]]:
        cols = []
        for i in range(1, 2 * self.genus + 1):
            walk = m.apply_walk(oriented_walk(self.a(i)))
            cols.append(self.class_of_vector(side_vector(self.surface, walk)))
        return [list(r) for r in zip(*cols)]

    def twist_matrix(self, c: NormalCurve, sign: int) -> list[list[int]]:
        """Transvection ``v -> v + sign * <c, v> c``.

        The direction matches the homology classes of curves actually
        twisted by the fast path (pinned by the test suite)."""
        x = self.homology_class(c)
        n = len(x)
        cols = []
        for k in range(n):
            e = [int(i == k) for i in range(n)]
            p = self.pairing(e, x)
            cols.append([e[i] - sign * p * x[i] for i in range(n)])
        return [list(r) for r in zip(*cols)]


# -- actions -----------------------------------------------------------------


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def identity_matrix(n: int) -> list[list[int]]:
    return [[int(i == k) for k in range(n)] for i in range(n)]


@dataclass
class HomologyAction:
    matrix: list
    character: int

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, v)) for row in self.matrix]

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(len(self.matrix))

    def preserves_form(self, J) -> bool:
        MT = [list(r) for r in zip(*self.matrix)]
        lhs = _matmul(_matmul(MT, J), self.matrix)
        return lhs == [[self.character * v for v in row] for row in J]


class WordEvaluator:
    """Evaluates words on curves and decides identity.

    Per-letter data (compiled twist moves, permutations, homology
    matrices) is cached by the weights of the curves involved, so renaming
    or re-registering a curve never serves stale data.
    """

    def __init__(self, registry: CurveRegistry):
        self.reg = registry
        self._matrices: dict = {}
        self._ops: dict = {}
        self._memo: dict = {}
        self._hom: dict = {}
        self._alive: dict = {}  # keeps memoized expressions (and their ids) alive
        sig, tau = registry.sigma, registry.tau
        n = registry.surface.num_edges
        self._perm = {
            "r": _gather(sig.edge_permutation, n),
            "R": tuple(sig.edge_permutation),
            "t": _gather(tau.edge_permutation, n),
        }

    def _twist(self, name: str, sign: int):
        return twist_moves(TwistSpec(self.reg.resolve(name), sign))

    def _letter_ops(self, x: Letter):
        """``(compiled moves, gather permutation or None)`` for a letter;
        the moves run first."""
        if x.kind in "rRt":
            return (), self._perm[x.kind]
        if x.kind == "q":
            key = ("q", self.reg.b(0).weights)
        else:
            key = ("T", self.reg.resolve(x.name).weights, x.sign)
        ops = self._ops.get(key)
        if ops is None:
            if x.kind == "q":
                ops = (compile_moves(self._twist("b0", 1)), self._perm["t"])
            else:
                ops = (compile_moves(self._twist(x.name, x.sign)), None)
            self._ops[key] = ops
        return ops

    def apply_letter(self, x: Letter, w: tuple, cap: int) -> tuple:
        return self.evaluate_weights(MCWord((x,)), w, cap)

    def evaluate_weights(self, word: MCWord, w: tuple, cap: int | None = None) -> tuple:
        cap = max_bits() if cap is None else cap
        cur = list(w)
        for x in reversed(word.letters):
            moves, perm = self._letter_ops(x)
            if moves:
                run_compiled(moves, cur)
                if max(cur).bit_length() > cap:
                    raise OverflowError(f"coordinate exceeds {cap} bits")
            if perm is not None:
                cur = [cur[i] for i in perm]
        return tuple(cur)

    def evaluate(self, word: MCWord, c: NormalCurve) -> NormalCurve:
        if c.genus != self.reg.genus:
            raise CurveError("curve lives on a different surface")
        return NormalCurve(c.genus, self.evaluate_weights(word, c.weights))

    def letter_matrix(self, x: Letter):
        reg = self.reg
        if x.kind == "T":
            key = ("T", reg.resolve(x.name).weights, x.sign)
        else:
            key = (x.kind, reg.b(0).weights if x.kind == "q" else None)
        if key not in self._matrices:
            if x.kind == "r":
                M = reg.map_matrix(reg.sigma)
            elif x.kind == "R":
                M = reg.map_matrix(reg.sigma.inverse())
            elif x.kind == "t":
                M = reg.map_matrix(reg.tau)
            elif x.kind == "q":
                M = _matmul(reg.map_matrix(reg.tau), reg.twist_matrix(reg.b(0), 1))
            else:
                M = reg.twist_matrix(reg.resolve(x.name), x.sign)
            self._matrices[key] = M
        return self._matrices[key]

    def homology_action(self, word: MCWord) -> HomologyAction:
        M = identity_matrix(2 * self.reg.genus)
        for x in word.letters:
            M = _matmul(M, self.letter_matrix(x))
        return HomologyAction(M, word.character)

    # -- structured evaluation -------------------------------------------------
    #
    # Identity checks run on coordinates of the one-vertex chart (only the
    # center marked), which are canonical for the classes being compared.

    def _chart_stages(self, x: Letter) -> tuple:
        g = self.reg.genus
        if x.kind in "rRt":
            return symmetry_stages(g, x.kind)
        if x.kind == "q":
            return twist_stages(g, project(self.reg.b(0)), 1) + symmetry_stages(g, "t")
        return twist_stages(g, project(self.reg.resolve(x.name)), x.sign)

    def evaluate_chart(self, word: MCWord, w: tuple, cap: int | None = None) -> tuple:
        """Action of a word on chart coordinates."""
        cap = max_bits() if cap is None else cap
        cur = list(w)
        for x in reversed(word.letters):
            cur = run_stages(self._chart_stages(x), cur)
            if x.kind in "qT" and max(cur).bit_length() > cap:
                raise OverflowError(f"coordinate exceeds {cap} bits")
        return tuple(cur)

    def evaluate_expr(self, e: "Expr", w: tuple, cap: int | None = None) -> tuple:
        """Memoized action of a structured word on chart coordinates."""
        cap = max_bits() if cap is None else cap
        key = (id(e), w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self._alive[id(e)] = e
        if e.kind == "w":
            out = self.evaluate_chart(e.parts[0], w, cap)
        elif e.kind == "p":
            out = w
            for p in reversed(e.parts):
                out = self.evaluate_expr(p, out, cap)
        else:
            c = e.parts[0]
            if c.kind == "w":
                out = self.evaluate_chart(c.parts[0].inverse(), w, cap)
            else:  # inverse of a product: inverses of the parts, first part first
                out = w
                for p in c.parts:
                    out = self.evaluate_expr(p.inverse(), out, cap)
        self._memo[key] = out
        return out

    def expr_homology(self, e: "Expr") -> list:
        hit = self._hom.get(id(e))
        if hit is not None:
            return hit
        self._alive[id(e)] = e
        n = 2 * self.reg.genus
        if e.kind == "w":
            M = self.homology_action(e.parts[0]).matrix
        elif e.kind == "p":
            M = identity_matrix(n)
            for p in e.parts:
                M = _matmul(M, self.expr_homology(p))
        else:
            c = e.parts[0]
            if c.kind == "w":
                M = self.homology_action(c.parts[0].inverse()).matrix
            else:
                M = identity_matrix(n)
                for p in reversed(c.parts):
                    M = _matmul(M, self.expr_homology(p.inverse()))
        self._hom[id(e)] = M
        return M

    def is_identity(self, word, curves: Iterable | None = None) -> "IdentityVerdict":
        """Identity criterion for a word.

        The orientation character is compared first.  Then every curve of
        the filling family must come back to its own class once the corner
        points are forgotten, and finally the action on homology must be
        trivial; a moved curve makes the more informative witness, which
        is why it is looked for before the homology.  A class fixing a filling chain-and-dual family and
        acting trivially on homology is the identity (Alexander method;
        the homology check rules out the finite-order ambiguities such as
        the hyperelliptic involution).
        """
        return self.equal(word, MCWord(), curves)

    def equal(self, w1, w2, curves: Iterable | None = None) -> "IdentityVerdict":
        """Whether two words define the same class.

        Equivalent to the identity criterion for ``w2^-1 w1``: characters
        must agree, each family curve must have the same image class under
        both, and so must the homology actions.
        """
        x, y = _as_expr(w1), _as_expr(w2)
        if x.character != y.character:
            return IdentityVerdict(False, "character -1")
        family = list(curves) if curves is not None else self.reg.filling_family()
        for name, c in family:
            w = project(c)
            if self.evaluate_expr(x, w) != self.evaluate_expr(y, w):
                return IdentityVerdict(False, f"curve {name} moved", moved=name)
        if self.expr_homology(x) != self.expr_homology(y):
            return IdentityVerdict(False, "homology matrix != I")
        return IdentityVerdict(True, "all checks passed")

    def clear_cache(self) -> None:
        self._memo.clear()
        self._alive.clear()
        self._hom.clear()


def _as_expr(w) -> "Expr":
    if isinstance(w, Expr):
        return w
    if isinstance(w, str):
        w = parse_word(w)
    return Expr("w", (w,))


def _gather(perm: Sequence[int], n: int) -> tuple[int, ...]:
    """Turn a scatter permutation (``out[perm[e]] = w[e]``) into a gather."""
    inv = [0] * n
    for e, p in enumerate(perm):
        inv[p] = e
    return tuple(inv)


@dataclass
class IdentityVerdict:
    identity: bool
    witness: str
    moved: str | None = field(default=None)

    def __bool__(self) -> bool:
        return self.identity

    def as_dict(self) -> dict:
        out = {"verdict": "identity" if self.identity else "not-identity", "witness": self.witness}
        return out
