"""Built-in ring constructors and a small expression language for them.

Expressions::

    Z/4   Z_4   F_2   F3
    M2(F_2)   M_3(Z/4)   T2(F_3)
    F_2 x F_3          (also written with the multiplication sign)
    F_2[x]/(x^2)       truncated polynomials
    F_2[C_2]           group ring of a cyclic group
    Path(F_2; 3; a:1->2, b:2->3; a*b)
                       path algebra: field; vertex count; arrows; zero relations
"""

from __future__ import annotations

from itertools import product as iproduct

from .errors import ParseError
from .rings import FiniteRing, validate_ring


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def cyclic(n: int) -> FiniteRing:
    return validate_ring({"name": f"Z/{n}", "moduli": [n], "mul": [[[1]]], "unit": [1]})


def prime_field(p: int) -> FiniteRing:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    R = cyclic(p)
    return FiniteRing(R.moduli, R.mul, R.unit, f"F_{p}")


def direct_product(*factors: FiniteRing) -> FiniteRing:
    moduli, unit, offsets = [], [], []
    for A in factors:
        offsets.append(len(moduli))
        moduli += A.moduli
        unit += A.unit
    k = len(moduli)
    mul = [[[0] * k for _ in range(k)] for _ in range(k)]
    for A, off in zip(factors, offsets):
        for i in range(A.rank):
            for j in range(A.rank):
                for l, c in enumerate(A.mul[i][j]):
                    mul[off + i][off + j][off + l] = c
    name = " x ".join(_wrap(A.name) for A in factors)
    return validate_ring({"name": name, "moduli": moduli, "mul": mul, "unit": unit})


def _wrap(name: str) -> str:
    return f"({name})" if " x " in name else name


def _matrix_like(n: int, base: FiniteRing, cells: list[tuple[int, int]], name: str) -> FiniteRing:
    kb = base.rank
    pos = {cell: t for t, cell in enumerate(cells)}
    k = len(cells) * kb
    moduli = [d for _ in cells for d in base.moduli]
    mul = [[[0] * k for _ in range(k)] for _ in range(k)]
    for (i, j), a in pos.items():
        for (p, q), b in pos.items():
            if j != p:
                continue
            c = pos[(i, q)]
            for l in range(kb):
                for m in range(kb):
                    for r, v in enumerate(base.mul[l][m]):
                        mul[a * kb + l][b * kb + m][c * kb + r] = v
    unit = [0] * k
    for i in range(n):
        for l, v in enumerate(base.unit):
            unit[pos[(i, i)] * kb + l] = v
    return validate_ring({"name": name, "moduli": moduli, "mul": mul, "unit": unit})


def matrix_ring(n: int, base: FiniteRing) -> FiniteRing:
    cells = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_like(n, base, cells, f"M{n}({base.name})")


def upper_triangular(n: int, base: FiniteRing) -> FiniteRing:
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    return _matrix_like(n, base, cells, f"T{n}({base.name})")


def _monomial_ring(base: FiniteRing, m: int, reduce, name: str) -> FiniteRing:
    kb = base.rank
    k = m * kb
    moduli = list(base.moduli) * m
    mul = [[[0] * k for _ in range(k)] for _ in range(k)]
    for a, c in iproduct(range(m), repeat=2):
        e = reduce(a + c)
        if e is None:
            continue
        for l in range(kb):
            for q in range(kb):
                for r, v in enumerate(base.mul[l][q]):
                    mul[a * kb + l][c * kb + q][e * kb + r] = v
    unit = list(base.unit) + [0] * (k - kb)
    return validate_ring({"name": name, "moduli": moduli, "mul": mul, "unit": unit})


def truncated_polynomial(base: FiniteRing, m: int) -> FiniteRing:
    """``base[x]/(x^m)`` with ``x`` central."""
    return _monomial_ring(base, m, lambda e: e if e < m else None,
                          f"{base.name}[x]/(x^{m})")


def cyclic_group_ring(base: FiniteRing, n: int) -> FiniteRing:
    return _monomial_ring(base, n, lambda e: e % n, f"{base.name}[C_{n}]")


def path_algebra(p: int, vertices: int, arrows: list[tuple[str, int, int]],
                 zero_relations: list[tuple[str, ...]] = ()) -> FiniteRing:
    """Path algebra of an acyclic quiver over ``F_p`` modulo zero relations.

    Paths are words of arrows read left to right (``a*b`` means ``a`` then
    ``b``), and the product of two paths is their concatenation when the end
    of the first is the start of the second.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    src = {a: s for a, s, _ in arrows}
    tgt = {a: t for a, _, t in arrows}
    if len(src) != len(arrows):
        raise ValueError("duplicate arrow names")
    rels = [tuple(r) for r in zero_relations]

    def killed(word):
        return any(word[i:i + len(r)] == r for r in rels for i in range(len(word) - len(r) + 1))

    paths: list[tuple] = [("e", v) for v in range(1, vertices + 1)]
    frontier = [(a,) for a, _, _ in arrows if not killed((a,))]
    while frontier:
        if any(len(w) > len(arrows) for w in frontier):
            raise ValueError("quiver has an oriented cycle")
        paths += frontier
        frontier = [w + (a,) for w in frontier for a, s, _ in arrows
                    if s == tgt[w[-1]] and not killed(w + (a,))]
    index = {w: i for i, w in enumerate(paths)}

    def ends(w):
        return (w[1], w[1]) if w[0] == "e" else (src[w[0]], tgt[w[-1]])

    k = len(paths)
    mul = [[[0] * k for _ in range(k)] for _ in range(k)]
    for u in paths:
        for w in paths:
            (_, tu), (sw, _) = ends(u), ends(w)
            if tu != sw:
                continue
            if u[0] == "e":
                prod = w
            elif w[0] == "e":
                prod = u
            else:
                prod = u + w
                if killed(prod):
                    continue
            mul[index[u]][index[w]][index[prod]] = 1
    unit = [1] * vertices + [0] * (k - vertices)
    arr = ", ".join(f"{a}:{s}->{t}" for a, s, t in arrows)
    rel = ", ".join("*".join(r) for r in rels)
    name = f"Path(F_{p}; {vertices}; {arr}" + (f"; {rel})" if rels else ")")
    return validate_ring({"name": name, "moduli": [p] * k, "mul": mul, "unit": unit})


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def error(self, msg):
        raise ParseError(msg, location=f"column {self.i + 1} of {self.s!r}")

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, lit: str) -> bool:
        self.ws()
        return self.s.startswith(lit, self.i)

    def eat(self, lit: str):
        if not self.peek(lit):
            self.error(f"expected {lit!r}")
        self.i += len(lit)

    def int(self) -> int:
        self.ws()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected an integer")
        v = int(self.s[self.i:j])
        self.i = j
        return v

    def expr(self) -> FiniteRing:
        factors = [self.term()]
        while self.peek("x") or self.peek("×"):
            self.i += 1
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else direct_product(*factors)

    def term(self) -> FiniteRing:
        R = self.atom()
        while True:
            if self.peek("[x]"):
                self.eat("[x]")
                self.eat("/")
                self.eat("(")
                self.eat("x")
                self.eat("^")
                m = self.int()
                self.eat(")")
                R = truncated_polynomial(R, m)
            elif self.peek("[C_"):
                self.eat("[C_")
                n = self.int()
                self.eat("]")
                R = cyclic_group_ring(R, n)
            else:
                return R

    def atom(self) -> FiniteRing:
        if self.peek("("):
            self.eat("(")
            R = self.expr()
            self.eat(")")
            return R
        if self.peek("Path("):
            return self.path()
        if self.peek("Z"):
            self.eat("Z")
            if self.peek("/") or self.peek("_"):
                self.i += 1
            return cyclic(self.int())
        if self.peek("F"):
            self.eat("F")
            if self.peek("_"):
                self.i += 1
            p = self.int()
            if not _is_prime(p):
                self.error(f"F_{p}: only prime fields are built in")
            return prime_field(p)
        for head, ctor in (("M", matrix_ring), ("T", upper_triangular)):
            if self.peek(head):
                self.eat(head)
                if self.peek("_"):
                    self.i += 1
                n = self.int()
                self.eat("(")
                R = self.expr()
                self.eat(")")
                return ctor(n, R)
        self.error("unknown ring expression")

    def path(self) -> FiniteRing:
        self.eat("Path(")
        j = self.s.index(")", self.i) if ")" in self.s[self.i:] else self.error("unclosed Path(")
        body = self.s[self.i:j]
        self.i = j + 1
        parts = [p.strip() for p in body.split(";")]
        if len(parts) not in (3, 4):
            self.error("Path(field; vertices; arrows[; relations])")
        field = parts[0].lstrip("F").lstrip("_")
        try:
            p, n = int(field), int(parts[1])
            arrows = []
            for a in filter(None, (x.strip() for x in parts[2].split(","))):
                name, rest = a.split(":")
                s, t = rest.split("->")
                arrows.append((name.strip(), int(s), int(t)))
            rels = [tuple(x.strip() for x in r.split("*"))
                    for r in (parts[3].split(",") if len(parts) == 4 else []) if r.strip()]
        except ValueError as e:
            self.error(f"bad Path() body: {e}")
        return path_algebra(p, n, arrows, rels)


def parse_ring(text: str) -> FiniteRing:
    """Build a ring from a constructor expression such as ``"T2(F_3)"``."""
    p = _Parser(text)
    R = p.expr()
    p.ws()
    if p.i != len(p.s):
        p.error("trailing input")
    return R
