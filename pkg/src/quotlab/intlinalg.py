"""Exact integer linear algebra over finite abelian groups.

Everything here rests on one primitive, the Smith normal form with tracked
unimodular transforms.  From it we get

* :class:`Cokernel` -- ``Z^n / L`` for a full-rank lattice ``L`` together with
  an explicit isomorphism onto ``Z/d_1 + ... + Z/d_r``;
* :class:`Congruence` -- kernel and particular solutions of ``x A = v`` where
  column ``j`` is read modulo ``h_j``;
* :class:`Subgroup` -- a subgroup of ``Z/g_1 + ... + Z/g_n`` given by
  generators, re-expressed on a direct-sum basis.

Matrices are plain lists of lists of Python ints, so nothing overflows.
"""

from __future__ import annotations

from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Sequence

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def vecmat(x: Sequence[int], M: Sequence[Sequence[int]], ncols: int) -> list[int]:
    out = [0] * ncols
    for xi, row in zip(x, M):
        if xi:
            for j in range(ncols):
                out[j] += xi * row[j]
    return out


class SmithForm:
    """Diagonalisation ``U A V = D`` with ``d_1 | d_2 | ... | d_r``, all ``d_i > 0``.

    ``U`` is tracked only when ``left=True``; ``V`` and its inverse only when
    ``right=True``.
    """

    def __init__(self, A: Sequence[Sequence[int]], nrows: int, ncols: int,
                 *, left: bool = False, right: bool = False):
        M = [list(map(int, r)) for r in A]
        assert len(M) == nrows and all(len(r) == ncols for r in M)
        U = identity(nrows) if left else None
        V = identity(ncols) if right else None
        Vi = identity(ncols) if right else None

        def row_add(i, k, c):  # row_i += c * row_k
            ri, rk = M[i], M[k]
            for j in range(ncols):
                if rk[j]:
                    ri[j] += c * rk[j]
            if U is not None:
                ui, uk = U[i], U[k]
                for j in range(nrows):
                    if uk[j]:
                        ui[j] += c * uk[j]

        def row_swap(i, k):
            M[i], M[k] = M[k], M[i]
            if U is not None:
                U[i], U[k] = U[k], U[i]

        def col_add(j, k, c):  # col_j += c * col_k
            for r in M:
                if r[k]:
                    r[j] += c * r[k]
            if V is not None:
                for r in V:
                    if r[k]:
                        r[j] += c * r[k]
                vj, vk = Vi[j], Vi[k]
                for m in range(ncols):
                    if vj[m]:
                        vk[m] -= c * vj[m]

        def col_swap(j, k):
            for r in M:
                r[j], r[k] = r[k], r[j]
            if V is not None:
                for r in V:
                    r[j], r[k] = r[k], r[j]
                Vi[j], Vi[k] = Vi[k], Vi[j]

        diag: list[int] = []
        t = 0
        while t < min(nrows, ncols):
            best = None
            for i in range(t, nrows):
                row = M[i]
                for j in range(t, ncols):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            row_swap(t, i)
            col_swap(t, j)
            while True:
                p = M[t][t]
                dirty = False
                for i in range(t + 1, nrows):
                    if M[i][t]:
                        row_add(i, t, -(M[i][t] // p))
                        dirty = dirty or M[i][t] != 0
                for j in range(t + 1, ncols):
                    if M[t][j]:
                        col_add(j, t, -(M[t][j] // p))
                        dirty = dirty or M[t][j] != 0
                if dirty:
                    cands = [(abs(M[i][t]), i, t) for i in range(t + 1, nrows) if M[i][t]]
                    cands += [(abs(M[t][j]), t, j) for j in range(t + 1, ncols) if M[t][j]]
                    _, i, j = min(cands)
                    if j == t:
                        row_swap(t, i)
                    else:
                        col_swap(t, j)
                    continue
                if p == 1:
                    break
                bad = next((i for i in range(t + 1, nrows)
                            if any(v % p for v in M[i][t + 1:])), None)
                if bad is None:
                    break
                row_add(t, bad, 1)
            if M[t][t] < 0:
                M[t] = [-v for v in M[t]]
                if U is not None:
                    U[t] = [-v for v in U[t]]
            diag.append(M[t][t])
            t += 1

        self.diag = diag
        self.rank = len(diag)
        self.U, self.V, self.Vinv = U, V, Vi
        self.nrows, self.ncols = nrows, ncols


def lattice_basis_mod(rows: Iterable[Sequence[int]], n: int, exponent: int) -> Matrix:
    """Upper-triangular basis of ``span(rows) + exponent * Z^n``.

    Entries right of each pivot are kept reduced modulo ``exponent``, which is
    legitimate because the lattice contains ``exponent * Z^n``.
    """
    E = exponent
    basis = [[E if i == j else 0 for j in range(n)] for i in range(n)]
    for v in rows:
        v = [x % E for x in v]
        for c in range(n):
            a = v[c]
            if a == 0:
                continue
            b = basis[c]
            p = b[c]
            if a % p == 0:
                q = a // p
                v = [0] * (c + 1) + [(v[j] - q * b[j]) % E for j in range(c + 1, n)]
                continue
            g, s, t = xgcd(p, a)
            ap, pp = a // g, p // g
            new = [0] * c + [g] + [(s * b[j] + t * v[j]) % E for j in range(c + 1, n)]
            v = [0] * (c + 1) + [(ap * b[j] - pp * v[j]) % E for j in range(c + 1, n)]
            basis[c] = new
    return basis


class Cokernel:
    """The finite group ``Z^n / L`` where ``L`` is spanned by ``relations``.

    ``exponent`` must kill the quotient, i.e. ``exponent * Z^n`` must lie in
    ``L``; callers pass the lcm of the generator orders.
    """

    def __init__(self, relations: Iterable[Sequence[int]], n: int, exponent: int):
        self.n = n
        H = lattice_basis_mod(relations, n, max(exponent, 1))
        sf = SmithForm(H, n, n, right=True)
        keep = [i for i, d in enumerate(sf.diag) if d > 1]
        assert sf.rank == n, "relations do not span a full-rank lattice"
        self.invariants = tuple(sf.diag[i] for i in keep)
        # x -> x V, then coordinate i modulo d_i
        self._cols = [[sf.V[k][i] for k in range(n)] for i in keep]
        self._lifts = [list(sf.Vinv[i]) for i in keep]

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(x, col) if a) % d
                     for col, d in zip(self._cols, self.invariants))

    def lift(self, i: int) -> list[int]:
        return list(self._lifts[i])


class Congruence:
    """The system ``x A = v`` where column ``j`` is read modulo ``moduli[j]``.

    ``A`` has one row per unknown.  Unknowns range over ``Z``.
    """

    def __init__(self, A: Sequence[Sequence[int]], nvars: int, moduli: Sequence[int]):
        self.nvars = nvars
        self.moduli = tuple(moduli)
        q = len(self.moduli)
        E = lcm(*self.moduli) if q else 1
        self.E = E
        scale = [E // h for h in self.moduli]
        C = [[(row[j] * scale[j]) % E for j in range(q)] for row in A]
        self._scale = scale
        self._sf = SmithForm(C, nvars, q, left=True, right=True)

    def kernel_basis(self) -> Matrix:
        """Rows spanning ``{x in Z^p : x A = 0}`` (a full-rank lattice)."""
        sf, E = self._sf, self.E
        out = []
        for i in range(self.nvars):
            if i < sf.rank:
                f = E // gcd(E, sf.diag[i])
                out.append([f * u for u in sf.U[i]])
            else:
                out.append(list(sf.U[i]))
        return out

    def solve(self, v: Sequence[int]) -> list[int] | None:
        """One integer solution of ``x A = v``, or ``None``."""
        sf, E = self._sf, self.E
        q = len(self.moduli)
        w = [(v[j] * self._scale[j]) % E for j in range(q)]
        w = [x % E for x in vecmat(w, sf.V, q)] if q else []
        z = [0] * self.nvars
        for i in range(q):
            if i < sf.rank:
                d = sf.diag[i]
                g = gcd(d, E)
                if w[i] % g:
                    return None
                m = E // g
                z[i] = (w[i] // g) * pow(d // g, -1, m) % m if m > 1 else 0
            elif w[i]:
                return None
        return vecmat(z, sf.U, self.nvars)


class Subgroup:
    """Subgroup of ``G = Z/g_1 + ... + Z/g_n`` generated by ``gens``.

    ``basis`` is a list of elements of ``G`` and ``orders`` their orders, such
    that the subgroup is the internal direct sum of the cyclic groups they
    generate.  ``coords`` inverts that decomposition.
    """

    def __init__(self, gens: Sequence[Sequence[int]], moduli: Sequence[int]):
        self.moduli = tuple(moduli)
        n = len(self.moduli)
        gens = [[x % m for x, m in zip(g, self.moduli)] for g in gens]
        gens = [g for g in gens if any(g)]
        self.gens = gens
        s = len(gens)
        self._solver = Congruence(gens, s, self.moduli)
        E = lcm(*self.moduli) if n else 1
        self._quot = Cokernel(self._solver.kernel_basis(), s, E)
        self.orders = self._quot.invariants
        self.basis = []
        for i in range(len(self.orders)):
            w = self._quot.lift(i)
            self.basis.append(tuple(x % m for x, m in zip(vecmat(w, gens, n), self.moduli)))

    @property
    def order(self) -> int:
        return prod(self.orders)

    def coords(self, v: Sequence[int]) -> tuple[int, ...]:
        x = self._solver.solve(v)
        if x is None:
            raise ValueError("element not in subgroup")
        return self._quot.coords(x)

    def contains(self, v: Sequence[int]) -> bool:
        return self._solver.solve(v) is not None

    def combine(self, c: Sequence[int]) -> tuple[int, ...]:
        n = len(self.moduli)
        out = vecmat(c, self.basis, n)
        return tuple(x % m for x, m in zip(out, self.moduli))

    def elements(self) -> list[tuple[int, ...]]:
        return [self.combine(c) for c in product(*(range(d) for d in self.orders))]
