"""Character tables by the Dixon-Schneider method.

Central characters are the common eigenvectors of the class multiplication
matrices.  They are split over a prime field F_q with q = 1 mod exp(G), and
the resulting values mod q are lifted to exact cyclotomic numbers by
recovering eigenvalue multiplicities with a discrete Fourier transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Any

from .charfun import ClassFunction, inner_product, values_key
from .cyclotomic import CycNumber, Scalar
from .errors import CapExceeded, InternalError
from .groups import FiniteGroup
from .primes import is_prime, prime_factors

DEFAULT_CHARTABLE_CAP = 2000
DEFAULT_PRIME_BOUND = 1_000_000


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    irreducibles: tuple[ClassFunction, ...]
    conductor: int

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(chi.values[0]) for chi in self.irreducibles)

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.irreducibles[i]


def class_coefficients(G: FiniteGroup) -> list[list[list[int]]]:
    """c[i][j][k] = #{x in C_i : x^-1 z_k in C_j} for a fixed z_k in C_k."""
    classes = G.conjugacy_classes
    r = len(classes)
    cls_of, t, inv = G.class_of, G.table, G.inv
    c = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, ck in enumerate(classes):
        z = ck.representative
        for i, ci in enumerate(classes):
            row = c[i]
            for x in ci.members:
                row[cls_of[t[inv[x]][z]]][k] += 1
    return c


def choose_prime(G: FiniteGroup, bound: int = DEFAULT_PRIME_BOUND) -> int:
    """Least prime q = 1 mod exp(G) with q > 2 sqrt|G|."""
    e = G.exponent
    q = e + 1
    while q <= bound:
        if q * q > 4 * G.order and is_prime(q):
            return q
        q += e
    raise InternalError(f"no prime q = 1 mod {e} below {bound}")


def _primitive_root_of_unity(e: int, q: int) -> int:
    for a in range(2, q):
        z = pow(a, (q - 1) // e, q)
        if all(pow(z, e // p, q) != 1 for p in prime_factors(e)):
            return z
    if e == 1:
        return 1
    raise InternalError(f"no primitive {e}-th root of unity mod {q}")


def _rref(rows: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % q), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        s = pow(rows[rank][col], -1, q)
        rows[rank] = [(v * s) % q for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % q:
                f = rows[i][col]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _nullspace(A: list[list[int]], q: int) -> list[list[int]]:
    n = len(A[0])
    R, pivots = _rref(A, q)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(R, pivots):
            v[p] = (-row[f]) % q
        basis.append(v)
    return basis


def _split(spaces: list[list[list[int]]], M: list[list[int]], q: int) -> list[list[list[int]]]:
    """Refine each invariant subspace (rows = basis vectors) into eigenspaces of M."""
    r = len(M)
    out = []
    for B in spaces:
        if len(B) == 1:
            out.append(B)
            continue
        B, pivots = _rref(B, q)
        d = len(B)
        # matrix of M on span(B) in the basis B: image of b_j has coordinates at the pivots
        images = [[sum(M[i][k] * b[k] for k in range(r)) % q for i in range(r)] for b in B]
        A = [[images[j][pivots[i]] for j in range(d)] for i in range(d)]
        pieces = []
        for lam in range(q):
            shifted = [[(A[i][j] - (lam if i == j else 0)) % q for j in range(d)] for i in range(d)]
            null = _nullspace(shifted, q)
            if null:
                pieces.append([[sum(c * B[j][k] for j, c in enumerate(coords)) % q for k in range(r)] for coords in null])
            if sum(len(p) for p in pieces) == d:
                break
        if sum(len(p) for p in pieces) != d:
            raise InternalError("class matrix is not diagonalisable over the chosen field")
        out.extend(pieces)
    return out


def character_table(G: FiniteGroup, cap: int = DEFAULT_CHARTABLE_CAP, prime_bound: int = DEFAULT_PRIME_BOUND) -> CharacterTable:
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds character table cap {cap}")
    key = ("character_table",)
    if key in G._memo:
        return G._memo[key]
    classes = G.conjugacy_classes
    r = len(classes)
    q = choose_prime(G, prime_bound)
    coeff = class_coefficients(G)

    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        spaces = _split(spaces, [[x % q for x in row] for row in coeff[i]], q)
    if len(spaces) != r:
        raise InternalError("central characters did not separate")

    sizes = [c.size for c in classes]
    inv_cls = G.inverse_class
    e = G.exponent
    z = _primitive_root_of_unity(e, q)
    powers_cls = [[G.class_of[G.power(c.representative, l)] for l in range(e)] for c in classes]

    rows = []
    for (w,) in spaces:
        s = pow(w[0], -1, q)
        w = [(x * s) % q for x in w]
        denom = sum(w[k] * w[inv_cls[k]] * pow(sizes[k], -1, q) for k in range(r)) % q
        d2 = (G.order * pow(denom, -1, q)) % q
        d = next((d for d in range(1, isqrt(G.order) + 1) if (d * d - d2) % q == 0), None)
        if d is None:
            raise InternalError("no admissible degree for a central character")
        modq = [(d * w[k] * pow(sizes[k], -1, q)) % q for k in range(r)]
        values: list[Scalar] = []
        inv_e = pow(e, -1, q)
        for k in range(r):
            mults = []
            for j in range(e):
                m = sum(modq[powers_cls[k][l]] * pow(z, (-j * l) % e, q) for l in range(e)) * inv_e % q
                if m > d:
                    raise InternalError("eigenvalue multiplicity out of range")
                mults.append(m)
            values.append(CycNumber.from_exponents(e, mults))
        rows.append(ClassFunction(G, tuple(values)))

    rows.sort(key=lambda chi: _row_key(chi, e))
    tbl = CharacterTable(G, tuple(rows), e)
    G._memo[key] = tbl
    return tbl


def _row_key(chi: ClassFunction, e: int):
    trivial = all(v == 1 for v in chi.values)
    desc = tuple(tuple(-c for c in coeffs) for coeffs in values_key(chi, e))
    return (chi.values[0], not trivial, desc)


def check_orthogonality(tbl: CharacterTable) -> bool:
    """Row and column orthogonality, exactly."""
    G = tbl.group
    rows = tbl.irreducibles
    for i, a in enumerate(rows):
        for j, b in enumerate(rows):
            if inner_product(a, b) != (1 if i == j else 0):
                return False
    classes = G.conjugacy_classes
    for k, ck in enumerate(classes):
        for l in range(len(classes)):
            total: Scalar = Fraction(0)
            for chi in rows:
                total = total + chi.values[k] * chi.values[G.inverse_class[l]]
            expected = ck.centralizer_order if k == l else 0
            if total != expected:
                return False
    return sum(d * d for d in tbl.degrees) == G.order


# ---------------------------------------------------------------------------
# JSON


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def table_to_json(tbl: CharacterTable) -> dict[str, Any]:
    G = tbl.group
    e = tbl.conductor
    return {
        "group": G.name,
        "order": G.order,
        "conductor": e,
        "classes": [{"representative": str(G.elements[c.representative]), "size": c.size} for c in G.conjugacy_classes],
        "characters": [[[_frac(c) for c in v] for v in values_key(chi, e)] for chi in tbl.irreducibles],
    }


def table_from_json(G: FiniteGroup, data: dict[str, Any], verify: bool = True) -> CharacterTable:
    """Ingest a table in the :func:`table_to_json` layout (bypasses Dixon-Schneider)."""
    classes = G.conjugacy_classes
    reps = [c["representative"] for c in data["classes"]]
    if reps != [str(G.elements[c.representative]) for c in classes]:
        raise ValueError("class representatives do not match the group")
    e = int(data["conductor"])
    rows = []
    for row in data["characters"]:
        if len(row) != len(classes):
            raise ValueError("character row has the wrong length")
        rows.append(ClassFunction(G, tuple(CycNumber(e, [Fraction(c) for c in v]) for v in row)))
    tbl = CharacterTable(G, tuple(rows), e)
    if verify and not check_orthogonality(tbl):
        raise ValueError("ingested table fails orthogonality")
    return tbl
