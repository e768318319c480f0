"""Small exact matrix routines over Q or a cyclotomic field.

Matrices are lists of rows; entries are CycloNumber (ints and Fractions are
promoted).
"""
from __future__ import annotations

from .cyclo import CycloNumber, ZERO, ONE, as_cyclo

Matrix = list


def to_exact(rows) -> Matrix:
    return [[as_cyclo(c) for c in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} * {rb}x{cb}")
    bt = transpose(b) if b else []
    out = []
    for row in a:
        new = []
        for col in bt:
            s = ZERO
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    s = s + x * y
            new.append(s)
        out.append(new if cb else [])
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError("shape mismatch in addition")
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError("shape mismatch in subtraction")
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = as_cyclo(c)
    return [[x * c for x in row] for row in a]


def is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def trace(a: Matrix) -> CycloNumber:
    s = ZERO
    for i in range(len(a)):
        s = s + a[i][i]
    return s


def rank(a: Matrix) -> int:
    """Bareiss fraction-free elimination; divisions are exact."""
    m = [list(row) for row in a]
    rows, cols = shape(m)
    r = 0
    prev = ONE
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            for j in range(c + 1, cols):
                m[i][j] = (piv * m[i][j] - mic * m[r][j]) / prev
            m[i][c] = ZERO
        prev = piv
        r += 1
    return r


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    m = [list(row) for row in a]
    rows, cols = shape(m)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


class SingularSystem(ValueError):
    pass


def solve(a: Matrix, b: list, unique: bool = True) -> list:
    """Solve a x = b exactly; raise SingularSystem if inconsistent (or not unique)."""
    rows, cols = shape(a)
    aug = [list(row) + [as_cyclo(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        raise SingularSystem("inconsistent linear system")
    if unique and len(pivots) < cols:
        raise SingularSystem(f"solution not unique ({cols - len(pivots)} free parameters)")
    x = [ZERO] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def nullspace(a: Matrix) -> list[list]:
    rows, cols = shape(a)
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * cols
        vec[f] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -red[r][f]
        basis.append(vec)
    return basis


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularSystem("matrix is singular")
    return [row[n:] for row in red]


def column_basis(a: Matrix) -> Matrix:
    """Columns of a spanning its column space, as a matrix (possibly 0 columns)."""
    rows, cols = shape(a)
    if cols == 0:
        return [[] for _ in range(rows)]
    _, pivots = rref(a)
    return [[row[c] for c in pivots] for row in a]


def hstack(*mats: Matrix) -> Matrix:
    rows = len(mats[0])
    return [sum((list(m[i]) for m in mats), []) for i in range(rows)]


def vstack(*mats: Matrix) -> Matrix:
    out = []
    for m in mats:
        out.extend(list(r) for r in m)
    return out
