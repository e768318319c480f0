"""Exceptional fiber combinatorics: Cartan data, fixed configurations, multiplicities."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .groups import GammaType
from .poly import Polynomial, XYZ, PolynomialError
from . import linalg

POINTWISE = "pointwise-fixed"
TWO_POINTS = "two-fixed-points"
SWAPPED = "swapped"


@dataclass(frozen=True)
class DynkinData:
    gamma: GammaType
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    cartan: tuple[tuple[int, ...], ...]
    cartan_inverse: tuple[tuple[Fraction, ...], ...]
    max_root: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbours(self, i: int) -> list[int]:
        return [b if a == i else a for a, b in self.edges if i in (a, b)]

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self.edges or (j, i) in self.edges


def _edges(gamma: GammaType):
    n, fam = gamma.n, gamma.family
    if fam == "A":
        return [(i, i + 1) for i in range(1, n)], (1,) * n
    if fam == "D":
        e = [(1, 2)] + [(i, i + 1) for i in range(2, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
        return e, (1,) + (2,) * (n - 3) + (1, 1)
    if fam == "E6":
        return [(1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], (2, 3, 2, 1, 2, 1)
    if fam == "E7":
        return [(i, i + 1) for i in range(1, 6)] + [(3, 7)], (2, 3, 4, 3, 2, 1, 2)
    return [(i, i + 1) for i in range(1, 7)] + [(5, 8)], (2, 3, 4, 5, 6, 4, 2, 3)


@lru_cache(maxsize=None)
def cartan(gamma: GammaType) -> DynkinData:
    edges, root = _edges(gamma)
    n = gamma.n
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    inv = linalg.inverse(linalg.to_exact(c))
    inv_q = tuple(tuple(x.to_fraction() for x in row) for row in inv)
    return DynkinData(gamma, tuple(range(1, n + 1)), tuple(edges), tuple(map(tuple, c)), inv_q, root)


# -- fixed point configurations ------------------------------------------------------

class ConfigurationError(ValueError):
    pass


class AmbiguousConfiguration(ConfigurationError):
    pass


@dataclass
class FixedPointConfiguration:
    status: dict[int, str]
    swapped_with: dict[int, int]
    isolated: list[tuple[int, ...]]   # each isolated point: the components it lies on

    def b_vector(self, n: int) -> list[int]:
        b = [0] * n
        for pt in self.isolated:
            for i in pt:
                b[i - 1] += 1
        return b

    def isolated_count(self) -> int:
        return len(self.isolated)


def _configuration(data: DynkinData, perm: dict, assignment: dict) -> FixedPointConfiguration | None:
    status = dict(assignment)
    swapped = {i: perm[i] for i in data.vertices if perm[i] != i}
    for i in swapped:
        status[i] = SWAPPED
    preserved = [i for i in data.vertices if i not in swapped]
    isolated = []
    for i in preserved:
        nb = data.neighbours(i)
        pres_nb = [j for j in nb if j not in swapped]
        if any(j in swapped for j in nb) and status[i] == POINTWISE:
            return None
        for j in pres_nb:
            if status[j] == status[i]:
                return None
        if status[i] == TWO_POINTS:
            free = 2 - len(pres_nb)
            if free < 0:
                return None
            isolated += [(i,)] * free
    for i, j in swapped.items():
        if i < j and data.adjacent(i, j):
            isolated.append((i, j))
    return FixedPointConfiguration(status, swapped, isolated)


def propagate_fixed(data: DynkinData, perm: dict, isolated_count: int, pinned: dict | None = None) -> FixedPointConfiguration:
    perm = {i: perm.get(i, i) for i in data.vertices}
    for i in data.vertices:
        if perm[perm[i]] != i:
            raise ConfigurationError("permutation is not an involution")
        for j in data.neighbours(i):
            if not data.adjacent(perm[i], perm[j]):
                raise ConfigurationError("permutation does not preserve the diagram")
    preserved = [i for i in data.vertices if perm[i] == i]
    pinned = pinned or {}
    found = []
    for choice in itertools.product((POINTWISE, TWO_POINTS), repeat=len(preserved)):
        assignment = dict(zip(preserved, choice))
        if any(assignment.get(k, v) != v for k, v in pinned.items()):
            continue
        cfg = _configuration(data, perm, assignment)
        if cfg is not None and cfg.isolated_count() == isolated_count:
            found.append(cfg)
    if not found:
        raise ConfigurationError("no consistent fixed-point configuration")
    if len(found) > 1:
        raise AmbiguousConfiguration(f"{len(found)} consistent configurations; b-vectors {[c.b_vector(data.n) for c in found]}")
    return found[0]


class NonIntegral(ValueError):
    pass


def solve_multiplicities(data: DynkinData, b: list[int], require_integral: bool = True) -> list:
    if any(x < 0 for x in b):
        raise ValueError("b must be non-negative")
    a = [sum(data.cartan_inverse[i][j] * b[j] for j in range(data.n)) for i in range(data.n)]
    if require_integral:
        if any(x.denominator != 1 for x in a):
            raise NonIntegral(f"C^-1 b = {[str(x) for x in a]} is not integral")
        return [int(x) for x in a]
    return a


# -- divisors -----------------------------------------------------------------------

@dataclass
class PreimageDivisor:
    gamma: GammaType
    case: str
    multiplicities: list[int]
    strict_transforms: list[tuple[str, tuple[int, ...]]]
    reduced: bool | None
    generically_reduced: bool
    status: dict[int, str] = field(default_factory=dict)
    b: list[int] = field(default_factory=list)
    principal: bool = True
    note: str = ""

    def as_dict(self) -> dict:
        comps = [
            {"name": f"C{i}", "multiplicity": a, "kind": "exceptional", "status": self.status.get(i, "")}
            for i, a in enumerate(self.multiplicities, start=1)
        ]
        comps += [{"name": name, "multiplicity": 1, "kind": "strict-transform", "status": POINTWISE}
                  for name, _ in self.strict_transforms]
        return {
            "type": _label(self.gamma),
            "case": self.case,
            "components": comps,
            "attachments": {name: [f"C{i}" for i in att] for name, att in self.strict_transforms},
            "b": list(self.b),
            "reduced": self.reduced,
            "generically_reduced": self.generically_reduced,
            "principal": self.principal,
            "note": self.note,
        }


def _label(gamma: GammaType) -> str:
    return gamma.label


def _isolated_count(gamma: GammaType, case: str) -> int:
    from .involutions import get_involution, fixed_locus
    inv = get_involution(gamma, case)
    if gamma.family == "A" and gamma.n % 2 and case == "III":
        return 0
    return len(fixed_locus(inv).components)


def z_divisor_b(n: int) -> list[int]:
    """div(z) on the A_n resolution: the two axes meet C1 and Cn."""
    b = [0] * n
    b[0] += 1
    b[-1] += 1
    return b


def divisor_description(gamma: GammaType, case: str) -> PreimageDivisor:
    from .involutions import get_involution, diagram_involution
    case = case.upper()
    inv = get_involution(gamma, case)    # KeyError on unknown case
    data = cartan(gamma)
    perm = diagram_involution(inv)
    n = gamma.n
    if gamma.family == "A" and n % 2 and case == "III":
        cfg = propagate_fixed(data, perm, 0)
        return PreimageDivisor(gamma, case, [1] * n, [], True, True, cfg.status, [0] * n, False,
                               "fixed locus is the origin; the preimage is the reduced exceptional fiber")
    pinned = None
    if gamma.family == "A" and n % 2 == 0 and case == "II":
        # the strict transform of the y-axis meets C1 (chart computation)
        pinned = {1: TWO_POINTS}
    cfg = propagate_fixed(data, perm, _isolated_count(gamma, case), pinned)
    b = cfg.b_vector(n)
    transforms = [(f"L{k}", pt) for k, pt in enumerate(cfg.isolated, start=1)]
    if pinned is not None:
        # non-principal: bounded above by div(z), which is the reduced fiber plus two lines
        a = solve_multiplicities(data, z_divisor_b(n))
        return PreimageDivisor(gamma, case, a, transforms, None, True, cfg.status, b, False,
                               "ideal is not principal; multiplicities bounded by div(z)")
    a = solve_multiplicities(data, b)
    reduced = all(x == 1 for x in a)
    return PreimageDivisor(gamma, case, a, transforms, reduced, reduced, cfg.status, b)


def closed_form(gamma: GammaType, case: str) -> list[int] | None:
    """Multiplicity vectors in closed form, per case."""
    n, fam, case = gamma.n, gamma.family, case.upper()
    if fam == "A":
        if case == "I":
            return [min(i, n + 1 - i) for i in range(1, n + 1)]
        return [1] * n
    if fam == "D":
        head = list(range(1, n - 1))
        if n % 2 == 0:
            if case == "I":
                return [i + 1 for i in head] + [n // 2, n // 2]
            return head + [(n - 2) // 2, (n - 2) // 2]
        if case == "I":
            return head + [(n - 1) // 2, (n - 1) // 2]
        return [i + 1 for i in head] + [(n - 1) // 2, (n - 1) // 2]
    return {
        ("E6", "I"): [2, 3, 2, 1, 2, 1],
        ("E6", "II"): [3, 6, 4, 2, 4, 2],
        ("E7", "I"): [3, 6, 9, 7, 5, 3, 5],
        ("E8", "I"): [3, 6, 9, 12, 15, 10, 5, 8],
    }.get((fam, case))


def meets_three(div: PreimageDivisor, data: DynkinData) -> list[int]:
    """Components meeting at least three other components of the configuration."""
    out = []
    for i in data.vertices:
        count = len(data.neighbours(i)) + sum(1 for _, att in div.strict_transforms if i in att)
        if count >= 3:
            out.append(i)
    return out


# -- type A charts ---------------------------------------------------------------------

class ChartDisagreement(AssertionError):
    pass


CHART_VARS = ("u", "v")


def chart_pullback(n: int, i: int, f: Polynomial) -> Polynomial:
    u = Polynomial.var("u", CHART_VARS)
    v = Polynomial.var("v", CHART_VARS)
    return f.with_weights(None).substitute(
        {"x": u ** (n - i) * v ** (n - i + 1), "y": u ** (i + 1) * v ** i, "z": u * v}, CHART_VARS
    )


def _order(p: Polynomial, idx: int) -> int:
    return min(e[idx] for e in p.terms)


def typeA_chart_pullback(n: int, f: Polynomial) -> list[int]:
    """Vanishing orders of f along C1..Cn; {v_i = 0} is C_i and {u_i = 0} is C_(i+1)."""
    if f.variables != XYZ:
        raise PolynomialError("expected a polynomial in x, y, z")
    pulls = [chart_pullback(n, i, f) for i in range(n + 1)]
    if any(p.is_zero() for p in pulls):
        raise ValueError("f vanishes identically on the surface")
    if f.constant_term() != 0:
        raise ValueError("f does not pass through the singular point")
    orders = []
    for i in range(1, n + 1):
        from_v = _order(pulls[i], 1)
        from_u = _order(pulls[i - 1], 0)
        if from_v != from_u:
            raise ChartDisagreement(f"C{i}: order {from_v} in chart {i}, {from_u} in chart {i - 1}")
        orders.append(from_v)
    return orders


# -- rendering ---------------------------------------------------------------------------

def to_dot(div: PreimageDivisor) -> str:
    data = cartan(div.gamma)
    lines = [f'graph "{_label(div.gamma)}_{div.case}" {{', "  node [shape=circle];"]
    for i, a in enumerate(div.multiplicities, start=1):
        fixed = div.status.get(i) == POINTWISE
        color = ' color=red fontcolor=red' if fixed else ""
        lines.append(f'  C{i} [label="C{i}\\n{a}" fixed={str(fixed).lower()}{color}];')
    for name, _ in div.strict_transforms:
        lines.append(f'  {name} [label="{name}\\n1" shape=box fixed=true color=red fontcolor=red];')
    for a, b in data.edges:
        lines.append(f"  C{a} -- C{b};")
    for name, att in div.strict_transforms:
        for i in att:
            lines.append(f"  {name} -- C{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(div: PreimageDivisor) -> str:
    out = [f"{_label(div.gamma)} case {div.case}"]
    if not div.strict_transforms and all(a == 1 for a in div.multiplicities):
        out.append("reduced exceptional fiber, all multiplicities 1")
    out.append("multiplicities: " + " ".join(f"C{i}={a}" for i, a in enumerate(div.multiplicities, start=1)))
    for name, att in div.strict_transforms:
        out.append(f"{name} meets " + ", ".join(f"C{i}" for i in att))
    red = {True: "yes", False: "no", None: "unknown"}[div.reduced]
    out.append(f"reduced: {red}; generically reduced: {'yes' if div.generically_reduced else 'no'}")
    if div.note:
        out.append(div.note)
    return "\n".join(out) + "\n"
