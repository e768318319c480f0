"""Exact multivariate polynomials over cyclotomic fields."""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping

from .cyclo import CycloNumber, ZERO, ONE, as_cyclo


class PolynomialError(ValueError):
    pass


def _grlex_key(exp):
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial; terms map exponent tuples to nonzero CycloNumbers."""

    __slots__ = ("variables", "terms", "weights", "_hash")

    def __init__(self, variables, terms=None, weights=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PolynomialError(f"repeated variable names in {self.variables}")
        clean = {}
        if terms:
            nv = len(self.variables)
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nv or any(e < 0 for e in exp):
                    raise PolynomialError(f"bad exponent {exp} for variables {self.variables}")
                c = as_cyclo(c)
                if not c.is_zero():
                    clean[exp] = c
        self.terms = clean
        if weights is not None:
            weights = tuple(weights)
            if len(weights) != len(self.variables) or any(w <= 0 for w in weights):
                raise PolynomialError("weights must be positive, one per variable")
        self.weights = weights
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def var(cls, name: str, variables, weights=None) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise PolynomialError(f"unknown variable {name!r}")
        exp = tuple(int(v == name) for v in variables)
        return cls(variables, {exp: ONE}, weights)

    @classmethod
    def const(cls, c, variables, weights=None) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c}, weights)

    @classmethod
    def gens(cls, variables, weights=None) -> tuple["Polynomial", ...]:
        return tuple(cls.var(v, variables, weights) for v in variables)

    def _like(self, terms) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.variables, p.terms, p.weights, p._hash = self.variables, terms, self.weights, None
        return p

    def _check(self, other: "Polynomial"):
        if other.variables != self.variables:
            raise PolynomialError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CycloNumber)):
            return Polynomial.const(other, self.variables, self.weights)
        return None

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            c = as_cyclo(other)
            if c.is_zero():
                return self._like({})
            return self._like({e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return self._like({e: c for e, c in terms.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self * (ONE / as_cyclo(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError("polynomial powers must be non-negative integers")
        result = Polynomial.const(1, self.variables, self.weights)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = Polynomial.const(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- structure ------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def total_degree(self) -> int:
        if not self.terms:
            raise PolynomialError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        k = self._index(name)
        return max((e[k] for e in self.terms), default=0)

    def weighted_degrees(self, weights=None) -> set[int]:
        w = weights or self.weights or (1,) * len(self.variables)
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    def weighted_degree(self, weights=None) -> int:
        if not self.terms:
            raise PolynomialError("weighted degree of the zero polynomial")
        degs = self.weighted_degrees(weights)
        if len(degs) != 1:
            raise PolynomialError(f"inhomogeneous polynomial, weighted degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self, weights=None) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def coefficient(self, exp) -> CycloNumber:
        return self.terms.get(tuple(exp), ZERO)

    def constant_term(self) -> CycloNumber:
        return self.coefficient((0,) * len(self.variables))

    def with_weights(self, weights) -> "Polynomial":
        return Polynomial(self.variables, self.terms, weights)

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PolynomialError(f"unknown variable {name!r}") from None

    # -- calculus and substitution --------------------------------------
    def diff(self, name: str) -> "Polynomial":
        k = self._index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                terms[ne] = c * e[k]
        return self._like(terms)

    def substitute(self, assignment: Mapping[str, "Polynomial"], variables=None, weights=None) -> "Polynomial":
        """Replace variables by polynomials in a common target ring.

        Variables absent from the assignment are kept and must exist in
        the target ring.
        """
        for name in assignment:
            self._index(name)
        targets = [p for p in assignment.values() if isinstance(p, Polynomial)]
        if variables is None:
            variables = targets[0].variables if targets else self.variables
        variables = tuple(variables)
        images = []
        for v in self.variables:
            if v in assignment:
                img = assignment[v]
                if not isinstance(img, Polynomial):
                    img = Polynomial.const(img, variables)
                elif img.variables != variables:
                    raise PolynomialError(f"substitution target ring mismatch for {v}")
            else:
                if v not in variables:
                    raise PolynomialError(f"variable {v!r} missing from target ring {variables}")
                img = Polynomial.var(v, variables)
            images.append(img)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                if k == 0:
                    cache[key] = Polynomial.const(1, variables)
                elif k == 1:
                    cache[key] = images[i]
                else:
                    half = power(i, k // 2)
                    sq = half * half
                    cache[key] = sq * images[i] if k % 2 else sq
            return cache[key]

        total: dict = {}
        for e, c in self.terms.items():
            prod = None
            for i, k in enumerate(e):
                if k:
                    prod = power(i, k) if prod is None else prod * power(i, k)
            if prod is None:
                prod = Polynomial.const(1, variables)
            for me, mc in prod.terms.items():
                s = total.get(me)
                total[me] = mc * c if s is None else s + mc * c
        return Polynomial(variables, {e: c for e, c in total.items() if not c.is_zero()}, weights)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at exact or floating values; exact stays exact."""
        vals = [values[v] for v in self.variables]
        exact = all(isinstance(x, (int, Fraction, CycloNumber)) for x in vals)
        total = ZERO if exact else 0j
        for e, c in self.terms.items():
            term = c if exact else c.to_complex()
            for x, k in zip(vals, e):
                if k:
                    term = term * (as_cyclo(x) ** k if exact else x ** k)
            total = total + term
        return total

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.variables, {e: fn(c) for e, c in self.terms.items()}, self.weights)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return Polynomial(tuple(mapping.get(v, v) for v in self.variables), self.terms, self.weights)

    # -- rendering ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.variables, e) if k
            )
            neg = c.is_rational() and c.to_fraction() < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == ONE:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self.variables}, {self})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(f: Polynomial, name: str) -> Polynomial:
    return f.diff(name)


def poly_substitute(f: Polynomial, assignment) -> Polynomial:
    return f.substitute(assignment)


UV = ("u", "v")
XYZ = ("x", "y", "z")


def uv_gens() -> tuple[Polynomial, Polynomial]:
    return Polynomial.gens(UV)


def poisson_bracket_uv(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.variables != UV or g.variables != UV:
        raise PolynomialError("the bracket is defined on C[u,v]")
    return f.diff("u") * g.diff("v") - f.diff("v") * g.diff("u")


def weighted_degree(f: Polynomial, weights=None) -> int:
    return f.weighted_degree(weights)


# -- parsing ----------------------------------------------------------------

def parse_polynomial(text: str, variables=XYZ) -> Polynomial:
    """Parse +, -, *, ^ (or **) expressions with rational coefficients."""
    variables = tuple(variables)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolynomialError(f"cannot parse {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Polynomial.const(node.value, variables)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise PolynomialError(f"unknown variable {node.id!r}")
            return Polynomial.var(node.id, variables)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise PolynomialError("exponents must be non-negative integer literals")
                return base ** node.right.value
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if len(right.terms) == 1 and right.total_degree() == 0:
                    return left / right.constant_term()
                raise PolynomialError("division only by nonzero constants")
        raise PolynomialError(f"unsupported syntax in {text!r}")

    return walk(tree)


def monomial(exps: Iterable[int], variables, coeff=1) -> Polynomial:
    return Polynomial(variables, {tuple(exps): coeff})
