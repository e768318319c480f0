"""Floating-point solver for the zero fiber of the framed moment map."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import GammaType, presentation
from .quiver import (
    QuiverPoint, QuiverSetting, build_setting, moment_map, trace_generators,
    evaluate_word, dn_induction_words, _out_maps, trace_words, gauge_act,
)


@dataclass(frozen=True)
class SolveOptions:
    seed: int = 0
    max_iterations: int = 300
    residual_tolerance: float = 1e-10
    identity_tolerance: float = 1e-8
    initial_damping: float = 1e-3
    damping_up: float = 4.0
    damping_down: float = 3.0
    restarts: int = 3
    init_scale: float = 1.0
    initial: str = "gaussian"    # or "zero"

    def __post_init__(self):
        if self.residual_tolerance <= 0 or self.identity_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1 or self.restarts < 1:
            raise ValueError("iteration counts must be positive")
        if self.initial not in ("gaussian", "zero"):
            raise ValueError("initial must be 'gaussian' or 'zero'")


@dataclass
class IdentityCheck:
    name: str
    value: float
    scale: float
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "error": self.value, "scale": self.scale, "passed": self.passed}


@dataclass
class SolveResult:
    point: QuiverPoint
    residual: float
    semistable: bool
    iterations: int
    seed: int
    restart: int
    identities: list[IdentityCheck] = field(default_factory=list)
    tolerance: float = 1e-10
    weighted_size: float = 0.0

    @property
    def success(self) -> bool:
        return self.residual <= self.tolerance and self.semistable

    @property
    def identities_ok(self) -> bool:
        return all(c.passed for c in self.identities)


# -- packing ------------------------------------------------------------------------

class Layout:
    """Real-pair coordinates for the arrow matrices; l0 = e1 and k0 = 0 are pinned."""

    def __init__(self, setting: QuiverSetting):
        self.setting = setting
        self.slots = []
        off = 0
        for name in setting.slot_names():
            if name in ("l0", "k0"):
                continue
            r, c = setting.slot_shape(name)
            self.slots.append((name, r, c, off))
            off += r * c
        self.ncomplex = off
        self.mu_offsets = []
        moff = 0
        for d in setting.delta:
            self.mu_offsets.append(moff)
            moff += d * d
        self.nres = moff

    def unpack(self, x: np.ndarray) -> QuiverPoint:
        z = x[: self.ncomplex] + 1j * x[self.ncomplex:]
        ent = {name: z[off: off + r * c].reshape(r, c).copy() for name, r, c, off in self.slots}
        d0 = self.setting.delta[0]
        l0 = np.zeros((d0, 1), dtype=complex)
        l0[0, 0] = 1.0
        ent["l0"] = l0
        ent["k0"] = np.zeros((1, d0), dtype=complex)
        return QuiverPoint(self.setting, ent, False)

    def pack(self, p: QuiverPoint) -> np.ndarray:
        z = np.concatenate([np.asarray(p[name], dtype=complex).ravel() for name, _, _, _ in self.slots])
        return np.concatenate([z.real, z.imag])


def residual(layout: Layout, x: np.ndarray) -> np.ndarray:
    mu = moment_map(layout.setting, layout.unpack(x))
    z = np.concatenate([m.ravel() for m in mu])
    return np.concatenate([z.real, z.imag])


def complex_jacobian(layout: Layout, p: QuiverPoint) -> np.ndarray:
    """d mu / d B as a complex matrix (mu is holomorphic in the arrow entries)."""
    s = layout.setting
    jac = np.zeros((layout.nres, layout.ncomplex), dtype=complex)
    off = {name: (o, r, c) for name, r, c, o in layout.slots}
    for a in s.arrows:
        ba, bs = p[a.name], p[a.star_name]
        oa, ra, ca = off[a.name]
        os_, rs, cs = off[a.star_name]
        h, t = a.head, a.tail
        dh, dt = s.delta[h], s.delta[t]
        mh, mt = layout.mu_offsets[h], layout.mu_offsets[t]
        # mu_h += ba bs; row-major vec(A X B) = (A kron B^T) vec(X)
        jac[mh: mh + dh * dh, oa: oa + ra * ca] += np.kron(np.eye(dh), bs.T)
        jac[mh: mh + dh * dh, os_: os_ + rs * cs] += np.kron(ba, np.eye(dh))
        # mu_t -= bs ba
        jac[mt: mt + dt * dt, os_: os_ + rs * cs] -= np.kron(np.eye(dt), ba.T)
        jac[mt: mt + dt * dt, oa: oa + ra * ca] -= np.kron(bs, np.eye(dt))
    return jac


def jacobian(layout: Layout, x: np.ndarray) -> np.ndarray:
    jc = complex_jacobian(layout, layout.unpack(x))
    return np.block([[jc.real, -jc.imag], [jc.imag, jc.real]])


def finite_difference_jacobian(layout: Layout, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    cols = []
    for k in range(len(x)):
        e = np.zeros_like(x)
        e[k] = h
        cols.append((residual(layout, x + e) - residual(layout, x - e)) / (2 * h))
    return np.stack(cols, axis=1)


# -- semistability ------------------------------------------------------------------------

def _orth(m: np.ndarray, rel: float) -> np.ndarray:
    if m.size == 0:
        return m
    u, sv, _ = np.linalg.svd(m, full_matrices=False)
    if sv.size == 0 or sv[0] == 0:
        return u[:, :0]
    return u[:, : int(np.sum(sv > rel * sv[0]))]


def is_semistable_float(setting: QuiverSetting, p: QuiverPoint, rel: float = 1e-7) -> bool:
    """Every vertex space is generated from the image of l0, with numerical rank by SVD."""
    spans = {i: np.zeros((setting.delta[i], 0), dtype=complex) for i in setting.vertices}
    spans[0] = _orth(np.asarray(p["l0"], dtype=complex), rel)
    maps = list(_out_maps(setting, p))
    changed = True
    while changed:
        changed = False
        for t, h, m in maps:
            if spans[t].shape[1] == 0:
                continue
            cand = _orth(np.hstack([spans[h], m @ spans[t]]), rel)
            if cand.shape[1] > spans[h].shape[1]:
                spans[h] = cand
                changed = True
    return all(spans[i].shape[1] == setting.delta[i] for i in setting.vertices)


# -- Levenberg-Marquardt -------------------------------------------------------------------

def _lm(layout: Layout, x: np.ndarray, opts: SolveOptions) -> tuple[np.ndarray, float, int]:
    r = residual(layout, x)
    norm = float(np.linalg.norm(r))
    lam = opts.initial_damping
    target = opts.residual_tolerance * 1e-3
    it = 0
    for it in range(1, opts.max_iterations + 1):
        if norm <= target:
            break
        j = jacobian(layout, x)
        # minimum-norm damped step for the underdetermined system
        jjt = j @ j.T
        try:
            y = np.linalg.solve(jjt + lam * np.eye(len(r)), r)
        except np.linalg.LinAlgError:
            lam *= opts.damping_up
            continue
        step = -j.T @ y
        x_new = x + step
        r_new = residual(layout, x_new)
        n_new = float(np.linalg.norm(r_new))
        if n_new < norm:
            x, r, norm = x_new, r_new, n_new
            lam = max(lam / opts.damping_down, 1e-15)
        else:
            lam *= opts.damping_up
            if lam > 1e12:
                break
    return x, norm, it


def _expm_hermitian(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(w)) @ v.conj().T


def balance(layout: Layout, x: np.ndarray, steps: int = 400, rate: float = 0.05) -> np.ndarray:
    """Norm-decreasing gauge flow at vertices other than 0; traces and mu = 0 are unchanged."""
    s = layout.setting
    p = layout.unpack(x)
    for _ in range(steps):
        grad = {i: np.zeros((s.delta[i], s.delta[i]), dtype=complex) for i in s.vertices if i}
        for t, h, m in _out_maps(s, p):
            if h:
                grad[h] += m @ m.conj().T
            if t:
                grad[t] -= m.conj().T @ m
        size = max(np.abs(g).max() for g in grad.values())
        if size < 1e-12:
            break
        scale = sum(float(np.sum(np.abs(np.asarray(p[n])) ** 2)) for n, _, _, _ in layout.slots)
        g = [np.eye(1, dtype=complex)] + [_expm_hermitian(-rate * grad[i] / max(scale, 1e-300) * len(s.delta))
                                          for i in s.vertices if i]
        p = gauge_act(p, g)
    return layout.pack(p)


def weighted_size(p: QuiverPoint) -> float:
    """max |g|^(1/deg g) over x, y, z: the scale seen by the C* action."""
    words = trace_words(p.setting.gamma)
    tg = trace_generators(p.setting, p)
    return max(abs(tg[k]) ** (1.0 / len(words[k])) for k in "xyz")


def normalize_scale(layout: Layout, x: np.ndarray, cap: float = 1e3) -> np.ndarray:
    """Rescale arrows so the point has weighted size 1; mu stays zero since k0 = 0."""
    w = weighted_size(layout.unpack(x))
    s = 1.0 / w if w > 0 else cap
    return x * min(max(s, 1.0 / cap), cap)


def solve_adhm(setting: QuiverSetting, opts: SolveOptions = SolveOptions()) -> SolveResult:
    layout = Layout(setting)
    rng = np.random.default_rng(opts.seed)
    best = None
    for k in range(opts.restarts):
        if opts.initial == "zero":
            x0 = np.zeros(2 * layout.ncomplex)
        else:
            x0 = rng.standard_normal(2 * layout.ncomplex) * (opts.init_scale / np.sqrt(2))
        x, norm, its = _lm(layout, x0, opts)
        if norm <= opts.residual_tolerance and opts.initial != "zero":
            x, norm, more = _lm(layout, normalize_scale(layout, balance(layout, x)), opts)
            its += more
        p = layout.unpack(x)
        semi = is_semistable_float(setting, p)
        res = SolveResult(p, norm, semi, its, opts.seed, k, tolerance=opts.residual_tolerance,
                          weighted_size=weighted_size(p))
        if best is None or (res.success, -res.residual) > (best.success, -best.residual):
            best = res
        if res.success:
            break
    if best.success:
        best.identities = check_identities(setting.gamma, best.point, opts.identity_tolerance)
    return best


# -- identities ------------------------------------------------------------------------------

def _check(name: str, lhs: complex, terms: list, tol: float) -> IdentityCheck:
    scale = max([1.0] + [abs(complex(t)) for t in terms])
    err = abs(complex(lhs))
    return IdentityCheck(name, err, scale, err <= tol * scale)


def check_identities(gamma: GammaType, point: QuiverPoint, tol: float = 1e-8) -> list[IdentityCheck]:
    p = point.to_float() if point.exact else point
    setting = p.setting
    tg = trace_generators(setting, p)
    x, y, z = tg["x"], tg["y"], tg["z"]
    rel = presentation(gamma, "working").relation
    vals = {"x": x, "y": y, "z": z}
    terms = [complex(c.to_complex()) * np.prod([vals[v] ** e for v, e in zip(rel.variables, exp)])
             for exp, c in rel.terms.items()]
    out = [_check("relation", sum(terms), terms, tol)]
    fam, n = gamma.family, gamma.n
    if fam == "A":
        zi = tg["z_i"]
        out += [_check(f"z_{i} = z", zi[i] - z, [zi[i], z], tol) for i in range(len(zi))]
    elif fam == "D":
        yp, zp = tg["y'"], tg["z'"]
        if n % 2 == 0:
            xm = x ** ((n - 2) // 2)
            out.append(_check("y + y' = x^m", y + yp - xm, [y, yp, xm], tol))
            out.append(_check("z + z' = 0", z + zp, [z, zp], tol))
        else:
            xk = x ** ((n - 1) // 2)
            out.append(_check("y + y' = 0", y + yp, [y, yp], tol))
            out.append(_check("z + z' = x^k", z + zp - xk, [z, zp, xk], tol))
        out.append(_check("z z' = x y y'", z * zp - x * y * yp, [z * zp, x * y * yp], tol))
        if n >= 5:
            for r in (1, 2, 3):
                want = x ** ((r + 1) // 2) if r % 2 else 0
                for k, w in enumerate(dn_induction_words(n, r)):
                    v = evaluate_word(p, w)
                    out.append(_check(f"loop{k + 1}(r={r})", v - want, [v, want], tol))
    elif fam == "E6":
        xp, ypp, zp = tg["x'"], tg["y''"], tg["z'"]
        out.append(_check("x + x' = 0", x + xp, [x, xp], tol))
        out.append(_check("z + z' = -x^2", z + zp + x * x, [z, zp, x * x], tol))
        out.append(_check("y'' = y", ypp - y, [ypp, y], tol))
    return out


def lift_residual(result: SolveResult, spec) -> float:
    """||mu(Theta p) + tau-permuted mu(p)|| for a converged point."""
    p = result.point
    q = spec.apply(p)
    s = p.setting
    mu_p, mu_q = moment_map(s, p), moment_map(s, q)
    tau = spec.tau or {}
    return float(np.sqrt(sum(np.sum(np.abs(mu_q[j] + mu_p[tau.get(j, j)]) ** 2) for j in s.vertices)))


def solve_type(label: str, seed: int = 0, tol: float = 1e-10, restarts: int = 3) -> SolveResult:
    gamma = GammaType.parse(label)
    return solve_adhm(build_setting(gamma), SolveOptions(seed=seed, residual_tolerance=tol, restarts=restarts))
