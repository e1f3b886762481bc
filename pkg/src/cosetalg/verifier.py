"""Named, runnable checks over a catalog of (group, subgroup, rho) triples.

Each check encodes one algebraic statement about the coset convolution
machinery and reports pass/fail plus statistics; probes of questions the
library only observes (solution-space dimension, left-identity search,
lift-compatibility variants) report status "info" and never fail a suite.

Randomness: PCG64 generators seeded through SeedSequence from
(seed, catalog index, crc32 of the check id), so every (check, entry) pair is
reproducible in isolation and independent of execution order. Random measure
weights are uniform on the complex unit square [0,1] + [0,1]i.
"""

from __future__ import annotations

import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import exact
from .errors import CosetAlgError, UnknownCheckId
from .exact import ComplexFraction
from .groups import (FiniteGroup, QuotientSpace, Subgroup, build_coset_space,
                     builtin_from_token, group_from_dict, subgroup_from_tokens,
                     test_normality)
from .measures import (Carrier, ComplexMeasure, DensityFunction, from_density,
                       group_carrier, group_convolve, integrate, point_mass,
                       quotient_carrier, total_variation)
from .quotient_algebra import (IdentitySolution, StructureTable, delta_h,
                               embed_density, find_left_identity,
                               find_two_sided_identity, ideal_factorize,
                               l1_convolve, lp_action, lp_norm, module_action,
                               quotient_convolve, quotient_convolve_exact,
                               structure_counts_for_reps, structure_table)
from .quotient_ops import (QuotientMeasure, RhoFunction, compose_with_projection,
                           lift_to_invariant, membership_mgh, pushforward_rh,
                           quasi_invariant_lambda, quotient_integral_check,
                           rho_from_dict, rho_ones, solve_mhg_space, validate_rho)

CHECK_IDS = (
    "C13_UNIQUE_ID", "C14_INVOLUTION", "D6_CONV", "L11_RIGHT_ID", "L17_COMPAT",
    "P15_NORMALITY", "P16_EMBED", "P19_LP", "P1_MHG", "P2_DENSITY", "P3_LIFT",
    "P4_ISOMETRY", "T18_IDEAL", "T8_ALGEBRA", "W0_WEIL",
)

DEFAULT_TOLERANCES = {
    "W0_WEIL": 1e-10,
    "P1_MHG": 1e-9,
    "P2_DENSITY": 1e-10,
    "P3_LIFT": 1e-12,
    "P4_ISOMETRY": 1e-12,
    "D6_CONV": 1e-12,
    "T8_ALGEBRA": 1e-10,
    "L11_RIGHT_ID": 1e-12,
    "C13_UNIQUE_ID": 1e-12,
    "C14_INVOLUTION": 1e-12,
    "P15_NORMALITY": 1e-12,
    "P16_EMBED": 1e-12,
    "L17_COMPAT": 1e-12,
    "T18_IDEAL": 1e-12,
    "P19_LP": 1e-10,
}

SUBMULT_TOL = 1e-12


@dataclass(frozen=True)
class CheckSpec:
    id: str
    trials: int = 100
    seed: int = 42
    tolerance: Optional[float] = None   # None -> the check's pinned default
    mode: str = "float"                 # "float" | "exact"

    def __post_init__(self):
        if self.id not in CHECK_IDS:
            raise UnknownCheckId(f"unknown check id {self.id!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if self.mode not in ("float", "exact"):
            raise ValueError("mode must be 'float' or 'exact'")

    @property
    def tol(self) -> float:
        return self.tolerance if self.tolerance is not None else DEFAULT_TOLERANCES[self.id]


@dataclass
class CheckReport:
    id: str
    entry: str
    status: str                    # "pass" | "fail" | "info"
    max_residual: float = 0.0
    trials_run: int = 0
    elapsed_s: float = 0.0
    counterexample: Optional[dict] = None
    notes: str = ""

    def to_dict(self, include_elapsed: bool = False) -> dict:
        d = {
            "id": self.id,
            "entry": self.entry,
            "status": self.status,
            "max_residual": _stable(self.max_residual),
            "trials_run": self.trials_run,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }
        if include_elapsed:
            d["elapsed_s"] = round(self.elapsed_s, 3)
        return d


def _stable(x: float) -> float:
    """Round to 12 significant digits so reports do not depend on the BLAS."""
    return float(f"{float(x):.12g}")


# --- random draws -------------------------------------------------------------

def rng_for(seed: int, check_id: str, entry_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence([seed, entry_index, zlib.crc32(check_id.encode())])))


def draw_measure(rng: np.random.Generator, carrier: Carrier) -> ComplexMeasure:
    return ComplexMeasure(carrier, rng.random(carrier.size) + 1j * rng.random(carrier.size))


def draw_density(rng: np.random.Generator, carrier: Carrier) -> DensityFunction:
    return DensityFunction(carrier, rng.random(carrier.size) + 1j * rng.random(carrier.size))


def draw_rho(rng: np.random.Generator, Q: QuotientSpace) -> RhoFunction:
    nums = rng.integers(1, 5, Q.coset_count)
    dens = rng.integers(1, 5, Q.coset_count)
    return validate_rho(Q, [Fraction(int(a), int(b)) for a, b in zip(nums, dens)])


def draw_rational_weights(rng: np.random.Generator, size: int) -> list[ComplexFraction]:
    re_n = rng.integers(-4, 5, size)
    im_n = rng.integers(-4, 5, size)
    de = rng.integers(1, 5, (2, size))
    return [ComplexFraction(Fraction(int(a), int(b)), Fraction(int(c), int(d)))
            for a, b, c, d in zip(re_n, de[0], im_n, de[1])]


def _floats(ws: Sequence[ComplexFraction], carrier: Carrier) -> ComplexMeasure:
    return ComplexMeasure(carrier, np.array([w.to_complex() for w in ws]))


# --- entry context --------------------------------------------------------------

@dataclass
class EntryContext:
    name: str
    G: FiniteGroup
    H: Subgroup
    Q: QuotientSpace
    T: StructureTable
    rho: RhoFunction
    lam: QuotientMeasure

    @property
    def gc(self) -> Carrier:
        return group_carrier(self.G)

    @property
    def qc(self) -> Carrier:
        return quotient_carrier(self.Q)


def make_context(G: FiniteGroup, H: Subgroup, rho: Optional[RhoFunction] = None,
                 name: str = "") -> EntryContext:
    Q = build_coset_space(G, H)
    T = structure_table(Q)
    r = rho if rho is not None else rho_ones(Q)
    return EntryContext(name=name or f"{G.name}/H{H.order}", G=G, H=H, Q=Q, T=T,
                        rho=r, lam=quasi_invariant_lambda(Q, r))


# --- individual checks ------------------------------------------------------------
#
# Each returns (status, max_residual, counterexample, notes, trials_run).

def _check_w0_weil(spec, ctx, rng):
    worst, witness = 0.0, None
    for t in range(spec.trials):
        f = draw_density(rng, ctx.gc)
        rho_t = draw_rho(rng, ctx.Q) if t % 2 else ctx.rho
        lhs, rhs = quotient_integral_check(ctx.Q, rho_t, f)
        r = abs(lhs - rhs)
        if r > worst:
            worst, witness = r, {"trial": t, "rho": rho_t.values.tolist()}
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _invariance_residual(Q: QuotientSpace, weights: np.ndarray) -> float:
    """Max violation of the literal system: sum over x*C of weights minus the
    weight at x, over all elements x and cosets C."""
    G, worst = Q.group, 0.0
    coset_members = [Q.members(c) for c in range(Q.coset_count)]
    for x in range(G.order):
        for mem in coset_members:
            s = weights[G.mul[x, mem]].sum() - weights[x]
            worst = max(worst, abs(s))
    return worst


def _check_p1_mhg(spec, ctx, rng):
    basis = solve_mhg_space(ctx.Q)
    dim = len(basis)
    worst = 0.0
    draws = min(spec.trials, 20)
    for mu in basis:
        worst = max(worst, _invariance_residual(ctx.Q, mu.weights))
        for _ in range(draws):
            nu = draw_measure(rng, ctx.gc)
            conv = group_convolve(ctx.G, nu, mu)
            worst = max(worst, _invariance_residual(ctx.Q, conv.weights))
    notes = (f"literal invariance system: dimension={dim}; "
             f"left-convolution closure residual={_stable(worst):.3g} "
             f"on {draws} draws per basis vector")
    return "info", worst, None, notes, draws


def _right_translate(G: FiniteGroup, f: DensityFunction, h: int) -> DensityFunction:
    return DensityFunction(f.carrier, f.values[G.mul[:, h]])


def _check_p2_density(spec, ctx, rng):
    G, Q = ctx.G, ctx.Q
    worst, witness = 0.0, None
    for t in range(spec.trials):
        phi = draw_density(rng, ctx.qc)
        f = compose_with_projection(Q, phi)
        mu = from_density(G, f)
        if not membership_mgh(Q, mu):
            return "fail", 1.0, {"trial": t, "reason": "coset-constant density not invariant"}, "", t + 1
        for h in ctx.H.members:
            g = draw_density(rng, ctx.gc)
            r = abs(integrate(mu, _right_translate(G, g, int(h))) - integrate(mu, g))
            if r > worst:
                worst, witness = r, {"trial": t, "h": G.labels[int(h)]}
        if ctx.H.order > 1:
            bump = np.zeros(G.order, dtype=np.complex128)
            bump[int(rng.integers(0, G.order))] = 0.5 + 0.25j
            if membership_mgh(Q, ComplexMeasure(ctx.gc, mu.weights + bump)):
                return ("fail", 1.0,
                        {"trial": t, "reason": "perturbed measure still reported invariant"},
                        "", t + 1)
    if ctx.H.order > 1:
        # a point mass at the identity is never right-invariant
        if membership_mgh(Q, point_mass(ctx.gc, G.identity)):
            return "fail", 1.0, {"reason": "identity point mass reported invariant"}, "", spec.trials
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _check_p3_lift(spec, ctx, rng):
    Q = ctx.Q
    worst, witness = 0.0, None
    for t in range(spec.trials):
        sigma = draw_measure(rng, ctx.qc)
        lifted = lift_to_invariant(Q, sigma)
        if not membership_mgh(Q, lifted):
            return "fail", 1.0, {"trial": t, "reason": "lift not right-invariant"}, "", t + 1
        back = pushforward_rh(Q, lifted)
        r = float(np.max(np.abs(back.weights - sigma.weights)))
        r = max(r, abs(total_variation(lifted) - total_variation(sigma)))
        nu = draw_measure(rng, ctx.gc)
        if not membership_mgh(Q, group_convolve(ctx.G, nu, lifted)):
            return ("fail", 1.0,
                    {"trial": t, "reason": "left ideal violated: nu * lift not invariant"},
                    "", t + 1)
        if r > worst:
            worst, witness = r, {"trial": t}
    # exact route: section and norm identities over Gaussian rationals
    h = Q.subgroup.order
    for t in range(min(spec.trials, 10)):
        s = draw_rational_weights(rng, Q.coset_count)
        lifted = exact.lift_exact(Q.coset_of, h, s)
        back = exact.pushforward_exact(Q.coset_of, Q.coset_count, lifted)
        if any(not (a - b).is_zero() for a, b in zip(back, s)):
            return "fail", 1.0, {"trial": t, "reason": "exact section failed"}, "", t + 1
        for y, w in enumerate(lifted):
            if w.abs_squared() * h * h != s[int(Q.coset_of[y])].abs_squared():
                return ("fail", 1.0,
                        {"trial": t, "reason": "exact lift norm identity failed"}, "", t + 1)
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _check_p4_isometry(spec, ctx, rng):
    Q = ctx.Q
    worst, witness = 0.0, None
    contraction_worst = 0.0
    for t in range(spec.trials):
        mu = draw_measure(rng, ctx.gc)
        excess = total_variation(pushforward_rh(Q, mu)) - total_variation(mu)
        contraction_worst = max(contraction_worst, excess)
        sigma = draw_measure(rng, ctx.qc)
        lifted = lift_to_invariant(Q, sigma)
        r = abs(total_variation(pushforward_rh(Q, lifted)) - total_variation(lifted))
        if r > worst:
            worst, witness = r, {"trial": t}
    if contraction_worst > spec.tol:
        return "fail", contraction_worst, {"reason": "pushforward increased total variation"}, "", spec.trials
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _alternative_reps(rng: np.random.Generator, Q: QuotientSpace) -> np.ndarray:
    reps = []
    for c in range(Q.coset_count):
        mem = Q.members(c)
        reps.append(int(mem[rng.integers(0, len(mem))]))
    return np.array(reps, dtype=np.int64)


def _check_d6_conv(spec, ctx, rng):
    T, Q = ctx.T, ctx.Q
    if not (T.counts.sum(axis=2) == T.denominator).all():
        return "fail", 1.0, {"reason": "row sums differ from |H|"}, "", 0
    for _ in range(10):
        alt = _alternative_reps(rng, Q)
        if not np.array_equal(structure_counts_for_reps(Q, alt), T.counts):
            return ("fail", 1.0,
                    {"reason": "tensor depends on representative choice",
                     "reps": alt.tolist()}, "", 0)
    worst, witness = 0.0, None
    exact_mode = spec.mode == "exact"
    for t in range(spec.trials):
        if exact_mode:
            s1 = draw_rational_weights(rng, Q.coset_count)
            s2 = draw_rational_weights(rng, Q.coset_count)
            via_table = quotient_convolve_exact(T, s1, s2)
            conv = exact.group_convolve_exact(
                Q.group.mul,
                exact.lift_exact(Q.coset_of, Q.subgroup.order, s1),
                exact.lift_exact(Q.coset_of, Q.subgroup.order, s2))
            via_lift = exact.pushforward_exact(Q.coset_of, Q.coset_count, conv)
            r = 0.0 if all((a - b).is_zero() for a, b in zip(via_table, via_lift)) else 1.0
        else:
            s1 = draw_measure(rng, ctx.qc)
            s2 = draw_measure(rng, ctx.qc)
            via_table = quotient_convolve(T, s1, s2)
            via_lift = pushforward_rh(Q, group_convolve(
                Q.group, lift_to_invariant(Q, s1), lift_to_invariant(Q, s2)))
            r = float(np.max(np.abs(via_table.weights - via_lift.weights)))
        if r > worst:
            worst, witness = r, {"trial": t}
    # module action: pushing a group measure onto a coset measure agrees with
    # the table route once the group measure is right-invariant, and a point
    # mass at x sends the coset of y to the coset of x*y (float mode only;
    # exact mode reports the exact comparison residual alone)
    for t in range(0 if exact_mode else min(spec.trials, 25)):
        s1 = draw_measure(rng, ctx.qc)
        s2 = draw_measure(rng, ctx.qc)
        mu_inv = lift_to_invariant(Q, s1)
        acted = module_action(Q, mu_inv, s2)
        via_table = quotient_convolve(T, pushforward_rh(Q, mu_inv), s2)
        r = float(np.max(np.abs(acted.weights - via_table.weights)))
        unit = module_action(Q, point_mass(ctx.gc, ctx.G.identity), s2)
        r = max(r, float(np.max(np.abs(unit.weights - s2.weights))))
        x = int(rng.integers(0, ctx.G.order))
        b = int(rng.integers(0, Q.coset_count))
        moved = module_action(Q, point_mass(ctx.gc, x), point_mass(ctx.qc, b))
        target = int(Q.coset_of[ctx.G.mul[x, int(Q.reps[b])]])
        r = max(r, total_variation(moved - point_mass(ctx.qc, target)))
        if r > worst:
            worst, witness = r, {"trial": t, "part": "module action"}
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _check_t8_algebra(spec, ctx, rng):
    T = ctx.T
    worst, witness = 0.0, None
    exact_mode = spec.mode == "exact"
    for t in range(spec.trials):
        if exact_mode:
            s1, s2, s3 = (draw_rational_weights(rng, T.coset_count) for _ in range(3))
            lhs = quotient_convolve_exact(T, quotient_convolve_exact(T, s1, s2), s3)
            rhs = quotient_convolve_exact(T, s1, quotient_convolve_exact(T, s2, s3))
            r = 0.0 if all((a - b).is_zero() for a, b in zip(lhs, rhs)) else 1.0
            m1, m2 = _floats(s1, ctx.qc), _floats(s2, ctx.qc)
        else:
            m1, m2, m3 = (draw_measure(rng, ctx.qc) for _ in range(3))
            lhs = quotient_convolve(T, quotient_convolve(T, m1, m2), m3)
            rhs = quotient_convolve(T, m1, quotient_convolve(T, m2, m3))
            r = total_variation(lhs - rhs)
        if r > worst:
            worst, witness = r, {"trial": t, "law": "associativity"}
        prod = quotient_convolve(T, m1, m2)
        excess = total_variation(prod) - total_variation(m1) * total_variation(m2)
        if excess > SUBMULT_TOL:
            return ("fail", excess, {"trial": t, "law": "submultiplicativity"},
                    "", t + 1)
    ident = find_left_identity(T)
    if ident.solution is not None:
        notes = "left identity found: unit mass on the base coset" \
            if _is_delta_h(ident, ctx.Q) else "left identity found (not the base coset)"
    else:
        notes = (f"no left identity; least-squares residual="
                 f"{_stable(ident.residual):.6g}")
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), notes, spec.trials


def _is_delta_h(sol: IdentitySolution, Q: QuotientSpace) -> bool:
    if sol.solution is None:
        return False
    want = [Fraction(1 if c == Q.base_coset else 0) for c in range(Q.coset_count)]
    return list(sol.solution) == want


def _check_l11_right_id(spec, ctx, rng):
    T, Q = ctx.T, ctx.Q
    b0 = Q.base_coset
    for a in range(T.coset_count):
        for z in range(T.coset_count):
            want = T.denominator if z == a else 0
            if int(T.counts[a, b0, z]) != want:
                return ("fail", 1.0,
                        {"reason": "basis right-identity failed", "coset": a}, "", 0)
    worst, witness = 0.0, None
    dh = delta_h(Q)
    for t in range(spec.trials):
        if spec.mode == "exact":
            s = draw_rational_weights(rng, T.coset_count)
            d = [ComplexFraction(Fraction(1 if c == b0 else 0)) for c in range(T.coset_count)]
            out = quotient_convolve_exact(T, s, d)
            r = 0.0 if all((a - b).is_zero() for a, b in zip(out, s)) else 1.0
        else:
            s = draw_measure(rng, ctx.qc)
            r = total_variation(quotient_convolve(T, s, dh) - s)
        if r > worst:
            worst, witness = r, {"trial": t}
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _check_c13_unique_id(spec, ctx, rng):
    sol = find_two_sided_identity(ctx.T)
    if sol.solution is None:
        notes = (f"no two-sided identity (system inconsistent, "
                 f"least-squares residual={_stable(sol.residual):.6g})")
        return "pass", 0.0, None, notes, 1
    if not sol.unique:
        return "fail", 1.0, {"reason": "two-sided identity not unique"}, "", 1
    if not _is_delta_h(sol, ctx.Q):
        return ("fail", 1.0,
                {"reason": "two-sided identity differs from the base point mass",
                 "solution": [str(v) for v in sol.solution]}, "", 1)
    return "pass", 0.0, None, "two-sided identity exists and is the base-coset point mass", 1


def _left_identity_on_basis(T: StructureTable, Q: QuotientSpace) -> Optional[int]:
    """None when the base coset acts as a left identity on every point mass;
    otherwise the first coset index witnessing failure."""
    b0 = Q.base_coset
    for b in range(T.coset_count):
        if int(T.counts[b0, b, b]) != T.denominator:
            return b
    return None


def _check_c14_involution(spec, ctx, rng):
    normal = test_normality(ctx.G, ctx.H)
    witness_coset = _left_identity_on_basis(ctx.T, ctx.Q)
    if normal and witness_coset is not None:
        return ("fail", 1.0,
                {"reason": "normal subgroup but base coset is not a left identity",
                 "coset": witness_coset}, "", 1)
    if not normal and witness_coset is None:
        return ("fail", 1.0,
                {"reason": "non-normal subgroup but base coset acts as left identity"},
                "", 1)
    if normal:
        notes = "base-coset point mass is a two-sided identity (subgroup normal)"
    else:
        notes = (f"left-identity failure witnessed on coset C{witness_coset}: "
                 "convolving from the left by the base point mass moves it")
    return "pass", 0.0, None, notes, 1


def _check_p15_normality(spec, ctx, rng):
    T, Q, G = ctx.T, ctx.Q, ctx.G
    normal = test_normality(G, ctx.H)
    left_id = _left_identity_on_basis(T, Q) is None
    point_mass_mult = True
    for a in range(T.coset_count):
        for b in range(T.coset_count):
            z = int(Q.coset_of[G.mul[int(Q.reps[a]), int(Q.reps[b])]])
            if int(T.counts[a, b, z]) != T.denominator:
                point_mass_mult = False
                break
        if not point_mass_mult:
            break
    if not (normal == left_id == point_mass_mult):
        return ("fail", 1.0,
                {"normal": normal, "left_identity": left_id,
                 "point_mass_products": point_mass_mult}, "", 1)
    worst = 0.0
    if normal:
        dh = delta_h(Q)
        for t in range(min(spec.trials, 25)):
            s = draw_measure(rng, ctx.qc)
            worst = max(worst, total_variation(quotient_convolve(T, dh, s) - s))
        if worst > spec.tol:
            return "fail", worst, {"reason": "left identity residual too large"}, "", spec.trials
    notes = f"normal={normal}; all three criteria agree"
    return "pass", worst, None, notes, spec.trials


def _check_p16_embed(spec, ctx, rng):
    Q = ctx.Q
    worst, witness = 0.0, None
    for t in range(spec.trials):
        rho_t = draw_rho(rng, Q) if t % 2 else ctx.rho
        lam = quasi_invariant_lambda(Q, rho_t)
        phi = draw_density(rng, ctx.qc)
        emb = embed_density(lam, phi)
        r = abs(total_variation(emb) - lp_norm(lam, phi, 1.0))
        recovered = emb.weights / lam.weights
        r = max(r, float(np.max(np.abs(recovered - phi.values))))
        if r > worst:
            worst, witness = r, {"trial": t}
    # exact: |phi_c * lam_c|^2 == |phi_c|^2 * lam_c^2 termwise
    for t in range(min(spec.trials, 10)):
        rho_t = draw_rho(rng, Q)
        lam_exact = [Fraction(Q.subgroup.order) * v for v in rho_t.exact]
        phi = draw_rational_weights(rng, Q.coset_count)
        for w, lv in zip(phi, lam_exact):
            if (w.scale(lv)).abs_squared() != w.abs_squared() * lv * lv:
                return "fail", 1.0, {"trial": t, "reason": "exact norm identity failed"}, "", t + 1
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _check_l17_compat(spec, ctx, rng):
    Q = ctx.Q
    weighted_worst = 0.0
    unweighted_unit = 0.0
    unweighted_nonunit = 0.0
    draws = min(spec.trials, 25)
    for t in range(draws):
        phi = draw_density(rng, ctx.qc)
        for rho_t in (rho_ones(Q), draw_rho(rng, Q)):
            lam = quasi_invariant_lambda(Q, rho_t)
            target = embed_density(lam, phi)
            lifted = compose_with_projection(Q, phi)
            weighted = ComplexMeasure(ctx.gc, lifted.values * rho_t.values[Q.coset_of])
            r_w = total_variation(pushforward_rh(Q, weighted) - target)
            weighted_worst = max(weighted_worst, r_w)
            r_u = total_variation(pushforward_rh(Q, from_density(Q.group, lifted)) - target)
            if np.all(rho_t.values == 1.0):
                unweighted_unit = max(unweighted_unit, r_u)
            else:
                unweighted_nonunit = max(unweighted_nonunit, r_u)
    notes = (f"rho-weighted lift reproduces the embedded density for all sampled rho "
             f"(max residual {_stable(weighted_worst):.3g}); unweighted lift matches "
             f"for rho=1 (max residual {_stable(unweighted_unit):.3g}) and deviates "
             f"by up to {_stable(unweighted_nonunit):.3g} otherwise")
    return "info", weighted_worst, None, notes, draws


def _check_t18_ideal(spec, ctx, rng):
    Q, T = ctx.Q, ctx.T
    worst, witness = 0.0, None
    for t in range(spec.trials):
        rho_t = draw_rho(rng, Q) if t % 2 else ctx.rho
        lam = quasi_invariant_lambda(Q, rho_t)
        phi = draw_density(rng, ctx.qc)
        sigma = draw_measure(rng, ctx.qc)
        psi = ideal_factorize(lam, T, phi, sigma)
        target = quotient_convolve(T, embed_density(lam, phi), sigma)
        r = total_variation(embed_density(lam, psi) - target)
        if r > worst:
            worst, witness = r, {"trial": t}
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


def _check_p19_lp(spec, ctx, rng):
    Q = ctx.Q
    worst, witness = 0.0, None
    for t in range(spec.trials):
        p = float((1, 2, 3)[t % 3])
        rho_t = draw_rho(rng, Q) if t % 2 else ctx.rho
        lam = quasi_invariant_lambda(Q, rho_t)
        sigma = draw_measure(rng, ctx.qc)
        phi = draw_density(rng, ctx.qc)
        bound = total_variation(sigma) * lp_norm(lam, phi, p)
        for side in ("left", "right"):
            out = lp_action(Q, rho_t, side, sigma, phi, p)
            excess = lp_norm(lam, out, p) - bound
            if excess > worst:
                worst, witness = excess, {"trial": t, "p": p, "side": side}
        if p == 1.0:
            # embedding the acting density turns the p=1 action into the
            # coset density convolution
            phi2 = draw_density(rng, ctx.qc)
            via_action = lp_action(Q, rho_t, "left", embed_density(lam, phi2), phi, 1.0)
            via_densities = l1_convolve(Q, rho_t, lam, phi2, phi)
            gap = float(np.max(np.abs(via_action.values - via_densities.values)))
            if gap > worst:
                worst, witness = gap, {"trial": t, "part": "density convolution cross-check"}
    ok = worst <= spec.tol
    return ("pass" if ok else "fail"), worst, (None if ok else witness), "", spec.trials


_CHECKS: dict[str, Callable] = {
    "W0_WEIL": _check_w0_weil,
    "P1_MHG": _check_p1_mhg,
    "P2_DENSITY": _check_p2_density,
    "P3_LIFT": _check_p3_lift,
    "P4_ISOMETRY": _check_p4_isometry,
    "D6_CONV": _check_d6_conv,
    "T8_ALGEBRA": _check_t8_algebra,
    "L11_RIGHT_ID": _check_l11_right_id,
    "C13_UNIQUE_ID": _check_c13_unique_id,
    "C14_INVOLUTION": _check_c14_involution,
    "P15_NORMALITY": _check_p15_normality,
    "P16_EMBED": _check_p16_embed,
    "L17_COMPAT": _check_l17_compat,
    "T18_IDEAL": _check_t18_ideal,
    "P19_LP": _check_p19_lp,
}


def run_check(spec: CheckSpec, G: FiniteGroup, H: Subgroup,
              rho: Optional[RhoFunction] = None, entry_name: str = "",
              entry_index: int = 0) -> CheckReport:
    """Run one named check against a (G, H, rho) triple."""
    if spec.id not in _CHECKS:
        raise UnknownCheckId(spec.id)
    ctx = make_context(G, H, rho, name=entry_name)
    rng = rng_for(spec.seed, spec.id, entry_index)
    start = time.perf_counter()
    try:
        status, worst, counterexample, notes, trials_run = _CHECKS[spec.id](spec, ctx, rng)
    except CosetAlgError as exc:
        status, worst, notes, trials_run = "fail", float("nan"), "", 0
        counterexample = {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - start
    return CheckReport(id=spec.id, entry=ctx.name, status=status,
                       max_residual=_stable(worst), trials_run=trials_run,
                       elapsed_s=elapsed, counterexample=counterexample, notes=notes)


# --- catalog and suite -------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: Union[str, dict]          # "builtin:..." token or a group-spec dict
    subgroup: tuple[str, ...]        # generator tokens
    rho: Optional[dict] = None       # rho file dict; None means rho = 1


def default_catalog() -> list[CatalogEntry]:
    return [
        CatalogEntry("S3/<(12)>", "builtin:S3", ("(12)",)),
        CatalogEntry("S3/A3", "builtin:S3", ("(123)",)),
        CatalogEntry("D4/<r>", "builtin:D4", ("(1234)",)),
        CatalogEntry("D4/<s>", "builtin:D4", ("(24)",)),
        CatalogEntry("Q8/<i>", "builtin:Q8", ("i",)),
        CatalogEntry("A4/V4", "builtin:A4", ("(12)(34)", "(13)(24)")),
        CatalogEntry("C6/C3", "builtin:C6", ("(135)(246)",)),
        CatalogEntry("S4/S3", "builtin:S4", ("(12)", "(123)")),
    ]


def build_entry(entry: CatalogEntry) -> tuple[FiniteGroup, Subgroup, Optional[RhoFunction]]:
    G = builtin_from_token(entry.group) if isinstance(entry.group, str) \
        else group_from_dict(entry.group)
    H = subgroup_from_tokens(G, entry.subgroup)
    rho = None
    if entry.rho is not None:
        rho = rho_from_dict(build_coset_space(G, H), entry.rho)
    return G, H, rho


def all_check_specs(trials: int = 100, seed: int = 42,
                    tolerance: Optional[float] = None,
                    mode: str = "float") -> list[CheckSpec]:
    return [CheckSpec(id=cid, trials=trials, seed=seed, tolerance=tolerance, mode=mode)
            for cid in CHECK_IDS]


def run_suite(catalog: Sequence[CatalogEntry], specs: Sequence[CheckSpec],
              jobs: int = 1) -> list[CheckReport]:
    """Cartesian product of checks x catalog entries, in deterministic order
    (check id, then catalog index). Entries that fail to construct produce a
    single failing record and do not abort the suite."""
    tasks = []
    for idx, entry in enumerate(catalog):
        try:
            G, H, rho = build_entry(entry)
        except Exception as exc:
            tasks.append((None, idx, entry, exc))
            continue
        for spec in specs:
            tasks.append(((spec, G, H, rho), idx, entry, None))

    def run_one(task):
        payload, idx, entry, exc = task
        if exc is not None:
            return CheckReport(
                id="CONSTRUCTION", entry=entry.name, status="fail",
                max_residual=float("nan"), trials_run=0,
                counterexample={"entry": entry.name,
                                "error": f"{type(exc).__name__}: {exc}"},
                notes="catalog entry could not be constructed")
        spec, G, H, rho = payload
        return run_check(spec, G, H, rho, entry_name=entry.name, entry_index=idx)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_one, tasks))
    else:
        reports = [run_one(t) for t in tasks]
    order = {entry.name: i for i, entry in enumerate(catalog)}
    reports.sort(key=lambda r: (r.id, order.get(r.entry, 0)))
    return reports


def exit_code(reports: Sequence[CheckReport]) -> int:
    """0 when nothing failed; "info" never fails a suite."""
    return 1 if any(r.status == "fail" for r in reports) else 0
