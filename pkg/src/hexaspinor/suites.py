"""Seeded verification suites shared by the command line and the tests.

Each suite returns a list of Check records; a Report bundles them with the
wall-clock duration.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import bivgeo, cover, curvature, norden, octo, realforms
from .tensors import max_abs, random_complex, random_sl, residual


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.threshold)


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _c(name, value, threshold):
    return Check(name, float(value), threshold)


# ------------------------------------------------------------------ suites

_IDENTITY_THRESHOLDS = {"six_vector_antisymmetry": 1e-10, "six_vector_triple_A": 1e-10}
# reported by identity_suite for information only
_IDENTITY_INFO = {"bivector_square_full_pf"}


def norden_suite(seed: int = 0) -> list:
    checks = []
    for frame, n in (("complex", norden.build_norden_special()), ("real", norden.special_table())):
        for k, v in norden.identity_suite(n, seed=seed).items():
            if k in _IDENTITY_INFO:
                continue
            checks.append(_c(f"{frame}.{k}", v, _IDENTITY_THRESHOLDS.get(k, 1e-12)))
        gs = norden.build_gammas(n)
        g7 = gs.gamma7
        anti = max(residual(g7 @ gm, -gm @ g7) for gm in gs.gammas)
        checks.append(_c(f"{frame}.gamma7_anticommutes", anti, 1e-12))
        checks.append(_c(f"{frame}.gamma7_square_is_minus_identity", residual(g7 @ g7, -np.eye(8)), 1e-12))
    return checks


def cover_suite(seed: int = 0, samples: int = 100) -> list:
    n = norden.build_norden_special()
    A = norden.build_A_operators(n)
    rng = np.random.default_rng(seed)
    hom = kern = trip = eps = orth = det = 0.0
    for k in range(samples):
        S1, S2 = random_sl(rng), random_sl(rng)
        K1, K2 = cover.push(n, S1), cover.push(n, S2)
        hom = max(hom, residual(cover.push(n, S1 @ S2), K1 @ K2))
        kern = max(kern, residual(cover.push(n, -S1), K1))
        orth = max(orth, cover.orthogonality_residual(n, K1))
        det = max(det, abs(np.linalg.det(K1) - 1))
        eps = max(eps, cover.eps_invariance_residual(n, S1))
        if k < 20:
            L = cover.lift(n, K1)
            trip = max(trip, min(residual(L, S1), residual(L, -S1)))
    T = random_complex(rng, (4, 4))
    T -= np.trace(T) / 4 * np.eye(4)
    h = 1e-5
    fd = (cover.push(n, expm(h * T)) - cover.push(n, expm(-h * T))) / (2 * h)
    gen = cover.push_infinitesimal(n, T, A=A) @ n.g_inv
    return [
        _c("homomorphism", hom, 1e-9),
        _c("kernel_sign", kern, 1e-14),
        _c("orthogonality", orth, 1e-10),
        _c("determinant", det, 1e-10),
        _c("lift_round_trip", trip, 1e-8),
        _c("eps_invariance", eps, 1e-9),
        _c("derivative_at_identity", residual(fd, gen), 1e-6),
    ]


def realform_suite(seed: int = 0, samples: int = 20) -> list:
    n = norden.build_norden_special()
    rng = np.random.default_rng(seed)
    checks = []
    for sig in realforms.SIGNATURES:
        rf = realforms.build_real_form(sig)
        tag = f"{sig[0]}_{sig[1]}"
        mc = realforms.metric_checks(rf)
        checks.append(_c(f"{tag}.signature", 0.0 if mc["signature_ok"] else 1.0, 0.5))
        checks.append(_c(f"{tag}.metric_imag", mc["metric_imag"], 1e-12))
        checks.append(_c(f"{tag}.inclusion_inverse", mc["inclusion_inverse"], 1e-12))
        checks.append(_c(f"{tag}.involution_square", mc["involution_square"], 1e-12))
        checks.append(_c(f"{tag}.branch_law", realforms.branch_law_residual(rf), 1e-12))
        checks.append(_c(f"{tag}.conjugation_covariance", realforms.conjugation_covariance_residual(n, rf), 1e-10))
        checks.append(_c(f"{tag}.A_covariance", realforms.conjugate_A_residual(n, rf), 1e-10))
        checks.append(_c(f"{tag}.involution_from_s",
                         residual(realforms.involution_from_s(n, rf), rf.involution), 1e-12))
        worst = 0.0
        for _ in range(samples):
            S = cover.lift(n, realforms.real_rotation(rf, 0.7 * rng.standard_normal((6, 6))))
            nval, res = realforms.stabilizer_residual(rf, S)
            worst = max(worst, res, abs(abs(nval) - 1))
        checks.append(_c(f"{tag}.stabilizer", worst, 1e-9))
    rf = realforms.build_real_form((2, 4))
    s164 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
    checks.append(_c("2_4.s_block_exact", 0.0 if np.array_equal(rf.s, s164) else 1.0, 0.5))
    return checks


def curvature_suite(seed: int = 0, samples: int = 50) -> list:
    n = norden.build_norden_special()
    A = norden.build_A_operators(n)
    trip = bianchi = recomp = trace = weyl_tr = routes = push_w = 0.0
    for k in range(samples):
        R = curvature.random_alg_curvature(seed + k)
        scale = max_abs(R)
        Rs = curvature.tensor_to_spintensor(n, R)
        routes = max(routes, residual(Rs, curvature.spintensor_via_A(n, R, A)) / scale)
        trip = max(trip, residual(curvature.spintensor_to_tensor(n, Rs, A), R) / scale)
        bianchi = max(bianchi, curvature.bianchi_residual(Rs) / scale)
        dec = curvature.decompose(n, Rs)
        recomp = max(recomp, residual(curvature.recompose(dec), Rs) / scale)
        trace = max(trace, residual(np.einsum("kckd->cd", dec.ricci_part), 0.5 * dec.scalar * np.eye(4)) / scale)
        weyl_tr = max(weyl_tr, curvature.weyl_trace_residual(dec.weyl) / scale)
        push_w = max(push_w, residual(curvature.push_weyl(n, dec.weyl, A), curvature.weyl_tensor(n, R)) / scale)
    g = np.eye(6)
    Rc = curvature.kulkarni_nomizu(g, g) / 2
    dc = curvature.decompose(n, curvature.tensor_to_spintensor(n, Rc))
    return [
        _c("two_routes", routes, 1e-10),
        _c("round_trip", trip, 1e-9),
        _c("spinor_bianchi", bianchi, 1e-10),
        _c("recompose", recomp, 1e-10),
        _c("ricci_part_trace", trace, 1e-10),
        _c("weyl_trace_free", weyl_tr, 1e-10),
        _c("weyl_push_forward", push_w, 1e-10),
        _c("constant_curvature_weyl", max_abs(dc.weyl), 1e-10),
    ]


def bivgeo_suite(seed: int = 0, samples: int = 200) -> list:
    n = norden.build_norden_special()
    rng = np.random.default_rng(seed)
    pf_simple = pf_two = 0.0
    for _ in range(samples):
        X, Y = random_complex(rng, 4), random_complex(rng, 4)
        pf_simple = max(pf_simple, abs(bivgeo.pfaffian(norden.wedge(X, Y))))
        R = norden.wedge(*random_complex(rng, (2, 4))) + norden.wedge(*random_complex(rng, (2, 4)))
        pf_two = max(pf_two, abs(bivgeo.pfaffian(R) - bivgeo.pfaffian_by_contraction(n, R)))
    X = random_complex(rng, 4)
    Y = random_complex(rng, 4)
    Y -= (X @ Y) / (X @ X.conj()) * X.conj()
    p = np.outer(X, Y)
    pair = bivgeo.extract_null_pair(n, p)
    rf60 = realforms.build_real_form((6, 0))
    h = random_complex(rng, (4, 4))
    R = h - h.conj().T
    R -= np.trace(R) / 4 * np.eye(4)
    cf = bivgeo.canonical_form(rf60, R, n)
    from scipy.stats import unitary_group
    U = unitary_group.rvs(4, random_state=seed)
    U = U / np.linalg.det(U) ** 0.25
    cf2 = bivgeo.canonical_form(rf60, U @ R @ U.conj().T, n)
    rf = realforms.build_real_form((2, 4))
    basis = bivgeo.standard_twistor_basis()
    flag = bivgeo.build_flag(rf, basis, n)
    rot = max(abs(complex(bivgeo.build_flag(rf, bivgeo.rotate_basis(basis, th), n).L @ n.g @ flag.M)
                  + 2 * np.sin(2 * th)) for th in (np.pi / 8, np.pi / 4))
    return [
        _c("pf_simple", pf_simple, 1e-11),
        _c("pf_contraction", pf_two, 1e-11),
        _c("null_pair_reconstruct", residual(pair.outer(), p), 1e-10),
        _c("canonical_trace", abs(np.sum(cf.eigenvalues)), 1e-12),
        _c("canonical_diagonal", residual(cf.U @ R @ cf.U.conj().T, np.diag(cf.eigenvalues)), 1e-10),
        _c("canonical_invariance", residual(cf.eigenvalues, cf2.eigenvalues), 1e-9),
        _c("flag_relations", max(bivgeo.flag_relations(n, flag).values()), 1e-9),
        _c("flag_reality", 0.0 if bivgeo.flag_reality(rf, flag) else 1.0, 0.5),
        _c("flag_rotation_law", rot, 1e-9),
    ]


def octo_suite(seed: int = 0) -> list:
    n = norden.build_norden_special()
    rng = np.random.default_rng(seed)
    e8 = octo.build_eta8()
    checks = [_c(f"eta8.{k}", v, 1e-12) for k, v in octo.eta8_checks(e8).items()]
    t = octo.build_octonion_table(e8)
    oc = octo.octonion_checks(t, seed=seed)
    checks += [
        _c("octonion.unit", oc["unit"], 1e-9),
        _c("octonion.composition", oc["composition"], 1e-9),
        _c("octonion.alternative", oc["alternative"], 1e-9),
        # passes when some basis associator is large
        _c("octonion.non_associative", 0.1 / max(oc["associator_max"], 1e-300), 1.0),
    ]
    m = random_complex(rng, (4, 4))
    r0 = m - m.T
    pairs = octo.generator_from_point(r0, random_complex(rng, (4, 4)))
    ranks = {4: 6, 2: 5, 3: 6}
    for k, want in ranks.items():
        got = octo.generator_system(pairs[:k]).rank
        checks.append(_c(f"rank.{k}_pairs", abs(got - want), 0.5))
    checks.append(_c("gen_to_point", residual(octo.solve_generator_to_point(pairs), r0), 1e-9))
    rs, X0, Y0 = octo.quadric_generator_data(seed, n)
    qp = octo.solve_quadric_to_point(rs, n)
    checks.append(_c("rank.quadric_point", abs(qp.rank - 7), 0.5))
    checks.append(_c("quadric_point_conditions", max(qp.conditions.values()), 1e-9))
    gen = octo.canonical_generator(r0, random_complex(rng, (4, 4)))
    checks.append(_c("family.canonical", abs(octo.family_test(e8, gen) - 1), 0.5))
    refl = np.eye(8)
    refl[[0, 4]] = refl[[4, 0]]
    checks.append(_c("family.reflected", abs(octo.family_test(e8, [refl @ g.vector for g in gen]) + 1), 0.5))
    k = octo.klein_slice(random_complex(rng, (2, 2)), random_complex(rng, 2))
    checks.append(_c("klein_redundancy", k.first_block, 1e-10))
    ri = octo.radius_identities(n, r0)
    checks.append(_c("radius.half_contraction", ri["half_contraction"], 1e-10))
    checks.append(_c("radius.square_half_pf", ri["square_half_pf"], 1e-10))
    hc = octo.homogeneous_coords(r0, n, e8)
    checks.append(_c("homogeneous.norm", hc.norm_residual, 1e-10))
    checks.append(_c("homogeneous.paraboloid_pf", abs(octo.paraboloid_pf(hc) - bivgeo.pfaffian(r0)), 1e-10))
    return checks


SUITES = {
    "norden": norden_suite,
    "cover": cover_suite,
    "realform": realform_suite,
    "curvature": curvature_suite,
    "bivgeo": bivgeo_suite,
    "octo": octo_suite,
}


def run_suite(name: str, seed: int = 0, tol: float | None = None) -> Report:
    start = time.perf_counter()
    checks = SUITES[name](seed=seed)
    if tol is not None:
        checks = [Check(c.name, c.residual, tol) for c in checks]
    return Report(name, checks, time.perf_counter() - start)
