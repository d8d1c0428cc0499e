"""Betti numbers, Lefschetz coincidence numbers and the coincidence criteria.

Homology is the Kronecker dual of cohomology on the same index set, so the
pushforward f_* on H_q is the transpose of f's matrix on H^q.  Poincare
duality sends the basis element (lam, flag) of H^j to (lam^c, 1 - flag) in
H_{m+2d-j}, with no extra signs.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .chernpoly import evaluate
from .endo import (
    GradedEndo,
    classify,
    compose,
    endo_from_json,
    homer_hypothesis,
    is_automorphism,
    is_well_defined,
    make_adams,
    make_complement,
    make_u_family,
    matrix_of,
    preserves_grassmannian,
    restricts_to_fixed,
    theta_endo,
)
from .grassring import GrassClass, RingContext, chern_class, jacobi_trudi
from .linalg import RatMatrix, rank, trace
from .partitions import complement, gaussian_binomial
from .productring import ProductClass, ProductContext


def betti(n: int, k: int) -> List[int]:
    """Even Betti numbers d_0, d_2, ..., d_{2d} of CG_{n,k}."""
    return gaussian_binomial(n, k)


def weighted_sum(n: int, k: int, lam) -> Fraction:
    lam = Fraction(lam)
    return sum((Fraction(b) * lam ** i for i, b in enumerate(betti(n, k))), Fraction(0))


def euler_real(n: int, k: int) -> int:
    """Euler characteristic of the real Grassmannian RG_{n,k}: the alternating Betti sum."""
    return sum((-1) ** i * b for i, b in enumerate(betti(n, k)))


def nonvanishing_certificate(n: int, k: int) -> dict:
    """Why sum_i d_{2i} lam^i has no rational root when k(n-k) is even.

    The polynomial has constant and leading coefficient 1, so the only
    rational-root candidates are +1 and -1; both values are computed.
    """
    d = k * (n - k)
    if d % 2:
        raise ValueError(f"k(n-k) = {d} is odd; the nonvanishing lemma needs it even")
    b = betti(n, k)
    at_one = weighted_sum(n, k, 1)
    at_minus_one = weighted_sum(n, k, -1)
    chi = euler_real(n, k)
    ok = b[0] == 1 and b[-1] == 1 and at_one != 0 and at_minus_one != 0
    return {
        "n": n,
        "k": k,
        "d": d,
        "betti": b,
        "constant_coefficient": b[0],
        "leading_coefficient": b[-1],
        "rational_root_candidates": ["1", "-1"],
        "value_at_1": str(at_one),
        "binomial": comb(n, k),
        "value_at_minus_1": str(at_minus_one),
        "euler_real": chi,
        "no_rational_root": ok,
    }


def lefschetz_closed_grass(n: int, k: int, mu, lam) -> Fraction:
    """sum_i d_{2i} mu^i lam^{d-i} for an Adams pair (f: mu, g: lam)."""
    mu, lam = Fraction(mu), Fraction(lam)
    b = betti(n, k)
    d = len(b) - 1
    return sum((bi * mu ** i * lam ** (d - i) for i, bi in enumerate(b)), Fraction(0))


def lefschetz_closed_product(m, n, k, lam, mu, lam1, mu1, twisted=False, family="adams") -> Fraction:
    """Closed forms for L(f, g) and L(theta o f, g) on S^m x CG_{n,k}.

    ``family="adams"``: f has c_i -> lam^i c_i, u -> mu u.
    ``family="u_family"``: f has c_i -> u P_i, and only the d_0 term survives.
    g is always the Adams map (lam1, mu1).  The odd-m branch reproduces the
    printed formulas, which differ from the literal alternating trace.
    """
    lam, mu, lam1, mu1 = (Fraction(x) for x in (lam, mu, lam1, mu1))
    b = betti(n, k)
    d = len(b) - 1
    if twisted:
        factor = (mu1 - mu) if m % 2 == 0 else (mu1 + mu)
        base = -lam
    else:
        factor = mu1 + mu
        base = lam
    if family == "adams":
        total = sum((bi * base ** i * lam1 ** (d - i) for i, bi in enumerate(b)), Fraction(0))
    elif family == "u_family":
        total = b[0] * lam1 ** d
    else:
        raise ValueError(f"unknown family {family!r}")
    return factor * total


# -- trace machinery ----------------------------------------------------

def duality_matrix(ctx: ProductContext, q: int) -> RatMatrix:
    """Poincare duality H^{dim-q} -> H_q as a permutation matrix."""
    src = ctx.basis(ctx.dim - q)
    dst = {b: i for i, b in enumerate(ctx.basis(q))}
    box = ctx.inner.box
    mat = RatMatrix.zeros(len(dst), len(src))
    for j, (lam, flag) in enumerate(src):
        mat.data[dst[(complement(lam, box), 1 - flag)]][j] = Fraction(1)
    return mat


def pushforward(f: GradedEndo, q: int) -> RatMatrix:
    return matrix_of(f, q).transpose()


def pushforward_blocks(f: GradedEndo, q: int) -> Dict[str, RatMatrix]:
    """Split f_* on H_q into blocks between H^CG_q (grass) and theta (x) H^CG_{q-m} (sphere)."""
    basis = f.ctx.basis(q)
    grass = [i for i, (_, flag) in enumerate(basis) if flag == 0]
    sphere = [i for i, (_, flag) in enumerate(basis) if flag == 1]
    fs = pushforward(f, q)
    # entry (i, j) is the coefficient of basis i in f_*(basis j)
    return {
        "grass_to_grass": fs.submatrix(grass, grass),
        "grass_to_sphere": fs.submatrix(sphere, grass),
        "sphere_to_grass": fs.submatrix(grass, sphere),
        "sphere_to_sphere": fs.submatrix(sphere, sphere),
    }


def _slice_traces(f: GradedEndo, g: GradedEndo) -> List[Fraction]:
    ctx = f.ctx
    out = []
    for q in range(ctx.dim + 1):
        if not ctx.basis(q):
            out.append(Fraction(0))
            continue
        dual = duality_matrix(ctx, q)
        gq = matrix_of(g, ctx.dim - q)
        out.append(trace(dual @ gq @ dual.transpose() @ pushforward(f, q)))
    return out


@dataclass
class LefschetzReport:
    value_untwisted: Fraction
    value_twisted: Fraction
    method: str
    slice_traces: List[dict]
    unsigned_untwisted: Fraction = None
    unsigned_twisted: Fraction = None
    convention_discrepancy: bool = False
    twisted: bool = False

    @property
    def value(self) -> Fraction:
        return self.value_twisted if self.twisted else self.value_untwisted

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "L_untwisted": str(self.value_untwisted),
            "L_twisted": str(self.value_twisted),
            "unsigned_convention_untwisted": None if self.unsigned_untwisted is None else str(self.unsigned_untwisted),
            "unsigned_convention_twisted": None if self.unsigned_twisted is None else str(self.unsigned_twisted),
            "convention_discrepancy": self.convention_discrepancy,
            "slice_traces": self.slice_traces,
        }


def lefschetz_trace(f: GradedEndo, g: GradedEndo, twisted: bool = False) -> LefschetzReport:
    """L(f, g) = sum_q (-1)^q tr(D g* D^{-1} f_* on H_q), plain and theta-twisted.

    Both sign conventions are reported: the literal alternating sum and the
    one that weights theta (x) H_{2i} by (-1)^{2i} as the printed closed forms
    do.  They agree for even m.
    """
    if f.ctx != g.ctx:
        raise ValueError("f and g act on different rings")
    for name, h in (("f", f), ("g", g)):
        v = is_well_defined(h)
        if not v.well_defined:
            raise ValueError(f"{name} is not well defined ({v.failing_relation})")
    ctx = f.ctx
    plain = _slice_traces(f, g)
    tw = _slice_traces(compose(theta_endo(ctx), f), g)
    ledger = []
    lit_u = lit_t = uns_u = uns_t = Fraction(0)
    for q in range(ctx.dim + 1):
        sign = (-1) ** q
        lit_u += sign * plain[q]
        lit_t += sign * tw[q]
        uns_u += plain[q]
        uns_t += tw[q]
        if ctx.basis(q):
            ledger.append({"degree": q, "sign": sign, "trace_untwisted": str(plain[q]), "trace_twisted": str(tw[q])})
    return LefschetzReport(
        lit_u, lit_t, "trace", ledger, uns_u, uns_t,
        convention_discrepancy=(lit_u != uns_u or lit_t != uns_t), twisted=twisted,
    )


# -- bare Grassmannian ----------------------------------------------------

def grass_matrix(ctx: RingContext, c_images: Sequence[GrassClass], weight: int) -> RatMatrix:
    basis = ctx.basis(weight)
    cols = [evaluate(jacobi_trudi(ctx, lam), c_images).vector(2 * weight) for lam in basis]
    return RatMatrix.from_columns(cols, len(basis))


def adams_images(ctx: RingContext, lam) -> List[GrassClass]:
    lam = Fraction(lam)
    return [chern_class(ctx, i).scale(lam ** i) for i in range(1, ctx.k + 1)]


def lefschetz_trace_grass(ctx: RingContext, f_images: Sequence[GrassClass], g_images: Sequence[GrassClass]) -> Fraction:
    """Lefschetz coincidence number on CG_{n,k} itself (all degrees even)."""
    total = Fraction(0)
    box = ctx.box
    for i in range(ctx.d + 1):
        src = ctx.basis(ctx.d - i)
        dst = {lam: j for j, lam in enumerate(ctx.basis(i))}
        dual = RatMatrix.zeros(len(dst), len(src))
        for j, lam in enumerate(src):
            dual.data[dst[complement(lam, box)]][j] = Fraction(1)
        fs = grass_matrix(ctx, f_images, i).transpose()
        gq = grass_matrix(ctx, g_images, ctx.d - i)
        total += trace(dual @ gq @ dual.transpose() @ fs)
    return total


# -- criteria -----------------------------------------------------------

_DESCRIPTOR = re.compile(r"^\s*(adams|complement)\s*\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)\s*$")


def endo_from_descriptor(ctx: ProductContext, data) -> GradedEndo:
    """Resolve a GradedEndo, a family descriptor or an endomorphism JSON object.

    Descriptors: ``"adams(l,mu)"``, ``"complement(l,mu)"``, ``"identity"``, or
    dicts ``{"family": "adams"|"complement", "lambda": .., "mu": ..}``,
    ``{"family": "u_family", "P": [<class>..], "Q": <class>}``,
    ``{"c": [...], "u": ...}``.
    """
    from .expr import parse_class

    if isinstance(data, GradedEndo):
        if data.ctx != ctx:
            raise ValueError("endomorphism belongs to a different ring")
        return data
    if isinstance(data, str):
        text = data.strip()
        if text == "identity":
            return make_adams(ctx, 1, 1)
        match = _DESCRIPTOR.match(text)
        if not match:
            raise ValueError(f"malformed family descriptor {data!r}")
        family, a, b = match.groups()
        data = {"family": family, "lambda": a, "mu": b}
    if not isinstance(data, dict):
        raise ValueError(f"malformed family descriptor {data!r}")
    if "c" in data:
        return endo_from_json(ctx, data)
    family = data.get("family")
    try:
        if family == "adams":
            return make_adams(ctx, Fraction(str(data["lambda"])), Fraction(str(data["mu"])))
        if family == "complement":
            return make_complement(ctx, Fraction(str(data["lambda"])), Fraction(str(data["mu"])))
        if family == "u_family":
            P = [parse_class(t, ctx.inner) for t in data["P"]]
            return make_u_family(ctx, P, parse_class(data["Q"], ctx))
    except (KeyError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed family descriptor {data!r}: {exc}") from None
    raise ValueError(f"unknown family {family!r}")


def _grass_images_from_descriptor(ctx: RingContext, data) -> List[GrassClass]:
    from .expr import parse_class

    if isinstance(data, str):
        match = _DESCRIPTOR.match(data)
        if data.strip() == "identity":
            return adams_images(ctx, 1)
        if not match or match.group(1) != "adams":
            raise ValueError(f"malformed Grassmannian descriptor {data!r}")
        return adams_images(ctx, Fraction(match.group(2)))
    if isinstance(data, dict):
        if "c" in data:
            return [parse_class(t, ctx) for t in data["c"]]
        if data.get("family") == "adams":
            return adams_images(ctx, Fraction(str(data["lambda"])))
    raise ValueError(f"malformed Grassmannian descriptor {data!r}")


CONCLUSIONS = ("coincidence_guaranteed", "not_decided")


@dataclass
class CriteriaVerdict:
    theorem_applied: str
    hypotheses_checked: List[Tuple[str, bool]]
    conclusion: str
    witnesses: List[Fraction]
    all_hypotheses: Dict[str, List[Tuple[str, bool]]] = field(default_factory=dict)
    lefschetz: Optional[dict] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "theorem_applied": self.theorem_applied,
            "conclusion": self.conclusion,
            "hypotheses_checked": [[name, ok] for name, ok in self.hypotheses_checked],
            "all_hypotheses": {t: [[n, ok] for n, ok in hs] for t, hs in self.all_hypotheses.items()},
            "witnesses": [str(w) for w in self.witnesses],
            "lefschetz": self.lefschetz,
            "notes": self.notes,
        }


def _grass_criteria(n: int, k: int, f_data, g_data) -> CriteriaVerdict:
    ctx = RingContext(n, k)
    f_imgs = _grass_images_from_descriptor(ctx, f_data)
    g_imgs = _grass_images_from_descriptor(ctx, g_data)
    g_auto = all(rank(grass_matrix(ctx, g_imgs, w)) == len(ctx.basis(w)) for w in range(ctx.d + 1))
    c1 = chern_class(ctx, 1)
    lam_f = f_imgs[0].coefficient((1,))
    f_adams = all(img == c.scale(lam_f ** i) for i, (img, c) in enumerate(
        zip(f_imgs, [chern_class(ctx, i) for i in range(1, k + 1)]), start=1))
    hyps = [
        ("hypothesis (Homer)", homer_hypothesis(n, k)),
        ("k(n-k) even", (k * (n - k)) % 2 == 0),
        ("g* automorphism (nonzero Brouwer degree shadow)", g_auto),
        ("f* is an Adams map", f_adams and f_imgs[0] in (c1.scale(lam_f),)),
    ]
    value = lefschetz_trace_grass(ctx, f_imgs, g_imgs)
    name = "CP of CGnk"
    lef = {"L": str(value)}
    if all(ok for _, ok in hyps) and value != 0:
        return CriteriaVerdict(name, hyps, "coincidence_guaranteed", [value], {name: hyps}, lef)
    return CriteriaVerdict("none", hyps, "not_decided", [], {name: hyps}, lef)


def coincidence_criteria(m: int, n: int, k: int, f_data, g_data) -> CriteriaVerdict:
    """Decide coincidence for f, g on P(m,n,k) from the coincidence theorems.

    ``m = 0`` means the bare Grassmannian CG_{n,k}.  Theorems are tried in a
    fixed order and the first whose hypotheses all hold and whose Lefschetz
    witness is nonzero decides; every hypothesis verdict is reported.
    Topological hypotheses are checked through their algebraic shadows.
    """
    if m == 0:
        return _grass_criteria(n, k, f_data, g_data)
    ctx = ProductContext.of(m, n, k)
    f = endo_from_descriptor(ctx, f_data)
    g = endo_from_descriptor(ctx, g_data)
    for name, h in (("f", f), ("g", g)):
        v = is_well_defined(h)
        if not v.well_defined:
            raise ValueError(f"{name} is not well defined ({v.failing_relation} -> {v.residue})")

    report = lefschetz_trace(f, g)
    f_cls, g_cls = classify(f), classify(g)
    d = k * (n - k)
    homer = homer_hypothesis(n, k)
    d_even = d % 2 == 0
    g_auto = is_automorphism(g)
    mu1 = g_cls.mu if g_cls.u_kind == "scalar" else None
    mu = f_cls.mu if f_cls.u_kind == "scalar" else Fraction(0)
    f_scalar_u = f_cls.u_kind == "scalar"
    lifts = restricts_to_fixed(f) and restricts_to_fixed(g)
    m_odd_ok = (m % 2 == 0) or (mu1 is not None and mu1 != -mu)
    f_c1_not_au = not f.c_images[0].even.is_zero()
    g_restricted_onto = preserves_grassmannian(g) and all(
        rank(matrix_of(g, 2 * w).submatrix(
            [i for i, (_, fl) in enumerate(ctx.basis(2 * w)) if fl == 0],
            [i for i, (_, fl) in enumerate(ctx.basis(2 * w)) if fl == 0],
        )) == len(ctx.inner.basis(w))
        for w in range(ctx.d + 1)
    )

    theorems = [
        ("coincidence thm", [
            ("k < n-k", k < n - k),
            ("k(n-k) even", d_even),
            ("f, g commute with theta* (lift shadow)", lifts),
            ("(1) g* automorphism", g_auto),
            ("(2) f*(c_1) != a u", f_c1_not_au),
            ("(3) m odd => mu1 != -mu", m_odd_ok),
        ]),
        ("coincidence thm under hom", [
            ("hypothesis (Homer)", homer),
            ("k(n-k) even", d_even),
            ("f, g commute with theta* (lift shadow)", lifts),
            ("(1) g* automorphism", g_auto),
            ("(2) m even and f*(H_CG) not in H_CG => f*(u) = mu u",
             not (m % 2 == 0 and not preserves_grassmannian(f)) or f_scalar_u),
            ("(3) m odd => mu1 != -mu", m_odd_ok),
        ]),
        ("corollary m>2k", [
            ("m even", m % 2 == 0),
            ("k(n-k) even", d_even),
            ("m > 2k", m > 2 * k),
            ("hypothesis (Homer)", homer),
            ("f, g commute with theta* (lift shadow)", lifts),
            ("g* automorphism", g_auto),
        ]),
        ("final prop", [
            ("hypothesis (Homer)", homer),
            ("k(n-k) even", d_even),
            ("f, g commute with theta* (lift shadow)", lifts),
            ("(1) g*(H_CG) = H_CG", g_restricted_onto),
            ("(2) f*(u) = mu u, mu != 0", f_scalar_u and mu != 0),
            ("m odd => mu1 != -mu", m_odd_ok),
        ]),
    ]
    lef = report.to_json()
    witnesses = [w for w in (report.value_untwisted, report.value_twisted) if w != 0]
    notes = []
    if report.convention_discrepancy:
        notes.append("odd m: literal alternating trace and printed closed-form convention differ")
    all_hyps = {name: hyps for name, hyps in theorems}
    for name, hyps in theorems:
        if all(ok for _, ok in hyps):
            if witnesses:
                return CriteriaVerdict(name, hyps, "coincidence_guaranteed", witnesses, all_hyps, lef, notes)
            notes.append(f"{name}: hypotheses hold but both literal Lefschetz numbers vanish")
    return CriteriaVerdict("none", [], "not_decided", [], all_hyps, lef, notes)
