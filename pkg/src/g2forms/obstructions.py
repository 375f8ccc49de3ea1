"""Checkable nonexistence arguments for coclosed G2-structures.

Three tools:

* ``check_obs3``: given vectors X, Y (possibly depending on the parameters
  of the generic closed 4-form kappa) with (iota_X iota_Y kappa)^2 = 0, no
  closed 4-form can be the dual of a positive 3-form.  A certificate is a
  list of cases with guards (parameters assumed zero).
* ``check_block_structure``: for central X, the K-matrix of
  nu = -pi_*(iota_X tau) keeps span(W) invariant while the W-component of
  sigma = pi_*(tau - pi^* nu ^ eta) vanishes for every 1-form eta.
* ``obs1_probe``: random sampling of lambda(pi_*(iota_X kappa)); a negative
  value shows X gives no obstruction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dsl import parse_form, parse_vector
from .exterior import Form, Vector, blades, contract, hodge_star, indices_of, pullback, wedge_sign
from .liealg import GenericClosedForm, LieAlgebra, NotCentral, closed_forms, differential_matrix
from .polys import PolyK
from .scalars import ZERO, ScalarK
from .stability import FormType, classify_3form_7d, k_matrix
from .structures import PHI0, PSI0


class IdentityFails(AssertionError):
    pass


class CoverageGap(AssertionError):
    pass


class UnknownParameter(ValueError):
    pass


class PatternFails(AssertionError):
    pass


class SigmaNonzero(AssertionError):
    pass


@dataclass
class Obs3Case:
    guards: list
    X: str
    Y: str


@dataclass
class ObstructionCertificate:
    algebra_id: str
    cases: list

    @classmethod
    def from_data(cls, algebra_id: str, data: list) -> ObstructionCertificate:
        return cls(algebra_id, [Obs3Case(list(c.get("guards", [])), str(c["X"]), str(c["Y"])) for c in data])


@dataclass
class CaseReport:
    guards: list
    X: str
    Y: str
    identities: int
    nonvanishing: str


@dataclass
class Obs3Report:
    algebra_id: str
    closed_dim: int
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return True


def _as_poly(c):
    return c if isinstance(c, PolyK) else PolyK.const(c)


def _zero_guards(x, guards: dict):
    return _as_poly(x).subs(guards) if guards else _as_poly(x)


def _parameter_vector(text: str, dim: int) -> Vector:
    v = parse_vector(text, dim)
    return v.map_coeffs(_as_poly)


def obs3_square(kappa: Form, X: Vector, Y: Vector) -> Form:
    inner = contract(X, contract(Y, kappa))
    return inner.wedge(inner)


def _nonvanishing_reason(v: Vector, earlier_single_guards: set):
    """Why the vector cannot vanish on the case's domain, or None."""
    for c in v.coords:
        p = _as_poly(c)
        if p.is_constant() and p:
            return "constant coordinate"
    for c in v.coords:
        p = _as_poly(c)
        if len(p.terms) == 1:
            (m, coef), = p.terms.items()
            if len(m) == 1 and m[0][1] == 1 and m[0][0] in earlier_single_guards:
                return f"coordinate is a multiple of {m[0][0]}, nonzero once earlier cases are excluded"
    return None


def check_obs3(g: LieAlgebra, cert: ObstructionCertificate, kappa: GenericClosedForm | None = None,
               substitution: dict | None = None) -> Obs3Report:
    """Verify every case identity and the coverage of the case split.

    ``substitution`` optionally re-expresses the parameters (used to test
    invariance under a change of basis of the closed forms).
    """
    if kappa is None:
        kappa = closed_forms(g, 4)
    params = set(kappa.names)
    form = kappa.assembled()
    report = Obs3Report(cert.algebra_id, len(kappa))
    single_guards = set()
    n_forms = len(blades(g.dim, 4))
    for k, case in enumerate(cert.cases):
        X = _parameter_vector(case.X, g.dim)
        Y = _parameter_vector(case.Y, g.dim)
        used = set(case.guards)
        for v in (X, Y):
            for c in v.coords:
                used.update(_as_poly(c).variables())
        unknown = used - params
        if unknown:
            raise UnknownParameter(f"case {k + 1} mentions {sorted(unknown)} which are not closed-form parameters")
        guards = {name: PolyK() for name in case.guards}
        kap = form.map_coeffs(lambda c: _zero_guards(c, guards))
        Xg = X.map_coeffs(lambda c: _zero_guards(c, guards))
        Yg = Y.map_coeffs(lambda c: _zero_guards(c, guards))
        if substitution:
            kap = kap.map_coeffs(lambda c: _as_poly(c).subs(substitution))
            Xg = Xg.map_coeffs(lambda c: _as_poly(c).subs(substitution))
            Yg = Yg.map_coeffs(lambda c: _as_poly(c).subs(substitution))
        sq = obs3_square(kap, Xg, Yg)
        if sq:
            m, c = sq.items()[0]
            raise IdentityFails(f"case {k + 1}: coefficient of e^{''.join(map(str, indices_of(m)))} "
                                f"in (iota_X iota_Y kappa)^2 is {c}")
        reasons = []
        for name, v in (("X", Xg), ("Y", Yg)):
            if substitution:
                v = (X if name == "X" else Y).map_coeffs(lambda c: _zero_guards(c, guards))
            r = _nonvanishing_reason(v, single_guards)
            if r is None:
                raise CoverageGap(f"case {k + 1}: {name} = {v} may vanish on the parameters this case handles")
            reasons.append(f"{name}: {r}")
        report.cases.append(CaseReport(case.guards, case.X, case.Y, n_forms, "; ".join(reasons)))
        if len(case.guards) == 1:
            single_guards.add(case.guards[0])
    if any(c.guards for c in cert.cases[-1:]):
        raise CoverageGap("the last case has guards, so some parameter values are not handled")
    return report


def basis_pair_certificates(g: LieAlgebra, kappa: GenericClosedForm | None = None) -> list:
    """All basis pairs (i, j), i < j, with (iota_{e_i} iota_{e_j} kappa)^2 = 0."""
    if kappa is None:
        kappa = closed_forms(g, 4)
    form = kappa.assembled()
    n = g.dim
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not obs3_square(form, Vector.basis(n, i), Vector.basis(n, j)):
                out.append((i, j))
    return out


@dataclass
class BlockStructureProof:
    algebra_id: str
    X: str
    zero_pattern: list
    W: list
    sigma_word: str

    @classmethod
    def from_data(cls, algebra_id: str, data: dict) -> BlockStructureProof:
        pattern = []
        for item in data["zero_pattern"]:
            for a in item["rows"]:
                for b in item["cols"]:
                    pattern.append((a, b))
        return cls(algebra_id, str(data.get("X", "7")), pattern, list(data["W"]), str(data["sigma"]))


@dataclass
class BlockReport:
    algebra_id: str
    pattern_entries: int
    invariant: bool
    sigma_coefficient: str
    nu: Form
    status: str = "Obstructed"


def _basis_index(x: Vector) -> int:
    nz = [i for i, c in enumerate(x.coords, 1) if c]
    if len(nz) != 1 or x.coords[nz[0] - 1] != 1:
        raise ValueError("block-structure proofs use a basis vector X")
    return nz[0]


def check_block_structure(g: LieAlgebra, proof: BlockStructureProof) -> BlockReport:
    x = parse_vector(proof.X, g.dim)
    if not g.is_central(x):
        raise NotCentral(f"{x} is not central")
    p = _basis_index(x)
    keep = [i for i in range(1, g.dim + 1) if i != p]
    kappa = closed_forms(g, 4)
    tau = kappa.assembled().map_coeffs(_as_poly)

    def project(a: Form) -> Form:
        # forms on g written in e^i (i != p) descend verbatim to h
        t = {}
        for m, c in a.terms.items():
            if m >> (p - 1) & 1:
                continue
            nm = 0
            for new, old in enumerate(keep):
                if m >> (old - 1) & 1:
                    nm |= 1 << new
            t[nm] = c
        return Form(g.dim - 1, t)

    nu = -project(contract(x, tau))
    K = k_matrix(nu)
    for a, b in proof.zero_pattern:
        if K[a - 1][b - 1]:
            raise PatternFails(f"K[{a}][{b}] = {K[a - 1][b - 1]} is not identically zero")
    # span(W) is K-invariant iff K[a][b] = 0 whenever b is in W and a is not
    needed = {(a, b) for b in proof.W for a in range(1, g.dim) if a not in proof.W}
    missing = needed - set(proof.zero_pattern)
    invariant = not missing or all(not K[a - 1][b - 1] for a, b in missing)
    if not invariant:
        raise PatternFails(f"span{proof.W} is not K-invariant")
    lift = [[ScalarK(1) if j == old else ScalarK(0) for j in range(1, g.dim + 1)] for old in keep]
    eta = Form(g.dim, {1 << (r - 1): PolyK.var(f"C{r}") for r in range(1, g.dim + 1)})
    rest = tau - pullback(nu, lift).wedge(eta)
    sigma = project(rest)
    word = [int(ch) for ch in proof.sigma_word]
    coef = sigma.coefficient(word)
    if coef:
        raise SigmaNonzero(f"coefficient of e^{proof.sigma_word} in sigma is {coef}")
    return BlockReport(proof.algebra_id, len(proof.zero_pattern), invariant, "0", nu)


@dataclass
class ProbeReport:
    samples: int
    witness: dict | None
    witness_lambda: Fraction | None

    @property
    def status(self) -> str:
        return "not obstructed via X" if self.witness is not None else "candidate obstruction"


def _k_tensor(dim: int = 6):
    """T[a, b, I, J] with K[a][b] = sum_IJ T[a,b,I,J] rho_I rho_J."""
    threes = blades(dim, 3)
    pos = {m: i for i, m in enumerate(threes)}
    full = (1 << dim) - 1
    T = np.zeros((dim, dim, len(threes), len(threes)), dtype=np.int64)
    for b in range(1, dim + 1):
        bit = 1 << (b - 1)
        for I in threes:
            if not I & bit:
                continue
            s1 = -1 if bin(I & (bit - 1)).count("1") & 1 else 1
            two = I ^ bit
            for J in threes:
                if two & J:
                    continue
                five = two | J
                s2 = wedge_sign(two, J)
                a_bit = full ^ five
                a = indices_of(a_bit)[0]
                s3 = wedge_sign(five, a_bit)
                T[a - 1, b - 1, pos[I], pos[J]] += s1 * s2 * s3
    return T, threes


def obs1_probe(g: LieAlgebra, x: Vector, samples: int = 1000, seed: int = 0, bound: int = 3) -> ProbeReport:
    if not g.is_central(x):
        raise NotCentral(f"{x} is not central")
    kappa = closed_forms(g, 4)
    q = g.quotient_by_central(x)
    # nu for each basis closed form, as rational vectors over the 3-blades of h
    T, threes = _k_tensor(g.dim - 1)
    cols = []
    for b in kappa.basis:
        nu = q.push(contract(x, b))
        row = []
        for m in threes:
            c = nu.terms.get(m, ScalarK(0))
            if not c.is_rational():
                raise ValueError("sampling needs rational closed forms")
            row.append(c.to_rational())
        cols.append(row)
    den = 1
    for row in cols:
        for v in row:
            den = den * v.denominator // np.gcd(den, v.denominator)
    A = np.array([[int(v * den) for v in row] for row in cols], dtype=np.int64)
    rng = random.Random(seed)
    chunk = 256
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        C = np.array([[rng.randint(-bound, bound) for _ in kappa.names] for _ in range(n)], dtype=np.int64)
        V = C @ A
        K = np.einsum("abij,si,sj->sab", T, V, V)
        lam6 = np.einsum("sab,sba->s", K, K)
        neg = np.nonzero(lam6 < 0)[0]
        if len(neg):
            s = int(neg[0])
            point = {name: int(C[s, i]) for i, name in enumerate(kappa.names)}
            lam = Fraction(int(lam6[s]), 6 * den ** 4)
            return ProbeReport(done + s + 1, point, lam)
        done += n
    return ProbeReport(samples, None, None)


@dataclass
class SearchReport:
    samples: int
    witness: dict | None

    @property
    def status(self) -> str:
        return "coclosed structure found" if self.witness is not None else "none found"


def perturbed_standard_form(a, alpha: list) -> tuple:
    """(phi, Phi) for phi = (a^2 - |alpha|^2) phi0 + 2a *(alpha ^ phi0) + 2 sum_jk alpha_j alpha_k e^j ^ iota_k phi0.

    For a^2 + |alpha|^2 = 1 this is positive with the metric of phi0 and
    Phi = *phi = (a^2 - |alpha|^2) psi0 + 2a alpha ^ phi0 + *(2 sum ...).
    Otherwise both scale by a positive factor, so d Phi = 0 is still the
    coclosed condition.  Coefficients may be ScalarK or PolyK.
    """
    phi0 = parse_form(PHI0, 7)
    al = Form(7, {1 << j: c for j, c in enumerate(alpha) if c})
    norm2 = ZERO
    for c in alpha:
        norm2 = c * c + norm2
    quad = Form(7)
    for k in range(7):
        if alpha[k]:
            quad = quad + al.wedge(contract(Vector.basis(7, k + 1), phi0)) * (alpha[k] * 2)
    phi = phi0 * (a * a - norm2) + hodge_star(al.wedge(phi0)) * (a * 2) + quad
    Phi = parse_form(PSI0, 7) * (a * a - norm2) + al.wedge(phi0) * (a * 2) + hodge_star(quad)
    return phi, Phi


def _quadratic_table(Phi: Form, names: list) -> tuple:
    """Q[J, u, v] with Phi_J = sum_uv Q[J,u,v] x_u x_v for x = (a, alpha)."""
    words = blades(7, 4)
    pos = {m: r for r, m in enumerate(words)}
    idx = {n: k for k, n in enumerate(names)}
    Q = np.zeros((len(words), len(names), len(names)))
    for m, c in Phi.terms.items():
        for mono, coef in c.terms.items():
            vs = [n for n, k in mono for _ in range(k)]
            Q[pos[m], idx[vs[0]], idx[vs[1]]] += float(coef)
    return Q, words


def random_coclosed_search(g: LieAlgebra, samples: int = 10_000, seed: int = 0, bound: int = 2) -> SearchReport:
    """Look for a closed dual among random rational positive 3-forms.

    Candidates are M^* phi for phi from ``perturbed_standard_form`` at an
    integer point (a, alpha) and a random integer frame M; their duals are
    M^* Phi.  A float hit is confirmed exactly before it is reported.
    """
    if g.dim != 7:
        raise ValueError("the search is for 7-dimensional algebras")
    names = ["a"] + [f"alpha{i}" for i in range(1, 8)]
    _, Phi = perturbed_standard_form(PolyK.var("a"), [PolyK.var(v) for v in names[1:]])
    Q, words = _quadratic_table(Phi, names)
    W = np.array([[i - 1 for i in indices_of(m)] for m in words])
    mat, _, _ = differential_matrix(g, 4)
    D = np.array([[float(c) for c in r] for r in mat])
    rng = np.random.default_rng(seed)
    done = 0
    chunk = 128
    while done < samples:
        b = min(chunk, samples - done)
        x = rng.integers(-bound, bound + 1, size=(b, 8)).astype(float)
        M = rng.integers(-bound, bound + 1, size=(b, 7, 7)).astype(float)
        base = np.einsum("juv,bu,bv->bj", Q, x, x)
        minors = np.rint(np.linalg.det(M[:, W[:, None, :, None], W[None, :, None, :]]))
        pulled = np.einsum("bi,bij->bj", base, minors)
        scale = np.abs(pulled).max(axis=1) + 1.0
        closed = np.abs(pulled @ D.T).max(axis=1) < 1e-9 * scale
        ok = (np.abs(np.linalg.det(M)) > 0.5) & (np.abs(x).sum(axis=1) > 0)
        for s in np.nonzero(ok & closed)[0]:
            point = [int(v) for v in x[s]]
            frame = [[ScalarK(int(c)) for c in row] for row in M[s]]
            phi, Phi_s = perturbed_standard_form(ScalarK(point[0]), [ScalarK(v) for v in point[1:]])
            if not g.d(pullback(Phi_s, frame)) and classify_3form_7d(pullback(phi, frame)) is FormType.POSITIVE:
                return SearchReport(done + int(s) + 1, {"point": dict(zip(names, point)),
                                                        "frame": M[s].astype(int).tolist()})
        done += b
    return SearchReport(samples, None)
