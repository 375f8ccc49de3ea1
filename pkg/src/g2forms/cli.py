"""Command-line interface.

Exit codes: 0 when every requested check passes, 1 when a check fails
(or, with --strict, is flagged), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys

from .catalog import InvariantViolation, ParseError, by_id, load_catalog
from .catalog.report import exit_code, render_report
from .catalog.verify import verify_catalog, verify_entry
from .curvature import NotUnit as ContactNotUnit
from .curvature import contact_check, nilsoliton_check
from .dsl import DSLSyntaxError, DuplicateIndex, IndexOutOfRange, format_form, parse_form, parse_scalar, parse_vector
from .exterior import Metric
from .liealg import LieAlgebra, NotCentral, NotNilpotent, closed_forms
from .obstructions import ObstructionCertificate, basis_pair_certificates, check_obs3, obs1_probe
from .stability import IrrationalNinthRoot, NotPositive, classify_3form_7d, induced_metric, lambda_invariant
from .structures import (G2Structure, NotHalfFlat, NotUnit, SU3Structure, coclosed_from_half_flat, su3_reduce,
                         verify_g2, verify_su3)


class UsageError(Exception):
    pass


def _out(text: str = ""):
    sys.stdout.write(text + "\n")


def _catalog(args):
    if getattr(args, "_entries", None) is None:
        args._entries = load_catalog(args.catalog)
    return args._entries


def _entry(args, key: str):
    entries = by_id(_catalog(args))
    if key not in entries:
        raise UsageError(f"unknown catalog entry {key!r}")
    return entries[key]


def _algebra(args, text: str) -> LieAlgebra:
    """A catalog id or a structure-equation string."""
    if text.lstrip().startswith("("):
        return LieAlgebra.parse(text)
    return _entry(args, text).algebra


def _matrix_lines(M: list) -> list:
    return ["  [" + ", ".join(str(x) for x in row) + "]" for row in M]


def _finish(args, results: list) -> int:
    sys.stdout.write(render_report(results, args.format).decode())
    return exit_code(results, args.strict)


# -- subcommands ---------------------------------------------------------------

def cmd_parse(args) -> int:
    g = _algebra(args, args.equations)
    ok = g.is_jacobi()
    _out(g.equations())
    _out(f"jacobi: {'pass' if ok else 'fail'}")
    if ok:
        try:
            _out(f"step: {g.nilpotency_step()}")
        except ValueError:
            _out("step: not nilpotent")
    return 0 if ok else 1


def cmd_closed_forms(args) -> int:
    g = _algebra(args, args.algebra)
    if not 0 <= args.degree <= g.dim:
        raise UsageError(f"degree {args.degree} out of range 0..{g.dim}")
    k = closed_forms(g, args.degree)
    _out(f"dim {len(k)}")
    _out(f"generic: {format_form(k.assembled())}")
    for name, b in zip(k.names, k.basis):
        _out(f"  {name}: {format_form(b)}")
    return 0


def cmd_classify(args) -> int:
    f = parse_form(args.form, args.dim)
    if args.dim == 7:
        _out(classify_3form_7d(f).value)
    elif args.dim == 6:
        lam = lambda_invariant(f)
        kind = "stable, lambda < 0" if lam.sign() < 0 else "stable, lambda > 0" if lam.sign() > 0 else "not stable"
        _out(f"lambda = {lam} ({kind})")
    else:
        raise UsageError("classify works in dimension 6 or 7")
    return 0


def cmd_metric(args) -> int:
    f = parse_form(args.form, 7)
    try:
        g = induced_metric(f)
    except NotPositive as exc:
        _out(f"not positive: {exc}")
        return 1
    except IrrationalNinthRoot as exc:
        _out(f"metric not exact: det B = {exc.det}")
        return 1
    _out(f"orientation {g.orientation:+d}")
    for line in _matrix_lines(g.matrix):
        _out(line)
    return 0


def cmd_verify_g2(args) -> int:
    g = _algebra(args, args.algebra)
    r = verify_g2(g, parse_form(args.phi, g.dim))
    _out(f"positive: {r.positive}")
    if not r.positive:
        _out(r.note)
        return 1
    _out(f"closed: {r.closed}")
    if r.metric is None:
        _out(r.note)
        return 1
    _out(f"metric identity: {r.metric_is_identity()}")
    _out(f"star phi: {format_form(r.Phi)}")
    _out(f"coclosed: {r.coclosed}")
    if not r.coclosed:
        _out(f"d star phi: {format_form(r.dPhi)}")
    want = [r.coclosed] if args.coclosed else []
    return 0 if all(want) else 1


def cmd_su3_reduce(args) -> int:
    g = _algebra(args, args.algebra)
    G = G2Structure.from_phi(g, parse_form(args.phi, g.dim))
    red = su3_reduce(G, parse_vector(args.x, g.dim))
    S = red.su3
    _out(f"omega: {format_form(S.omega)}")
    _out(f"psi-: {format_form(S.psi_minus)}")
    _out(f"psi+: {format_form(S.psi_plus)}")
    _out("h:")
    for line in _matrix_lines(S.metric.matrix):
        _out(line)
    rep = verify_su3(S)
    _out(f"stable pair: {rep.stable_pair}; orthogonal: {rep.orthogonal}; normalized: {rep.normalized}; "
         f"h definite: {rep.h_definite}; recovers phi: {red.recovers_phi}")
    if red.dpsi_closed is not None:
        _out(f"d psi- = 0: {red.dpsi_closed}; d(omega^2/2) = psi- ^ d eta: {red.sigma_identity}")
    return 0 if rep.ok and red.recovers_phi else 1


def cmd_halfflat_lift(args) -> int:
    h = _algebra(args, args.algebra)
    if h.dim != 6:
        raise UsageError("half-flat lifts start from a 6-dimensional algebra")
    S = SU3Structure(h, parse_form(args.omega, 6), parse_form(args.psi_minus, 6))
    try:
        G = coclosed_from_half_flat(S)
    except (NotHalfFlat, NotPositive) as exc:
        _out(f"{type(exc).__name__}: {exc}")
        return 1
    _out(f"algebra: {G.algebra.equations()}")
    _out(f"Phi: {format_form(G.Phi)}")
    _out(f"phi: {format_form(G.phi)}")
    _out(f"d Phi = 0: {not G.algebra.d(G.Phi)}")
    return 0


def cmd_obstruct(args) -> int:
    g = _algebra(args, args.algebra)
    if args.probe:
        x = parse_vector(args.probe, g.dim)
        r = obs1_probe(g, x, samples=args.samples, seed=args.seed)
        _out(f"{r.status} after {r.samples} samples")
        if r.witness is not None:
            _out(f"witness: lambda = {r.witness_lambda} at {r.witness}")
        return 0
    if args.pairs:
        pairs = basis_pair_certificates(g)
        _out("basis pairs with (iota_X iota_Y kappa)^2 = 0: " + (", ".join(map(str, pairs)) or "none"))
        return 0
    if args.x and args.y:
        cert = ObstructionCertificate.from_data(args.algebra, [{"X": args.x, "Y": args.y}])
        try:
            rep = check_obs3(g, cert)
        except AssertionError as exc:
            _out(f"FAIL: {exc}")
            return 1
        _out(f"obstructed: dim {rep.closed_dim}; {rep.cases[0].nonvanishing}")
        return 0
    e = _entry(args, args.algebra)
    if "obs3" not in e.data.get("certificates", {}):
        raise UsageError(f"{e.id} has no obs3 certificate; pass --x and --y")
    return _finish(args, verify_entry(e, only={"obs3"}))


def cmd_block_proof(args) -> int:
    e = _entry(args, args.algebra)
    if "block" not in e.data.get("certificates", {}):
        raise UsageError(f"{e.id} has no block-structure proof")
    return _finish(args, verify_entry(e, only={"block", "nu"}))


def cmd_nilsoliton(args) -> int:
    if args.algebra.lstrip().startswith("(") or not args.f_basis:
        g = _algebra(args, args.algebra)
    else:
        block = _entry(args, args.algebra).data.get("nilsoliton", {})
        if "equations" not in block:
            raise UsageError(f"{args.algebra} has no nilsoliton basis")
        g = LieAlgebra.parse(block["equations"])
    metric = None
    if args.metric_scale:
        t = parse_scalar(args.metric_scale)
        metric = Metric([[t if i == j else t * 0 for j in range(g.dim)] for i in range(g.dim)])
    r = nilsoliton_check(g, metric)
    _out("Ric diagonal: " + ", ".join(str(r.Ric[i][i]) for i in range(g.dim)))
    if r.lam is None:
        _out("not a nilsoliton")
        return 1
    _out(f"lambda = {r.lam}")
    _out("D diagonal: " + ", ".join(str(r.D[i][i]) for i in range(g.dim)))
    return 0


def cmd_contact(args) -> int:
    g = _algebra(args, args.algebra)
    if args.phi:
        r = verify_g2(g, parse_form(args.phi, g.dim) * parse_scalar(args.phi_scale))
        if r.metric is None:
            _out("phi does not induce an exact metric")
            return 1
        metric = r.metric
        _out(f"metric from phi; coclosed: {r.coclosed}")
    else:
        if parse_scalar(args.phi_scale) != 1:
            raise UsageError("--phi-scale needs --phi")
        metric = Metric.identity(g.dim)
    c = contact_check(g, metric, parse_vector(args.xi, g.dim))
    _out(f"eta: {format_form(c.eta)}")
    _out(f"contact: {c.contact}")
    _out(f"contact metric: {c.contact_metric} (phi^2 = {c.scale} (-I + xi eta))")
    _out(f"K-contact: {c.k_contact}")
    return 0 if c.contact and c.contact_metric else 1


def cmd_bryant(args) -> int:
    e = _entry(args, args.algebra)
    if "bryant" not in e.data:
        raise UsageError(f"{e.id} has no family computation")
    results = verify_entry(e, only={"bryant-basis", "bryant-dstar", "bryant-elimination"})
    return _finish(args, results)


def cmd_catalog_verify(args) -> int:
    entries = _catalog(args)
    if args.entry is not None and args.entry not in by_id(entries):
        raise UsageError(f"unknown catalog entry {args.entry!r}")
    return _finish(args, verify_catalog(entries, args.entry))


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true", help="treat flagged results as failures")
    common.add_argument("--format", choices=["text", "records"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling helpers")
    common.add_argument("--samples", type=int, default=1000, help="sample count for sampling helpers")
    common.add_argument("--catalog", default=None, help="catalog file or directory")

    p = _Parser(prog="g2forms", description="Exact G2 and SU(3) form calculus on nilpotent Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="normalize structure equations and check Jacobi")
    s.add_argument("equations")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("closed-forms", parents=[common], help="echelonized basis of closed forms")
    s.add_argument("algebra")
    s.add_argument("--degree", type=int, default=4)
    s.set_defaults(fn=cmd_closed_forms)

    s = sub.add_parser("classify", parents=[common], help="type of a 3-form")
    s.add_argument("form")
    s.add_argument("--dim", type=int, default=7)
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("metric", parents=[common], help="metric induced by a positive 3-form")
    s.add_argument("form")
    s.set_defaults(fn=cmd_metric)

    s = sub.add_parser("verify-g2", parents=[common], help="positivity, metric and (co)closedness of phi")
    s.add_argument("algebra")
    s.add_argument("phi")
    s.add_argument("--coclosed", action="store_true", help="fail unless d(star phi) = 0")
    s.set_defaults(fn=cmd_verify_g2)

    s = sub.add_parser("su3-reduce", parents=[common], help="SU(3)-structure on the quotient by central X")
    s.add_argument("algebra")
    s.add_argument("phi")
    s.add_argument("--x", default="7")
    s.set_defaults(fn=cmd_su3_reduce)

    s = sub.add_parser("halfflat-lift", parents=[common], help="coclosed G2-structure from a half-flat pair")
    s.add_argument("algebra")
    s.add_argument("--omega", required=True)
    s.add_argument("--psi-minus", required=True)
    s.set_defaults(fn=cmd_halfflat_lift)

    s = sub.add_parser("obstruct", parents=[common], help="obstruction certificates and probes")
    s.add_argument("algebra")
    s.add_argument("--x")
    s.add_argument("--y")
    s.add_argument("--pairs", action="store_true", help="list obstructing basis pairs")
    s.add_argument("--probe", help="central vector for the random lambda probe")
    s.set_defaults(fn=cmd_obstruct)

    s = sub.add_parser("block-proof", parents=[common], help="block-structure nonexistence proof")
    s.add_argument("algebra")
    s.set_defaults(fn=cmd_block_proof)

    s = sub.add_parser("nilsoliton", parents=[common], help="Ric = lambda I + D test")
    s.add_argument("algebra")
    s.add_argument("--f-basis", action="store_true", help="use the entry's nilsoliton basis")
    s.add_argument("--metric-scale", help="use t times the identity metric")
    s.set_defaults(fn=cmd_nilsoliton)

    s = sub.add_parser("contact", parents=[common], help="contact, contact metric and K-contact tests")
    s.add_argument("algebra")
    s.add_argument("--xi", default="7")
    s.add_argument("--phi", help="take the metric induced by this 3-form")
    s.add_argument("--phi-scale", default="1")
    s.set_defaults(fn=cmd_contact)

    s = sub.add_parser("bryant", parents=[common], help="one-parameter family computation and elimination")
    s.add_argument("algebra", nargs="?", default="n8")
    s.set_defaults(fn=cmd_bryant)

    s = sub.add_parser("catalog-verify", aliases=["paper-verify"], parents=[common], help="run every catalog check")
    s.add_argument("--entry")
    s.set_defaults(fn=cmd_catalog_verify)
    return p


_INPUT_ERRORS = (UsageError, DSLSyntaxError, IndexOutOfRange, DuplicateIndex, NotCentral, NotUnit,
                 ContactNotUnit, NotNilpotent, FileNotFoundError)


def main(argv: list | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._entries = None
    try:
        return args.fn(args)
    except (ParseError, InvariantViolation) as exc:
        sys.stderr.write(f"g2forms: catalog error: {exc}\n")
        return 2
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"g2forms: error: {exc}\n")
        return 2
    except (ArithmeticError, ValueError, AssertionError) as exc:
        # a requested check could not be completed: report it as a failure
        _out(f"FAIL: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
