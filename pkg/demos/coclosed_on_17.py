"""A coclosed G2-structure on the 2-step algebra 17 and what it reduces to.

Run: python demos/coclosed_on_17.py
"""
from g2forms.curvature import nilsoliton_check
from g2forms.dsl import format_form, parse_form
from g2forms.exterior import Vector
from g2forms.liealg import LieAlgebra
from g2forms.structures import PHI0, G2Structure, coclosed_from_half_flat, su3_reduce, verify_g2

g = LieAlgebra.parse("(0,0,0,0,0,0,12+34+56)")
phi = parse_form(PHI0, 7)
print(f"algebra {g}, step {g.nilpotency_step()}")
print(f"phi = {format_form(phi)}")

r = verify_g2(g, phi)
print(f"positive {r.positive}, metric identity {r.metric_is_identity()}")
print(f"d phi = {format_form(g.d(phi))}  (not closed)")
print(f"star phi = {format_form(r.Phi)}, d(star phi) = 0: {r.coclosed}")

# e7 spans the center, so phi descends to an SU(3)-structure on R^6
red = su3_reduce(G2Structure(g, phi, r.metric, r.Phi), Vector.basis(7, 7))
S = red.su3
print(f"omega = {format_form(S.omega)}")
print(f"psi_- = {format_form(S.psi_minus)}, psi_+ = {format_form(S.psi_plus)}")
print(f"phi = pi*psi_+ + pi*omega ^ eta: {red.recovers_phi}")

# the quotient is abelian, so the pair is half-flat and lifts to R^7 again
lift = coclosed_from_half_flat(S)
print(f"lift to {lift.algebra}: d Phi = 0: {not lift.algebra.d(lift.Phi)}")

# the same phi is a nilsoliton once e7 is rescaled by 1/sqrt6
f = LieAlgebra.parse("(0,0,0,0,0,0,1r6/6*12+1r6/6*34+1r6/6*56)")
rep = nilsoliton_check(f, verify_g2(f, phi).metric)
print(f"in the basis {f}: Ric = lambda I + D with lambda = {rep.lam}")
