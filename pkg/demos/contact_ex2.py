"""Contact structure on (0,0,0,12,13,0,16+25+34) and its dependence on scale.

With eta = g(xi, .) and g(phihat ., .) = 1/2 d eta the contact metric
condition phihat^2 = -I + xi eta is not scale invariant: rescaling the metric
by t and xi by 1/sqrt t multiplies phihat^2 by 1/t.

Run: python demos/contact_ex2.py
"""
from g2forms.curvature import contact_check
from g2forms.dsl import format_form, parse_form
from g2forms.exterior import Vector
from g2forms.liealg import LieAlgebra
from g2forms.scalars import ScalarK
from g2forms.structures import verify_g2

g = LieAlgebra.parse("(0,0,0,12,13,0,16+25+34)")
phi = parse_form("-167 - 237 + 457 - 124 - 135 - 256 + 346", 7)
r = verify_g2(g, phi)
print(f"phi coclosed: {r.coclosed}, metric identity: {r.metric_is_identity()}")
print(f"star phi = {format_form(r.Phi)}  ({len(r.Phi.terms)} terms)")

c = contact_check(g, r.metric, Vector.basis(7, 7))
print(f"xi = e7: contact {c.contact}, K-contact {c.k_contact}, phihat^2 = {c.scale} (-I + xi eta)")

# phi/8 induces the metric g/4, for which 2 e7 is the unit Reeb vector
r8 = verify_g2(g, phi * (ScalarK(1) / 8))
c8 = contact_check(g, r8.metric, Vector.basis(7, 7) * 2)
print(f"phi/8, xi = 2 e7: contact metric {c8.contact_metric}, phihat^2 = {c8.scale} (-I + xi eta)")
