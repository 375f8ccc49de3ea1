"""Why g1 carries no coclosed G2-structure.

Every closed 4-form kappa on g1 is a combination of 27 basis forms.  A
certificate lists vectors X, Y with (iota_X iota_Y kappa)^2 = 0 for all
parameters, which no 4-form of a G2-structure allows.

Run: python demos/obstruction_g1.py
"""
from g2forms.catalog import by_id, load_catalog
from g2forms.liealg import closed_forms
from g2forms.obstructions import (ObstructionCertificate, basis_pair_certificates, check_obs3,
                                  random_coclosed_search)

e = by_id(load_catalog())["g1"]
g = e.algebra
kappa = closed_forms(g, 4)
print(f"g1 = {g}: closed 4-forms have dimension {len(kappa)}")

cert = ObstructionCertificate.from_data("g1", e.data["certificates"]["obs3"])
rep = check_obs3(g, cert, kappa)
for c in rep.cases:
    guard = f" when {' = '.join(c.guards)} = 0" if c.guards else ""
    print(f"  case X = {c.X}, Y = {c.Y}{guard}: (iota_X iota_Y kappa)^2 vanishes identically")
print("the cases cover every kappa, so no closed 4-form is the dual of a positive 3-form")

print(f"single basis pairs that obstruct on their own: {basis_pair_certificates(g, kappa) or 'none'}")

# a blind numeric search agrees (hits would be re-checked exactly)
s = random_coclosed_search(g, samples=2000, seed=1)
print(f"random search over perturbed frames: {s.status} in {s.samples} samples")
