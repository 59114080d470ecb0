"""Cup cubes on triangulated models, and which pairs lift to Z.

Run: python3 demos/cup_cubes.py
"""
# %%
import itertools

from s2r_involutions.buindex import cross_check, factors_through_Z
from s2r_involutions.cohomology import Cochain, betti_numbers, cohomology_basis, cup_cube_class, evaluate_on_loop_sum
from s2r_involutions.fpgroup import enumerate_epis_z2
from s2r_involutions.pipeline import load_catalog

catalog = load_catalog()

# %% The triangulations: size and mod-2 Betti numbers.
for m in catalog.models:
    K = m.triangulation()
    print(f"{m.name:8} f-vector {K.f_vector()}  betti {betti_numbers(K)}")

# %% Every H^1 class, named by its values on the marked loops, and its cube.
for name in ("RP2xS1", "RP3#RP3"):
    m = catalog.model(name)
    K = m.triangulation()
    basis = cohomology_basis(K, 1).representatives
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        bits = 0
        for on, rep in zip(coeffs, basis):
            bits ^= rep.bits if on else 0
        c = Cochain(1, bits, K.count(1))
        values = {g: evaluate_on_loop_sum(K, c, refs) for g, refs in m.marked_loops.items()}
        print(f"{name:8} {values}  cube nonzero: {cup_cube_class(K, c).is_nonzero}")

# %% Lifts to Z: a lift forces index 1, so its cube must vanish.
for m in catalog.models:
    for phi in enumerate_epis_z2(m.presentation):
        print(f"{m.name:8} {phi.values}  lift to Z: {factors_through_Z(m.presentation, phi)}")

# %% The two readings of the RP2xS1 cube rule against the computed answer.
for row in cross_check(catalog.model("RP2xS1")):
    print(row.phi, "computed", row.computed, "literal", row.literal,
          "both nonzero", row.both_nonzero, "disagree:", row.disagreements)
