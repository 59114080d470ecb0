"""Kernels of the Z/2 epimorphisms, by Reidemeister-Schreier rewriting.

Run: python3 demos/kernels.py
"""
# %%
from s2r_involutions.covers import identify_cover_detailed, reidemeister_schreier_index2
from s2r_involutions.fpgroup import abelianization, enumerate_epis_z2
from s2r_involutions.pipeline import load_catalog

catalog = load_catalog()

# %% Raw rewrite: 2n-1 generators and two copies of every relator.
m = catalog.model("RP2xS1")
phi = enumerate_epis_z2(m.presentation)[0]
raw = reidemeister_schreier_index2(m.presentation, phi)
print("raw kernel of", phi.values, "on", m.name)
print("  ", raw.presentation)

# %% After Tietze moves, with each kernel generator written as a word upstairs.
small = raw.simplified()
print("  simplified:", small.presentation)
print("  inclusion:", small.format_inclusion())

# %% All pairs: kernel group, orientability of the cover, and its name.
for m in catalog.models:
    for phi in enumerate_epis_z2(m.presentation):
        ident = identify_cover_detailed(m, phi)
        ab = abelianization(ident.kernel.presentation)
        print(f"{m.name:8} {phi.values}  {str(ident.kernel.presentation):40} "
              f"H1 rank {ab.rank} torsion {list(ab.torsion)}  "
              f"{'orientable' if ident.orientable else 'non-orientable':15} -> {ident.name}")
