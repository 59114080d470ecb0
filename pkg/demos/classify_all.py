"""Classify every free involution on the four closed S^2 x R manifolds.

Run: python3 demos/classify_all.py
"""
# %%
from s2r_involutions.pipeline import load_catalog, run_classification
from s2r_involutions.pipeline.report import render_dot, render_md

catalog = load_catalog()
print("catalog:", ", ".join(catalog.names))

# %% One record per equivalence class of epimorphisms onto Z/2.
report = run_classification(catalog, with_cross_check=True)
for r in report.records:
    phi = ", ".join(f"{g}->{b}" for g, b in r.phi_values)
    print(f"{r.theorem_case:>3}  {r.base:8} phi=({phi})  cover {r.cover:8} {r.involution_label:5} index {r.index}")

# %% Per-epimorphism detail: RP3#RP3 has three epimorphisms but two classes.
for p in report.pairs:
    print(p.base, p.phi.values, "->", p.cover.name, "witness:", p.decision.witness.name, "class", p.orbit)

# %% The covering graph, cover -> base, edges labelled by the index.
print(render_dot(report))

# %% Markdown table, with the cube-rule cross-check appended.
print(render_md(report, cross_check=True))
