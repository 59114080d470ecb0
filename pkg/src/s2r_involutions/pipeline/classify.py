"""Run enumeration, kernels, cover names, indices and orbits over a catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..buindex import CrossCheckRow, IndexDecision, bu_index, cross_check
from ..covers import CoverError, CoverIdentification, CoveringRecord, equivalence_orbits, identify_cover_detailed
from ..fpgroup import GroupHom2, enumerate_epis_z2
from .catalog import Catalog


@dataclass(frozen=True)
class PairResult:
    """Everything computed for one epimorphism, orbit representative or not."""

    base: str
    phi: GroupHom2
    cover: CoverIdentification
    decision: IndexDecision
    orbit: int


@dataclass(frozen=True)
class GraphEdge:
    cover: str
    base: str
    index: int
    involution: str


@dataclass
class ClassificationReport:
    records: list[CoveringRecord]
    pairs: list[PairResult]
    nodes: tuple[str, ...]
    discrepancies: list[CrossCheckRow] = field(default_factory=list)

    @property
    def edges(self) -> list[GraphEdge]:
        return [GraphEdge(r.cover, r.base, r.index, r.involution_label) for r in self.records]


def run_classification(catalog: Catalog, manifolds: Optional[Iterable[str]] = None,
                       with_cross_check: bool = False) -> ClassificationReport:
    if manifolds is not None:
        catalog = catalog.restrict(manifolds)
    records: list[CoveringRecord] = []
    pairs: list[PairResult] = []
    discrepancies: list[CrossCheckRow] = []
    for model in catalog.models:
        names = model.presentation.generator_names
        epis = enumerate_epis_z2(model.presentation)
        orbits = equivalence_orbits(model, epis)
        orbit_id = {phi: k + 1 for k, orbit in enumerate(orbits) for phi in orbit}
        results = {}
        for phi in epis:
            ident = identify_cover_detailed(model, phi)
            decision = bu_index(model, phi)
            results[phi] = PairResult(model.name, phi, ident, decision, orbit_id[phi])
            pairs.append(results[phi])
        for k, orbit in enumerate(orbits, start=1):
            covers = {results[phi].cover.name for phi in orbit}
            indices = {results[phi].decision.index for phi in orbit}
            if len(covers) > 1 or len(indices) > 1:
                raise CoverError(f"{model.name}: orbit {[p.values for p in orbit]} mixes "
                                 f"covers {sorted(covers)} / indices {sorted(indices)}")
            rep = results[orbit[0]]
            label = catalog.label_for(model.name, orbit)
            records.append(CoveringRecord(
                base=model.name,
                phi=rep.phi,
                phi_values=tuple(rep.phi.as_mapping(names).items()),
                cover=rep.cover.name,
                involution_label=label.tau if label else "",
                theorem_case=label.theorem_case if label else "",
                index=rep.decision.index,
                equivalence_class=k,
            ))
        if with_cross_check and model.has_triangulation:
            discrepancies.extend(cross_check(model))
    return ClassificationReport(records, pairs, catalog.names, discrepancies)
