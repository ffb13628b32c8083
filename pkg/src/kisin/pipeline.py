"""Pipeline orchestration, the JSON report, and abstract-band enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .components import Components, components_of, count_polynomial  # noqa: F401
from .decorate import Decoration, decorate, render_moebius
from .gene import SYM_0, SYM_A, SYM_AB, SYM_B, AbstractGene, Gene, compute_gene, validate_gene
from .lattice import integrality_check
from .params import Params
from .strata import chain_candidate, ring_descriptor, strata_census, NotAChain
from .variety import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    EquationSystem,
    all_points,
    build_equations,
    enumerate_points,
    is_empty,
    point_str,
    reduce_diagram,
    satisfies,
    witness_point,
)

SCHEMA_VERSION = 1


class CrossCheckError(RuntimeError):
    """The combinatorial equations and the lattice oracle disagree."""

    code = "cross-check-failure"


@dataclass
class PipelineReport:
    source: Params | AbstractGene
    gene: Gene | AbstractGene
    decoration: Decoration
    equations: EquationSystem
    diagram: object
    components: Components
    field: int
    census: dict | None
    descriptors: dict | None
    validation: dict
    oracle: dict | None
    witness: tuple | None

    def to_json(self) -> dict:
        comps = self.components
        empty = self.diagram.contradiction
        report = {
            "schema": SCHEMA_VERSION,
            "params": self.source.to_json() if isinstance(self.source, Params) else None,
            "gene": self.gene.to_json() if isinstance(self.gene, Gene) else None,
            "symbols": ["O" if s == SYM_0 else s for s in self.gene.symbols],
            "decoration": self.decoration.to_json(),
            "equations": self.equations.to_json(),
            "reduced": self.diagram.to_json(),
            "components": comps.to_json(),
            "dimension": None if empty else comps.dimension,
            "connected": None if empty else comps.is_connected(),
            "empty": empty,
            "witness": point_str(self.witness) if self.witness else None,
            "field": self.field,
            "strata": self.census,
            "descriptors": self.descriptors,
            "validation": self.validation,
            "oracle": self.oracle,
        }
        return report


def _abstract_validation(gene: AbstractGene) -> dict:
    f, sym = gene.f, gene.symbols
    n2 = 2 * f
    ab_ok = all(sym[(i + 1) % n2] == SYM_0 for i in range(n2) if sym[i] == SYM_AB)
    zero_ok = all(
        sym[i] in (SYM_0, SYM_AB) for i in range(n2) if sym[(i + 1) % n2] == SYM_0
    )
    mixed = all({sym[i], sym[(i + f) % n2]} == {SYM_A, SYM_B} for i in range(f))
    return {
        "ab_forces_zero": {"passed": ab_ok, "detail": ""},
        "zero_predecessor": {"passed": zero_ok, "detail": ""},
        "not_all_mixed_couples": {"passed": not mixed, "detail": ""},
    }


def run_pipeline(
    source: Params | AbstractGene,
    field: int = 5,
    budget: int = DEFAULT_BUDGET,
    census: bool = True,
    oracle: bool = False,
    seed: int = 0,
) -> PipelineReport:
    """Compute everything the report carries; oracle mode additionally checks
    every candidate point (or a 2000-point sample when the space exceeds the
    budget) against the lattice integrality criterion."""
    if isinstance(source, Params):
        gene: Gene | AbstractGene = compute_gene(source)
        validation = validate_gene(gene)
    else:
        gene = source
        validation = _abstract_validation(gene)
    decoration = decorate(gene)
    eqsys = build_equations(gene, decoration)
    diagram = reduce_diagram(eqsys, gene, decoration)
    assert diagram.contradiction == is_empty(gene), "emptiness criterion violated"
    comps = components_of(diagram)
    witness = witness_point(diagram, field)
    if witness is not None:
        assert satisfies(eqsys, witness, field), "witness point off the variety"

    census_data = None
    descriptors = None
    if census and not diagram.contradiction:
        census_data = strata_census(gene, decoration, eqsys, field, budget, comps)
        descriptors = _descriptors(diagram, census_data)
    elif census:
        census_data = {"census": [], "points": []}
        descriptors = {"strata": [], "factors": []}

    oracle_data = None
    if oracle:
        if not isinstance(gene, Gene):
            raise ValueError("the lattice oracle needs arithmetic input")
        oracle_data = run_oracle(gene, eqsys, field, budget, seed)
    return PipelineReport(
        source=source,
        gene=gene,
        decoration=decoration,
        equations=eqsys,
        diagram=diagram,
        components=comps,
        field=field,
        census=census_data,
        descriptors=descriptors,
        validation=validation,
        oracle=oracle_data,
        witness=witness,
    )


def _descriptors(diagram, census_data: dict) -> dict:
    strata_desc = [
        {
            "genre": entry["genre"],
            "descriptor": ring_descriptor(tuple(entry["genre"].split(","))).to_json(),
        }
        for entry in census_data["census"]
    ]
    factors_desc = []
    for pos, factor in enumerate(diagram.factors):
        try:
            desc = chain_candidate(factor).to_json()
        except NotAChain:
            desc = None
        factors_desc.append({"factor": pos, "chain_candidate": desc})
    return {"strata": strata_desc, "factors": factors_desc}


def run_oracle(
    gene: Gene, eqsys: EquationSystem, field: int, budget: int, seed: int
) -> dict:
    """Equation satisfaction vs lattice integrality over every candidate point
    of P^1(F_ell)^f (sampled when too large).  Raises CrossCheckError on any
    mismatch."""
    f, ell = gene.f, field
    total = (ell + 1) ** f
    if total <= budget:
        candidates = list(all_points(f, ell))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        charts = [(1, t) for t in range(ell)] + [(0, 1)]
        candidates = [
            tuple(charts[rng.randrange(ell + 1)] for _ in range(f)) for _ in range(2000)
        ]
        mode = "sampled"
    mismatches = []
    on_variety = 0
    for pt in candidates:
        eq = satisfies(eqsys, pt, ell)
        lat = integrality_check(gene, pt, ell)
        if eq != lat:
            mismatches.append({"point": point_str(pt), "equations": eq, "lattice": lat})
        on_variety += eq
    if mismatches:
        raise CrossCheckError(f"{len(mismatches)} mismatch(es): {mismatches[:3]}")
    return {
        "mode": mode,
        "checked": len(candidates),
        "on_variety": on_variety,
        "mismatches": 0,
    }


# -- abstract band enumeration -------------------------------------------------

_TRANSITIONS = {
    SYM_A: (SYM_A, SYM_B, SYM_AB),
    SYM_B: (SYM_A, SYM_B, SYM_AB),
    SYM_AB: (SYM_0,),
    SYM_0: (SYM_0, SYM_A, SYM_B, SYM_AB),
}
_TAU = {SYM_A: SYM_B, SYM_B: SYM_A, SYM_AB: SYM_AB, SYM_0: SYM_0}


def canonical_form(symbols: tuple[str, ...]) -> tuple[str, ...]:
    """Lexicographic minimum over the 4f rotations and letter-swapped rotations."""
    n2 = len(symbols)
    best = None
    for k in range(n2):
        rot = symbols[k:] + symbols[:k]
        swapped = tuple(_TAU[s] for s in rot)
        for cand in (rot, swapped):
            if best is None or cand < best:
                best = cand
    return best


def _valid_sequences(f: int):
    n2 = 2 * f
    seq: list[str] = []

    def extend(pos: int):
        if pos == n2:
            if seq[0] in _TRANSITIONS[seq[-1]]:
                yield tuple(seq)
            return
        for s in SYMBOLS_ORDER:
            if pos == 0 or s in _TRANSITIONS[seq[-1]]:
                seq.append(s)
                yield from extend(pos + 1)
                seq.pop()

    yield from extend(0)


SYMBOLS_ORDER = (SYM_0, SYM_A, SYM_AB, SYM_B)


def enumerate_abstract_genes(
    f: int,
    include_zero_zero: bool = False,
    field: int = 5,
    cap: int = 6,
) -> list[dict]:
    """All valid symbol bands of width f up to rotation and letter swap, each
    annotated with a summary of its variety.

    Validity: AB is followed by 0, a 0 is preceded by 0 or AB (cyclically),
    and not every column is an {A, B} couple; columns (0,0) are excluded
    unless include_zero_zero is set.
    """
    if f > cap:
        raise BudgetExceeded(f"f={f} exceeds the enumeration cap {cap}")
    n2 = 2 * f
    table = []
    seen: set[tuple[str, ...]] = set()
    for symbols in _valid_sequences(f):
        if all({symbols[i], symbols[(i + f) % n2]} == {SYM_A, SYM_B} for i in range(f)):
            continue
        has_zero_zero = any(
            (symbols[i], symbols[(i + f) % n2]) == (SYM_0, SYM_0) for i in range(f)
        )
        if has_zero_zero and not include_zero_zero:
            continue
        canon = canonical_form(symbols)
        if canon != symbols or canon in seen:
            continue
        seen.add(canon)
        gene = AbstractGene(f=f, symbols=symbols)
        report = run_pipeline(gene, field=field, census=False)
        comps = report.components
        table.append(
            {
                "gene": gene.symbol_string(),
                "empty": report.diagram.contradiction,
                "dimension": None if report.diagram.contradiction else comps.dimension,
                "component_dimensions": comps.dimension_multisets(),
                "connected": None
                if report.diagram.contradiction
                else comps.is_connected(),
                "points_over_field": None
                if report.diagram.contradiction
                else len(enumerate_points(report.equations, field)),
            }
        )
    table.sort(key=lambda entry: entry["gene"])
    return table
