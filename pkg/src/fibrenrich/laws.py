"""Findings, the law registry, and the exception hierarchy.

Every validator returns a list of :class:`Finding`; an empty list means every
checked law holds.  Each law identifier maps to exactly one anchor tag naming
the construction it comes from (or ``plumbing`` for format/reference checks).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

LAWS: dict[str, str] = {
    # kernel
    "malformed.reference": "plumbing",
    "category.typing": "plumbing",
    "category.totality": "category-axioms",
    "category.identity_type": "category-axioms",
    "category.identity_law": "category-axioms",
    "category.closure": "category-axioms",
    "category.associativity": "category-axioms",
    "functor.missing": "plumbing",
    "functor.typing": "functor-laws",
    "functor.identity": "functor-laws",
    "functor.composition": "functor-laws",
    "nat.parallel": "plumbing",
    "nat.missing": "natural-transformation",
    "nat.typing": "natural-transformation",
    "nat.naturality": "natural-transformation",
    "nat.iso": "natural-transformation",
    "budget.exceeded": "plumbing",
    # adjunctions
    "adjunction.types": "plumbing",
    "adjunction.triangle_left": "triangle-identities",
    "adjunction.triangle_right": "triangle-identities",
    "family.not_bifunctor": "plumbing",
    "family.missing_member": "parameterized-adjunction",
    "family.partial_mismatch": "parameterized-adjunction",
    "padj.bijection": "parameterized-adjunction",
    "padj.naturality": "parameterized-adjunction",
    "padj.uniqueness": "parameterized-adjunction",
    "square.commutes": "commutative-square",
    "square.cartesian": "fibred-1-cell",
    "square.cocartesian": "opfibred-1-cell",
    "square_adjunction.unit_above": "map-of-adjunctions",
    "square_adjunction.counit_above": "map-of-adjunctions",
    "adjoint_liftings.right_adjoint_cartesian": "adjoints-preserve-liftings",
    "adjoint_liftings.left_adjoint_cocartesian": "adjoints-preserve-liftings",
    # fibrations
    "fibration.no_lift": "cartesian-lifting",
    "cleavage.missing": "cleavage",
    "cleavage.typing": "cleavage",
    "cleavage.cartesian": "cleavage",
    "reindex.pseudofunctoriality": "reindexing-functor",
    "fibred_2cell.above": "fibred-2-cell",
    "presentation.missing": "grothendieck-construction",
    "presentation.typing": "grothendieck-construction",
    "presentation.functoriality": "grothendieck-construction",
    "total_adjoint.fibrewise": "total-adjoint",
    # monoidal
    "monoidal.types": "plumbing",
    "monoidal.missing_component": "monoidal-coherence",
    "monoidal.typing": "monoidal-coherence",
    "monoidal.iso": "monoidal-coherence",
    "monoidal.naturality": "monoidal-coherence",
    "monoidal.pentagon": "monoidal-coherence",
    "monoidal.triangle": "monoidal-coherence",
    "monoidal.hexagon": "symmetric-monoidal",
    "monoidal.symmetry_involution": "symmetric-monoidal",
    "monoidal_functor.typing": "monoidal-functor",
    "monoidal_functor.naturality": "monoidal-functor",
    "monoidal_functor.associativity": "monoidal-functor",
    "monoidal_functor.unitality": "monoidal-functor",
    "monoidal_functor.flavor": "monoidal-functor",
    "monoidal_fibration.monoidal": "monoidal-fibration",
    "monoidal_fibration.strict": "monoidal-fibration",
    "monoidal_fibration.tensor_cartesian": "monoidal-fibration",
    "action.types": "plumbing",
    "action.missing_component": "action-coherence",
    "action.typing": "action-coherence",
    "action.iso": "action-coherence",
    "action.naturality": "action-coherence",
    "action.associativity": "action-coherence",
    "action.unit_left": "action-coherence",
    "action.unit_right": "action-coherence",
    "closed.missing_family": "closed-monoidal-fibration",
    "closed.closed": "closed-monoidal-fibration",
    "closed.strict_closed": "closed-monoidal-fibration",
    "closed.unit_counit": "closed-monoidal-fibration",
    "representation.square": "T-representation",
    "representation.cartesian": "T-representation",
    "representation.actions": "T-representation",
    "representation.chi": "T-representation",
    "representation.nu": "T-representation",
    # enrichment
    "enriched.missing_component": "enriched-category",
    "enriched.typing": "enriched-category",
    "enriched.associativity": "enriched-category",
    "enriched.unit_left": "enriched-category",
    "enriched.unit_right": "enriched-category",
    "enriched.underlying_iso": "action-enrichment",
    "enriched.hom_functor": "action-enrichment",
    "enriched_fibration.objects": "enriched-fibration",
    "enriched_fibration.iso": "enriched-fibration",
    "enriched_fibration.hom_square": "enriched-fibration",
    "enriched_fibration.composition": "enriched-fibration",
    "enriched_fibration.identities": "enriched-fibration",
    "enriched_fibration.partial_cartesian": "enriched-fibration",
    "enriched_fibration.symmetry": "enriched-opfibration",
    "enriched_functor.fully_faithful": "enriched-functor",
    "enriched_functor.composition": "enriched-functor",
    "enriched_functor.identities": "enriched-functor",
    "enriched_functor.underlying": "enriched-functor",
    "grothendieck.fibre": "grothendieck-construction",
    # frontend
    "workspace.syntax": "plumbing",
    "workspace.unresolved_reference": "plumbing",
    "workspace.duplicate_name": "plumbing",
    "workspace.typing": "plumbing",
    "command.unknown": "plumbing",
    "command.arguments": "plumbing",
    "construction.precondition": "plumbing",
    "construction.internal": "plumbing",
}

MALFORMED_LAWS = frozenset(
    {
        "malformed.reference",
        "category.typing",
        "functor.missing",
        "nat.parallel",
        "adjunction.types",
        "family.not_bifunctor",
        "monoidal.types",
        "action.types",
        "budget.exceeded",
        "workspace.syntax",
        "workspace.unresolved_reference",
        "workspace.duplicate_name",
        "workspace.typing",
        "command.unknown",
        "command.arguments",
        "construction.precondition",
        "construction.internal",
    }
)


@dataclass(frozen=True)
class Finding:
    law: str
    witness: tuple = ()
    detail: str = ""
    anchor: str = field(default="", compare=False)

    def __post_init__(self):
        if self.law not in LAWS:
            raise KeyError(f"unregistered law identifier {self.law!r}")
        object.__setattr__(self, "anchor", LAWS[self.law])

    @property
    def malformed(self) -> bool:
        return self.law in MALFORMED_LAWS


def verdict(findings: list[Finding]) -> str:
    if not findings:
        return "pass"
    if any(f.malformed for f in findings):
        return "error"
    return "fail"


class FibrEnrichError(Exception):
    """Base class for all engine errors."""


class MalformedError(FibrEnrichError):
    """An identifier does not resolve, or an argument has the wrong shape."""


class MissingMorphism(MalformedError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(FibrEnrichError):
    """Inputs fail the checks a construction requires; carries the findings."""

    def __init__(self, message: str, findings: list[Finding] | None = None):
        super().__init__(message)
        self.findings = list(findings or [])


class InternalError(FibrEnrichError):
    """A constructed output failed re-validation: a defect in the engine."""

    def __init__(self, message: str, findings: list[Finding] | None = None):
        super().__init__(message)
        self.findings = list(findings or [])


class BudgetExceeded(FibrEnrichError):
    pass


class MissingSymmetry(PreconditionError):
    pass
