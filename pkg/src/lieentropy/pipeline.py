"""Certified entropy via the reduction-theorem rule chain.

Rules are tried in a fixed order; the first match decides the value.  A
universal lower bound (entropy of the unstable toral block) is always
computed first.  Certificates record the chain of rule applications so the
derivation can be audited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import structure_report
from .groups import (
    GroupSpec,
    TorusBlock,
    lattice_automorphism,
    radical_unstable_toral_part,
    unstable_toral_part,
    validate_group_spec,
)
from .spectral import (
    Endomorphism,
    SpectralDecomposition,
    dynamic_subalgebras,
    find_invariant_levi,
    is_semisimple_endo,
)

RULE_ANCHORS = {
    "R0": "Prop 3.7 (toral lower bound)",
    "R1": "Thm 3.14 proof (semisimple groups have zero entropy)",
    "R2": "Cor 3.11 (simply connected solvable)",
    "R3": "Thm 3.8 / Cor 3.9 / Cor 3.10 (decomposable: reduce to T(G+))",
    "R3e": "classical toral endomorphism formula (surjective torus endomorphism)",
    "R4": "Thm 3.14 (invariant Levi: reduce to T(R+))",
    "R5": "Cor 3.15 (Harish-Chandra reductive: T(G)+)",
    "R6": "Cor 3.18 (semisimple automorphism)",
    "R7": "Cor 3.16 (simply connected, finite center, invariant Levi)",
}


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    anchor: str
    dims: dict


@dataclass(frozen=True)
class EntropyCertificate:
    status: str  # exact | lower_bound_only | rejected
    value: Optional[float]
    lower_bound: float
    chain: tuple[RuleApplication, ...]
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "chain": [
                {"rule": r.rule, "anchor": r.anchor, "dims": r.dims} for r in self.chain
            ],
            "notes": list(self.notes),
        }


def toral_entropy(block: TorusBlock) -> float:
    """Sum of log|lambda| over eigenvalues of modulus > 1; exactly 0.0 when
    there are none."""
    if block.rank == 0:
        return 0.0
    vals = np.linalg.eigvals(block.induced_matrix.astype(float))
    moduli = np.abs(vals)
    unstable = moduli[moduli > 1.0 + 1e-12]
    if unstable.size == 0:
        return 0.0
    return float(np.sum(np.log(unstable)))


def entropy_certificate(
    spec: GroupSpec,
    phi: Endomorphism,
    decomp: Optional[SpectralDecomposition] = None,
) -> EntropyCertificate:
    validation = validate_group_spec(spec, phi)
    if not validation:
        return EntropyCertificate(
            status="rejected",
            value=None,
            lower_bound=0.0,
            chain=(),
            notes=tuple(f"{where}: {what}" for where, what in validation.violations),
        )
    if decomp is None:
        decomp = dynamic_subalgebras(spec.algebra, phi)
    report = structure_report(spec.algebra, declared_levi=spec.declared_levi)
    flags = spec.flags
    dims = {
        "d": spec.algebra.dim,
        "g_plus": decomp.g_plus.dim,
        "g_zero": decomp.g_zero.dim,
        "g_minus": decomp.g_minus.dim,
        "k_phi": decomp.k_phi.dim,
        "radical": report.radical.dim,
    }

    chain = []
    unstable_block = unstable_toral_part(spec, phi)
    lower = toral_entropy(unstable_block)
    chain.append(
        RuleApplication("R0", RULE_ANCHORS["R0"], {**dims, "toral_unstable_rank": unstable_block.rank})
    )

    is_group_auto = lattice_automorphism(spec, phi)
    invertible = abs(np.linalg.det(phi.matrix)) > 1e-12 if spec.algebra.dim else True
    notes = []

    def exact(value: float) -> EntropyCertificate:
        return EntropyCertificate(
            status="exact", value=value, lower_bound=lower, chain=tuple(chain), notes=tuple(notes)
        )

    # group-level automorphism means: the algebra map is invertible and any
    # lattice is preserved both ways
    group_automorphism = invertible and is_group_auto is not False

    if not group_automorphism:
        # the reduction theorems are stated for automorphisms; the one case
        # still certified is a surjective endomorphism of a torus, whose
        # entropy is the classical unstable-eigenvalue sum
        if spec.model == "torus" and invertible and is_group_auto is False:
            chain.append(
                RuleApplication(
                    "R3e",
                    RULE_ANCHORS["R3e"],
                    {"toral_unstable_rank": unstable_block.rank},
                )
            )
            notes.append("surjective (non-invertible) torus endomorphism; classical formula")
            return exact(toral_entropy(unstable_block))
        notes.append("not a group automorphism; only the lower bound is certified")
        return EntropyCertificate(
            status="lower_bound_only", value=None, lower_bound=lower, chain=tuple(chain), notes=tuple(notes)
        )

    # R1: semisimple group with finite center
    if report.radical.dim == 0 and flags["finite_semisimple_center"]:
        chain.append(RuleApplication("R1", RULE_ANCHORS["R1"], dims))
        return exact(0.0)

    # R2: simply connected solvable
    if flags["simply_connected"] and flags["solvable"]:
        chain.append(RuleApplication("R2", RULE_ANCHORS["R2"], dims))
        return exact(0.0)

    # R3: decomposable via solvability or compact central part
    if flags["solvable"] or flags["g_zero_compact"]:
        chain.append(
            RuleApplication("R3", RULE_ANCHORS["R3"], {**dims, "toral_unstable_rank": unstable_block.rank})
        )
        return exact(toral_entropy(unstable_block))

    # R4: finite semisimple center + an invariant Levi subgroup
    if flags["finite_semisimple_center"]:
        levi = find_invariant_levi(spec.algebra, phi, declared=spec.declared_levi)
        if levi is not None:
            rad_block = radical_unstable_toral_part(spec, phi)
            chain.append(
                RuleApplication(
                    "R4", RULE_ANCHORS["R4"], {**dims, "levi": levi.dim, "radical_toral_unstable_rank": rad_block.rank}
                )
            )
            if flags["simply_connected"]:
                # Cor 3.16 refinement: simply connected + finite center -> 0
                chain.append(RuleApplication("R7", RULE_ANCHORS["R7"], dims))
                return exact(0.0)
            return exact(toral_entropy(rad_block))

    # R5: Harish-Chandra reductive
    if flags["harish_chandra_reductive"]:
        chain.append(
            RuleApplication("R5", RULE_ANCHORS["R5"], {**dims, "toral_unstable_rank": unstable_block.rank})
        )
        return exact(toral_entropy(unstable_block))

    # R6: semisimple automorphism + finite semisimple center
    if flags["finite_semisimple_center"] and is_semisimple_endo(phi):
        levi = find_invariant_levi(spec.algebra, phi, declared=spec.declared_levi)
        if levi is not None:
            rad_block = radical_unstable_toral_part(spec, phi)
            chain.append(
                RuleApplication(
                    "R6", RULE_ANCHORS["R6"], {**dims, "levi": levi.dim, "radical_toral_unstable_rank": rad_block.rank}
                )
            )
            return exact(toral_entropy(rad_block))
        notes.append("semisimple automorphism, but no invariant Levi witness was found")

    return EntropyCertificate(
        status="lower_bound_only", value=None, lower_bound=lower, chain=tuple(chain), notes=tuple(notes)
    )


def explain_certificate(cert: EntropyCertificate) -> str:
    lines = []
    if cert.status == "rejected":
        lines.append("certificate: REJECTED")
        for note in cert.notes:
            lines.append(f"  validation failure: {note}")
        return "\n".join(lines)
    for app in cert.chain:
        dims = ", ".join(f"{k}={v}" for k, v in app.dims.items())
        lines.append(f"  {app.rule}: {app.anchor} [{dims}]")
    if cert.status == "exact":
        lines.insert(0, f"certificate: EXACT  h_top = {cert.value:.12g}")
        lines.append(f"  lower bound {cert.lower_bound:.12g} <= value {cert.value:.12g}")
    else:
        lines.insert(0, f"certificate: LOWER BOUND ONLY  h_top >= {cert.lower_bound:.12g}")
    for note in cert.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)
