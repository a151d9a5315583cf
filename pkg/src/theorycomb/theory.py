"""Theory handles: a uniform bundle of whichever algorithmic properties a
theory implements, plus finite-scale checks of the declared ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import logic as L
from .errors import CapabilityError
from .models import Membership, ModelFinder, evaluate
from .spectra import EMPTY, Spectrum, union

STABLY_INFINITE = "stablyInfinite"
SMOOTH = "smooth"
FINITE_MODEL_PROPERTY = "finiteModelProperty"


@dataclass(frozen=True)
class TheoryHandle:
    name: str
    sig: L.Signature
    member: Membership
    decide: Callable[[L.Cube], bool]
    gentle: Optional[Callable[[L.Cube], Spectrum]] = None
    contains_finite: Optional[Callable[[L.Cube, int], bool]] = None
    witness: Optional[Callable[[L.Cube], L.Cube]] = None
    strong_witness: bool = False
    minmod: Optional[Callable[[L.Cube], float]] = None
    infinitely_decidable: Optional[Callable[[L.Cube], bool]] = None
    spectrum: Optional[Callable[[L.Cube], Spectrum]] = None  # exact, for non-gentle shapes
    flags: frozenset = frozenset()

    def require(self, *capabilities: str) -> None:
        for cap in capabilities:
            if getattr(self, cap) is None:
                raise CapabilityError(f"theory {self.name} has no {cap} capability")

    def require_flag(self, flag: str) -> None:
        if flag not in self.flags:
            raise CapabilityError(f"theory {self.name} is not declared {flag}")


def decide_qf(handle: TheoryHandle, phi: L.Formula) -> bool:
    """Satisfiability of a quantifier-free formula via its DNF cubes."""
    L.check_signature(phi, handle.sig)
    if L.is_cube_like(phi):
        return handle.decide(L.as_cube(phi))
    return any(handle.decide(c) for c in L.to_dnf(phi))


def spectrum_qf(handle: TheoryHandle, phi: L.Formula) -> Spectrum:
    """Union of the per-cube spectra (gentle or exact)."""
    L.check_signature(phi, handle.sig)
    fn = handle.gentle or handle.spectrum
    if fn is None:
        raise CapabilityError(f"theory {handle.name} does not compute spectra")
    out = EMPTY
    for cube in [L.as_cube(phi)] if L.is_cube_like(phi) else L.to_dnf(phi):
        out = union(out, fn(cube))
    return out


@dataclass
class Report:
    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_witness_contract(
    handle: TheoryHandle,
    phi: L.Cube,
    max_k: int,
    extra_vars: int = 0,
    arrangement_vars: Optional[list] = None,
    finder: Optional[ModelFinder] = None,
) -> Report:
    """Finite-scale check of the witness conditions.

    (I): at each size k <= max_k, phi and wit(phi) have models together, and
    every model found for wit(phi) satisfies phi. (II'), for strong witnesses:
    for every arrangement over the chosen variables that is satisfiable with
    wit(phi), some model no larger than the smallest one has its whole domain
    named by variables.
    """
    handle.require("witness")
    finder = finder or ModelFinder(handle.member, limit=max_k)
    report = Report()
    cube = L.as_cube(phi)
    wit = handle.witness(cube)
    for k in range(1, max_k + 1):
        m_phi = finder.find(cube, handle.sig, k)
        m_wit = finder.find(wit, handle.sig, k)
        report.checks += 1
        if (m_phi is None) != (m_wit is None):
            report.violations.append(
                f"(I) size {k}: phi {'has' if m_phi else 'has no'} model, wit {'has' if m_wit else 'has no'} model"
            )
        if m_wit is not None and not evaluate(m_wit, cube):
            report.violations.append(f"(I) size {k}: model of wit does not satisfy phi: {m_wit}")
    if not handle.strong_witness:
        return report
    if arrangement_vars is None:
        arrangement_vars = list(L.vars_of(cube)) + [v.name for v in L.fresh_vars(extra_vars)]
    for arr in L.enumerate_arrangements(arrangement_vars):
        target = wit & arr.to_cube()
        k0 = next((k for k in range(1, max_k + 1) if finder.find(target, handle.sig, k)), None)
        if k0 is None:
            continue
        report.checks += 1
        if not any(finder.find(target, handle.sig, k, surjective=True) for k in range(1, k0 + 1)):
            report.violations.append(f"(II') arrangement {arr}: no variable-named model of size <= {k0}")
    return report


def check_smoothness_sample(
    handle: TheoryHandle, phi: L.Formula, window: int, max_k: int = 6, finder: Optional[ModelFinder] = None
) -> Report:
    """Models at each size k <= max_k should persist at k+1..k+window (within max_k)."""
    handle.require_flag(SMOOTH)
    finder = finder or ModelFinder(handle.member, limit=max_k)
    sizes = [k for k in range(1, max_k + 1) if finder.find(phi, handle.sig, k) is not None]
    report = Report()
    for k in sizes:
        for j in range(k + 1, min(k + window, max_k) + 1):
            report.checks += 1
            if j not in sizes:
                report.violations.append(f"model at size {k} but none at size {j}")
    return report
