"""Machine-checkable verification of the stated identities, lemmas and
bounds over configurable (q, k, n) grids.

A pass verdict always means every individual comparison was settled by
exact integer arithmetic or by certified interval separation; interval
comparisons that cannot be separated escalate their working precision
(doubling, capped at 16x the request) and are reported inconclusive if
the cap is reached, never pass.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, RegimeError, ReconstructionError, RootSolveError
from .numerics import (
    asymptote_c,
    binet_dominant,
    dominant_root,
    dominant_term_sweep,
    g_eval,
    quadratic_roots,
    reconstruction_sweep,
)
from .sequences import (
    CompanionKind,
    SequenceParams,
    companion_table,
    series_coefficients,
    term_definition,
    term_table,
)

__all__ = [
    "LAW_IDS",
    "Grid",
    "Witness",
    "LawReport",
    "DecayProbe",
    "check_identities",
    "check_root_laws",
    "check_term_bounds",
    "check_reconstruction",
    "error_decay_probe",
    "run_laws",
]

LAW_IDS = (
    "identity-theorem2",
    "identity-theorem3",
    "series-oracle",
    "lemma1-monotone",
    "lemma1-sandwich",
    "lemma2-sandwich",
    "error-bound",
    "growth-bounds",
    "reconstruction",
)

ESCALATION_CAP_FACTOR = 16
RECONSTRUCTION_N_CAP = 60
RECONSTRUCTION_MIN_BITS = 256


@dataclass(frozen=True)
class Grid:
    """The (q, k, n) ranges a law is checked over."""

    q_values: tuple
    k_values: tuple
    n_max: int

    def __post_init__(self):
        object.__setattr__(self, "q_values", tuple(sorted(set(self.q_values))))
        object.__setattr__(self, "k_values", tuple(sorted(set(self.k_values))))

    @classmethod
    def default(cls) -> "Grid":
        # spans all three proof regimes of the weight lemma:
        # k = 2, 3 <= k <= q, and k >= q+1
        return cls(q_values=(3, 4, 5), k_values=tuple(range(2, 9)), n_max=300)

    @property
    def cells(self):
        return [(q, k) for q in self.q_values for k in self.k_values]

    def to_json(self) -> dict:
        return {
            "q": list(self.q_values),
            "k": list(self.k_values),
            "n_max": self.n_max,
        }


@dataclass(frozen=True)
class Witness:
    """One failing or inconclusive grid point with its offending values."""

    q: int
    k: int
    n: int | None
    kind: str  # "fail" | "inconclusive"
    detail: str

    def to_json(self) -> dict:
        return {"q": self.q, "k": self.k, "n": self.n, "kind": self.kind,
                "detail": self.detail}


def _sorted_witnesses(witnesses) -> tuple:
    return tuple(
        sorted(witnesses, key=lambda w: (w.q, w.k, w.n if w.n is not None else -(1 << 62)))
    )


@dataclass(frozen=True)
class LawReport:
    law_id: str
    grid: Grid
    verdict: str
    witnesses: tuple
    bits_used: int
    # True when every settled comparison also held strictly (the proofs
    # conclude strict inequalities; the stated bound is non-strict).
    # Not part of the serialized schema.
    strict_also_certified: bool = True

    def to_json(self) -> dict:
        return {
            "law_id": self.law_id,
            "grid": self.grid.to_json(),
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "bits_used": self.bits_used,
        }


def _verdict(witnesses) -> str:
    if any(w.kind == "fail" for w in witnesses):
        return "fail"
    if witnesses:
        return "inconclusive"
    return "pass"


def _report(law_id, grid, witnesses, bits_used, strict=True) -> LawReport:
    witnesses = _sorted_witnesses(witnesses)
    return LawReport(law_id, grid, _verdict(witnesses), witnesses, bits_used, strict)


def _ladder(bits: int):
    rungs = [bits]
    while rungs[-1] < ESCALATION_CAP_FACTOR * bits:
        rungs.append(min(2 * rungs[-1], ESCALATION_CAP_FACTOR * bits))
    return rungs


def _require_identities_grid(grid: Grid) -> None:
    if any(q < 1 or q > 10 for q in grid.q_values):
        raise DomainError("identity checks accept q in [1, 10]")
    if any(k < 2 or k > 16 for k in grid.k_values):
        raise DomainError("identity checks accept k in [2, 16]")
    if grid.n_max > 500:
        raise DomainError("identity checks accept n_max <= 500")


def _require_certified_regime(grid: Grid) -> None:
    if any(q < 3 for q in grid.q_values):
        raise RegimeError(
            "certified law checks require q >= 3 everywhere on the grid"
        )


# ----------------------------------------------------------------------
# exact-integer identities
# ----------------------------------------------------------------------

def check_identities(grid: Grid) -> list[LawReport]:
    """Shortcut identity, companion-pair identity, and series oracle,
    all by exact integer equality (never inconclusive)."""
    _require_identities_grid(grid)
    shortcut_witnesses = []
    companion_witnesses = []
    series_witnesses = []
    for q, k in grid.cells:
        params = SequenceParams(q, k)
        if grid.n_max < params.min_index:
            continue
        table = term_table(params, grid.n_max)

        def f(n):
            return table[n - params.min_index]

        # order-(k+1) shortcut, stated for n >= 3
        for n in range(3, grid.n_max + 1):
            expected = (q + 1) * f(n - 1) - (q - 1) * f(n - 2) - f(n - k - 1)
            if f(n) != expected:
                shortcut_witnesses.append(Witness(
                    q, k, n, "fail",
                    f"shortcut gives {expected}, definition gives {f(n)}",
                ))

        # companion-pair identity, q >= 3 only
        if q >= 3 and grid.n_max >= 1:
            u = companion_table(q, CompanionKind.U, grid.n_max)
            v = companion_table(q, CompanionKind.V, max(1, grid.n_max - k - 1))
            for n in range(1, grid.n_max + 1):
                if n <= k + 1:
                    expected = u[n - 1]
                else:
                    expected = u[n - 1] - sum(
                        v[j - 1] * f(n - k - j) for j in range(1, n - k)
                    )
                if f(n) != expected:
                    companion_witnesses.append(Witness(
                        q, k, n, "fail",
                        f"companion form gives {expected}, definition gives {f(n)}",
                    ))

        # generating-function long division
        if grid.n_max >= 0:
            coeffs = series_coefficients(params, grid.n_max + 1)
            for n, c in enumerate(coeffs):
                if c != f(n):
                    series_witnesses.append(Witness(
                        q, k, n, "fail",
                        f"series coefficient {c}, definition gives {f(n)}",
                    ))

    return [
        _report("identity-theorem2", grid, shortcut_witnesses, 0),
        _report("identity-theorem3", grid, companion_witnesses, 0),
        _report("series-oracle", grid, series_witnesses, 0),
    ]


# ----------------------------------------------------------------------
# root laws (certified interval separations)
# ----------------------------------------------------------------------

def check_root_laws(grid: Grid, bits: int) -> list[LawReport]:
    """Dominant-root monotonicity in k, the alpha sandwich, the weight
    sandwich, and the asymptote ordering, all by interval separation."""
    _require_certified_regime(grid)
    reports = []

    def monotone(work):
        fails, unsettled = [], []
        for q in grid.q_values:
            gammas = {
                k: dominant_root(SequenceParams(q, k), work).interval
                for k in grid.k_values
            }
            ks = list(grid.k_values)
            for i, k1 in enumerate(ks):
                for k2 in ks[i + 1:]:
                    if gammas[k1].strictly_below(gammas[k2]):
                        continue
                    if gammas[k1].strictly_above(gammas[k2]):
                        fails.append(Witness(
                            q, k2, None, "fail",
                            f"gamma_{k2} certified below gamma_{k1}",
                        ))
                    else:
                        unsettled.append(Witness(
                            q, k2, None, "inconclusive",
                            f"gamma_{k1} vs gamma_{k2} not separated at {work} bits",
                        ))
        return fails, unsettled

    def sandwich(work):
        fails, unsettled = [], []
        for q in grid.q_values:
            alpha = quadratic_roots(q, work).alpha
            for k in grid.k_values:
                gamma = dominant_root(SequenceParams(q, k), work).interval
                lower = alpha * Fraction(q**k - 1, q**k)
                checks = [
                    ("bracket q < gamma", gamma.strictly_above(q),
                     gamma.strictly_below(q)),
                    ("bracket gamma < q+1", gamma.strictly_below(q + 1),
                     gamma.strictly_above(q + 1)),
                    ("alpha(1 - q^-k) < gamma", lower.strictly_below(gamma),
                     lower.strictly_above(gamma)),
                    ("gamma < alpha", gamma.strictly_below(alpha),
                     gamma.strictly_above(alpha)),
                ]
                for label, ok, definitely_wrong in checks:
                    if ok:
                        continue
                    kind = "fail" if definitely_wrong else "inconclusive"
                    note = ("certified false" if definitely_wrong
                            else f"not separated at {work} bits")
                    bucket = fails if definitely_wrong else unsettled
                    bucket.append(Witness(q, k, None, kind, f"{label} {note}"))
        return fails, unsettled

    def weight(work):
        fails, unsettled = [], []
        for q in grid.q_values:
            for k in grid.k_values:
                params = SequenceParams(q, k)
                gamma = dominant_root(params, work).interval
                gval = g_eval(params, gamma)
                c = asymptote_c(params, work)
                checks = [
                    ("1/(q+1) < g(gamma)", gval.strictly_above(Fraction(1, q + 1)),
                     gval.strictly_below(Fraction(1, q + 1))),
                    ("g(gamma) < 1/q", gval.strictly_below(Fraction(1, q)),
                     gval.strictly_above(Fraction(1, q))),
                    ("c < gamma", c.strictly_below(gamma), c.strictly_above(gamma)),
                ]
                for label, ok, definitely_wrong in checks:
                    if ok:
                        continue
                    kind = "fail" if definitely_wrong else "inconclusive"
                    note = ("certified false" if definitely_wrong
                            else f"not separated at {work} bits")
                    bucket = fails if definitely_wrong else unsettled
                    bucket.append(Witness(q, k, None, kind, f"{label} {note}"))
        return fails, unsettled

    for law_id, compare in (
        ("lemma1-monotone", monotone),
        ("lemma1-sandwich", sandwich),
        ("lemma2-sandwich", weight),
    ):
        fails, unsettled = [], []
        used = bits
        for work in _ladder(bits):
            used = work
            fails, unsettled = compare(work)
            if not unsettled:
                break
        reports.append(_report(law_id, grid, list(fails) + list(unsettled), used))
    return reports


# ----------------------------------------------------------------------
# error bound and growth chain
# ----------------------------------------------------------------------

def check_term_bounds(grid: Grid, bits: int) -> list[LawReport]:
    """|E_n| <= 1/q for n in [2-k, n_max] and the growth chain
    gamma^(n-2) < gamma^(n-1)(q-1)/q < F_n < gamma^(n-1)(q+2)/q < gamma^n
    for n in [1, n_max], certified against exact integers."""
    _require_certified_regime(grid)
    error_witnesses = []
    growth_witnesses = []
    error_bits = growth_bits = bits
    error_strict = True

    for q, k in grid.cells:
        params = SequenceParams(q, k)
        table = term_table(params, grid.n_max)

        def f(n):
            return table[n - params.min_index]

        bound = Fraction(1, q)
        cell_error = cell_growth = None
        for work in _ladder(bits):
            _, _, powers, terms = dominant_term_sweep(params, grid.n_max, work)
            err_pending, err_fail = [], []
            for n in range(params.min_index, grid.n_max + 1):
                e = (-terms[n]) + f(n)
                if -bound <= e.lo and e.hi <= bound:
                    if not (-bound < e.lo and e.hi < bound):
                        error_strict = False
                    continue
                if e.lo > bound or e.hi < -bound:
                    err_fail.append(Witness(
                        q, k, n, "fail",
                        f"|E_{n}| certified above 1/q: "
                        f"[{float(e.lo):.6g}, {float(e.hi):.6g}]",
                    ))
                else:
                    err_pending.append(Witness(
                        q, k, n, "inconclusive",
                        f"E_{n} enclosure width {float(e.width):.3g} "
                        f"not inside [-1/q, 1/q] at {work} bits",
                    ))
            grow_pending, grow_fail = [], []
            for n in range(1, grid.n_max + 1):
                low = powers[n - 1] * Fraction(q - 1, q)
                high = powers[n - 1] * Fraction(q + 2, q)
                checks = [
                    ("gamma^(n-2) < gamma^(n-1)(q-1)/q",
                     powers[n - 2].strictly_below(low),
                     powers[n - 2].strictly_above(low)),
                    ("gamma^(n-1)(q-1)/q < F_n",
                     low.strictly_below(f(n)), low.strictly_above(f(n))),
                    ("F_n < gamma^(n-1)(q+2)/q",
                     high.strictly_above(f(n)), high.strictly_below(f(n))),
                    ("gamma^(n-1)(q+2)/q < gamma^n",
                     high.strictly_below(powers[n]), high.strictly_above(powers[n])),
                ]
                for label, ok, definitely_wrong in checks:
                    if ok:
                        continue
                    if definitely_wrong:
                        grow_fail.append(Witness(
                            q, k, n, "fail", f"{label} certified false"))
                    else:
                        grow_pending.append(Witness(
                            q, k, n, "inconclusive",
                            f"{label} not separated at {work} bits"))
            cell_error = err_fail + err_pending
            cell_growth = grow_fail + grow_pending
            error_bits = max(error_bits, work)
            growth_bits = max(growth_bits, work)
            if not err_pending and not grow_pending:
                break
        error_witnesses.extend(cell_error)
        growth_witnesses.extend(cell_growth)

    return [
        _report("error-bound", grid, error_witnesses, error_bits, error_strict),
        _report("growth-bounds", grid, growth_witnesses, growth_bits),
    ]


# ----------------------------------------------------------------------
# full-roots reconstruction
# ----------------------------------------------------------------------

def check_reconstruction(grid: Grid, bits: int) -> list[LawReport]:
    """Rounded full-roots sums equal the exact terms across the grid."""
    _require_certified_regime(grid)
    witnesses = []
    for q, k in grid.cells:
        params = SequenceParams(q, k)
        table = term_table(params, grid.n_max)
        try:
            sweep = reconstruction_sweep(params, params.min_index, grid.n_max, bits)
            for n, rec, residual, imag in sweep:
                if rec is None:
                    witnesses.append(Witness(
                        q, k, n, "fail",
                        f"rounding guard failed: residual={float(residual):.3g}, "
                        f"imag={float(imag):.3g}",
                    ))
                    continue
                exact = table[n - params.min_index]
                if rec.value != exact:
                    witnesses.append(Witness(
                        q, k, n, "fail",
                        f"reconstruction {rec.value} != exact {exact} "
                        f"(residual {float(residual):.3g})",
                    ))
        except (RootSolveError, ReconstructionError) as exc:
            witnesses.append(Witness(q, k, None, "fail", f"root solve failed: {exc}"))
    return [_report("reconstruction", grid, witnesses, bits)]


# ----------------------------------------------------------------------
# heuristic decay probe (not a law: the vanishing limit has no finite
# certificate, so this is labeled and reported separately)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DecayProbe:
    """Certified spot check that |E_n| is already tiny at a probe index."""

    grid: Grid
    bits: int
    n_probe: int
    threshold: Fraction
    failures: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures


def error_decay_probe(
    grid: Grid,
    bits: int,
    n_probe: int = 40,
    threshold: Fraction = Fraction(1, 10**6),
) -> DecayProbe:
    """Check certified |E_{n_probe}| < threshold on every grid cell.

    This is a heuristic stand-in for the vanishing-limit statement; a
    cell fails only when the enclosure certifies the violation.
    """
    _require_certified_regime(grid)
    failures = []
    for q, k in grid.cells:
        params = SequenceParams(q, k)
        dom = binet_dominant(params, n_probe, bits)
        e = (-dom.interval) + term_definition(params, n_probe)
        if -threshold < e.lo and e.hi < threshold:
            continue
        if e.lo >= threshold or e.hi <= -threshold:
            failures.append(Witness(
                q, k, n_probe, "fail",
                f"|E_{n_probe}| certified >= {float(threshold):.1e}: "
                f"[{float(e.lo):.6g}, {float(e.hi):.6g}]",
            ))
        else:
            failures.append(Witness(
                q, k, n_probe, "inconclusive",
                f"E_{n_probe} enclosure too wide at {dom.bits_used} bits",
            ))
    return DecayProbe(grid, bits, n_probe, threshold, _sorted_witnesses(failures))


# ----------------------------------------------------------------------
# dispatcher
# ----------------------------------------------------------------------

_SELECTORS = (
    "identities",
    "lemma1",
    "lemma2",
    "error-bound",
    "growth",
    "reconstruction",
    "all",
)


def run_laws(selection: str, grid: Grid, bits: int) -> list[LawReport]:
    """All reports for a CLI selector, in canonical law order."""
    if selection not in _SELECTORS:
        raise DomainError(f"unknown law selector {selection!r}")
    reports: list[LawReport] = []
    if selection in ("identities", "all"):
        reports += check_identities(Grid(grid.q_values, grid.k_values,
                                         min(grid.n_max, 500)))
    if selection in ("lemma1", "lemma2", "all"):
        root_reports = check_root_laws(grid, bits)
        if selection == "lemma1":
            root_reports = [r for r in root_reports if r.law_id.startswith("lemma1")]
        elif selection == "lemma2":
            root_reports = [r for r in root_reports if r.law_id == "lemma2-sandwich"]
        reports += root_reports
    if selection in ("error-bound", "growth", "all"):
        bound_reports = check_term_bounds(grid, bits)
        if selection == "error-bound":
            bound_reports = [r for r in bound_reports if r.law_id == "error-bound"]
        elif selection == "growth":
            bound_reports = [r for r in bound_reports if r.law_id == "growth-bounds"]
        reports += bound_reports
    if selection in ("reconstruction", "all"):
        recon_grid = Grid(grid.q_values, grid.k_values,
                          min(grid.n_max, RECONSTRUCTION_N_CAP))
        reports += check_reconstruction(
            recon_grid, max(bits, RECONSTRUCTION_MIN_BITS)
        )
    return reports
