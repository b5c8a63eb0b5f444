"""Poincare-series machinery: linear strands from Hilbert data, and the
two-variable series of the idealization through a truncation window."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bier import bier_ball, canonical_module_generators, y_label
from .complexes import SimplicialComplex
from .errors import BadParams, NotFlag, NotPure
from .fields import FieldSpec
from .homology import is_cohen_macaulay, reduced_homology
from .modbetti import module_betti_over_gamma


def poincare_from_hilbert(h_numerator, dimension: int, i_max: int) -> tuple:
    """Coefficients of (1+t)^dimension / h(-t) through t^i_max.

    For a Koszul algebra with Hilbert series h(t)/(1-t)^dimension these are
    the diagonal Betti numbers of the residue field; the contract itself is
    plain series inversion and makes no Koszulness assumption.
    """
    h = list(h_numerator)
    if not h or h[0] != 1:
        raise BadParams("h-numerator must start with 1")
    a = [((-1) ** k) * h[k] for k in range(len(h))]  # h(-t)
    inv = [1]
    for k in range(1, i_max + 1):
        s = 0
        for l in range(1, min(k, len(a) - 1) + 1):
            s += a[l] * inv[k - l]
        inv.append(-s)
    out = []
    for k in range(i_max + 1):
        out.append(sum(comb(dimension, j) * inv[k - j] for j in range(k + 1)))
    return tuple(out)


def series_mul(a: dict, b: dict, t_max: int) -> dict:
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i, j = i1 + i2, j1 + j2
            if i > t_max:
                continue
            out[(i, j)] = out.get((i, j), 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


@dataclass
class PoincareSeries:
    """Integer coefficients b_{i,j} of s^j t^i, complete for i <= t_max."""

    coeffs: dict
    t_max: int

    def get(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)

    def diagonal(self) -> tuple:
        return tuple(self.get(i, i) for i in range(self.t_max + 1))

    def offdiagonal_entries(self) -> dict:
        return {k: v for k, v in self.coeffs.items() if k[0] != k[1]}

    def to_json_obj(self) -> dict:
        return {
            "t_max": self.t_max,
            "coefficients": [
                {"t": i, "s": j, "value": v} for (i, j), v in sorted(self.coeffs.items())
            ],
        }


@dataclass
class RDeltaPoincare:
    series: PoincareSeries
    face_ring_diagonal: tuple
    module_coeffs: dict  # c_{i,j} with generators normalized to degree 1
    reg_bound: int


def poincare_r_delta(
    delta: SimplicialComplex,
    field: FieldSpec,
    i_max: int,
    sweep_limit: int = 500_000,
) -> RDeltaPoincare:
    """Residue-field Poincare series of the Gorenstein ring through t^i_max.

    The face ring of the whiskered ball is Koszul (the ball is flag), so its
    series comes from Hilbert inversion; the canonical module's table comes
    from the word-class resolution sweep; the two combine by the idealization
    formula P / (1 - t P_module), exactly within the window.
    """
    if not delta.is_pure():
        raise NotPure("needs a pure complex")
    if not delta.is_flag():
        raise NotFlag("needs a flag complex")
    ball = bier_ball(delta)
    gamma = ball.gamma
    n = delta.n
    d = delta.dim() + 1
    diag = poincare_from_hilbert(gamma.h_vector(), n, i_max)
    pa = {(i, i): diag[i] for i in range(i_max + 1) if diag[i]}

    shift = n - d - 1  # canonical generators move from degree n-d to degree 1
    cs = {}
    if i_max >= 1:
        gens = [
            {y_label(v): 1 for v in g} if g else {}
            for g in canonical_module_generators(delta)
        ]
        gens = [g or {} for g in gens]
        table = module_betti_over_gamma(
            gamma, gens, i_max - 1, field, sweep_limit=sweep_limit
        )
        for (i, j), v in table.entries.items():
            cs[(i, j - shift)] = v
        reg_bound = table.regularity() - shift
    else:
        reg_bound = 0

    # 1 / (1 - t * PM) as a geometric sum; t-degrees grow by at least one
    tpm = {(i + 1, j): v for (i, j), v in cs.items()}
    total = {(0, 0): 1}
    power = {(0, 0): 1}
    for _ in range(i_max):
        power = series_mul(power, tpm, i_max)
        if not power:
            break
        for k, v in power.items():
            total[k] = total.get(k, 0) + v
    coeffs = series_mul(pa, total, i_max)
    return RDeltaPoincare(
        series=PoincareSeries(coeffs=coeffs, t_max=i_max),
        face_ring_diagonal=diag,
        module_coeffs=cs,
        reg_bound=reg_bound,
    )


@dataclass
class KoszulVerdict:
    koszul: bool
    characteristic: int
    reason: str
    witness: tuple | None = None  # (face, degree, homology dimension)

    def to_json_obj(self) -> dict:
        obj = {
            "koszul": self.koszul,
            "characteristic": self.characteristic,
            "reason": self.reason,
        }
        if self.witness is not None:
            face, degree, dim = self.witness
            obj["witness"] = {"face": list(face), "degree": degree, "dimension": dim}
        return obj


def koszul_verdict(delta: SimplicialComplex, field: FieldSpec) -> KoszulVerdict:
    """Koszulness of the Gorenstein ring = Cohen-Macaulayness of the complex.

    When false, reports a face whose link has low-degree homology, which by
    the linearity correspondence names the first nonlinear step.
    """
    if not delta.is_pure():
        raise NotPure("needs a pure complex")
    if not delta.is_flag():
        raise NotFlag("needs a flag complex")
    if is_cohen_macaulay(delta, field):
        return KoszulVerdict(
            koszul=True,
            characteristic=field.characteristic,
            reason="the complex is Cohen-Macaulay over this field",
        )
    witness = None
    for mask in sorted(delta.face_masks()):
        face = delta.labels_of(mask)
        link = delta.link(face)
        dl = link.dim()
        if dl <= 0:
            continue
        dims = reduced_homology(link, field)
        for i in range(-1, dl):
            if dims.get(i, 0):
                witness = (face, i, dims[i])
                break
        if witness:
            break
    face, degree, dim = witness
    where = "the complex itself" if not face else f"the link of {''.join(face)}"
    return KoszulVerdict(
        koszul=False,
        characteristic=field.characteristic,
        reason=(
            f"{where} has reduced homology of dimension {dim} in degree {degree}, "
            "below its top degree"
        ),
        witness=witness,
    )
