"""Divisor classes and linear equivalence.

For a smooth complete toric variety with m rays in an n-dimensional lattice,
the characters of the torus embed into the divisor group through the pairing
u -> (<u, v_rho>)_rho, and the Picard group is the (free, rank m-n)
cokernel.  A PicContext fixes a basis of that quotient, either a preferred
list of ray divisors whose classes form a basis, or the Smith-normal-form
quotient basis, and exposes class computation as an exact linear map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotABasis, TorsionInPicard
from .fan import Fan
from .lattice import IntMatrix, smith_normal_form, unimodular_inverse

DivisorVector = tuple[int, ...]  # coefficients on Z_1 ... Z_m
ClassVector = tuple[int, ...]    # coordinates in the chosen Pic basis


def pairing_matrix(fan: Fan) -> IntMatrix:
    """The m x n matrix with entry (rho, j) = <e_j dual, v_rho>."""
    return IntMatrix.from_rows(fan.rays)


@dataclass(frozen=True)
class PicContext:
    """Divisor-class encoder for a fixed fan and Pic basis.

    class_map is an (m-n) x m integer matrix computing class coordinates;
    rep_map is an m x (m-n) right inverse picking a representative divisor
    for each class.  The kernel of class_map is exactly the image of the
    character pairing, so equality of classes is linear equivalence.
    """

    fan: Fan
    basis: Optional[tuple[int, ...]]
    class_map: IntMatrix
    rep_map: IntMatrix

    @property
    def rank(self) -> int:
        return self.fan.n_rays - self.fan.dim


def build_pic_context(fan: Fan, basis_divisors: Optional[Sequence[int]] = None) -> PicContext:
    """Build the class encoder, optionally on a user-chosen divisor basis.

    Raises NotABasis when the supplied divisors' classes do not freely
    generate Pic, and TorsionInPicard if the quotient is not free (which
    cannot happen for a smooth complete fan and signals corrupt input).
    """
    m, n = fan.n_rays, fan.dim
    rho = m - n
    pairing = pairing_matrix(fan)

    if basis_divisors is not None:
        basis = tuple(int(i) for i in basis_divisors)
        if len(basis) != rho or len(set(basis)) != rho or any(i < 0 or i >= m for i in basis):
            raise NotABasis(f"need {rho} distinct ray indices, got {basis}")
        # Columns: the n pairing columns, then the basis unit vectors.  The
        # classes form a basis exactly when this m x m matrix is unimodular.
        cols = [pairing.col(j) for j in range(n)]
        for b in basis:
            cols.append(tuple(1 if i == b else 0 for i in range(m)))
        full = IntMatrix.from_rows(cols).transpose()
        try:
            inv = unimodular_inverse(full)
        except Exception as exc:
            raise NotABasis(f"classes of rays {basis} do not freely generate Pic: {exc}") from exc
        class_map = IntMatrix.from_rows(inv.entries[n:])
        rep_map = IntMatrix.from_rows([[1 if i == b else 0 for b in basis] for i in range(m)])
        assert (class_map @ rep_map).is_identity()
        return PicContext(fan, basis, class_map, rep_map)

    snf = smith_normal_form(pairing)
    diag = snf.D.diagonal_entries()
    if any(d not in (0, 1) for d in diag):
        raise TorsionInPicard(f"divisor class group has torsion: invariant factors {diag}")
    if sum(1 for d in diag if d == 1) != n:
        raise TorsionInPicard("character pairing is not injective; fan does not span the lattice")
    class_map = IntMatrix.from_rows(snf.U.entries[n:])
    u_inv = unimodular_inverse(snf.U)
    rep_map = IntMatrix.from_rows([row[n:] for row in u_inv.entries])
    assert (class_map @ rep_map).is_identity()
    return PicContext(fan, None, class_map, rep_map)


def to_class(ctx: PicContext, divisor: Sequence[int]) -> ClassVector:
    """Class coordinates of a toric divisor sum(a_rho Z_rho)."""
    if len(divisor) != ctx.fan.n_rays:
        raise ValueError("divisor coefficient vector has wrong length")
    return ctx.class_map.mul_vec(divisor)


def class_to_divisor(ctx: PicContext, cls: Sequence[int]) -> DivisorVector:
    """A representative divisor for a class (basis divisors when available)."""
    if len(cls) != ctx.rank:
        raise ValueError("class vector has wrong length")
    return ctx.rep_map.mul_vec(cls)


def are_linearly_equivalent(ctx: PicContext, d1: Sequence[int], d2: Sequence[int]) -> bool:
    return to_class(ctx, d1) == to_class(ctx, d2)


def anticanonical_divisor(fan: Fan) -> DivisorVector:
    """-K = Z_1 + ... + Z_m."""
    return (1,) * fan.n_rays


def canonical_divisor(fan: Fan) -> DivisorVector:
    return (-1,) * fan.n_rays


def divisor_label(divisor: Sequence[int]) -> str:
    """Human-readable name of sum(a_rho Z_rho), e.g. 'Z4+2Z5-Z6' or 'O'."""
    parts = []
    for i, a in enumerate(divisor):
        if a == 0:
            continue
        coeff = "" if abs(a) == 1 else str(abs(a))
        parts.append(("-" if a < 0 else "+") + coeff + f"Z{i + 1}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def class_label(ctx: PicContext, cls: Sequence[int]) -> str:
    """Render a class as a line bundle on the context's basis divisors."""
    divisor = class_to_divisor(ctx, cls)
    name = divisor_label(divisor)
    return "O" if name == "0" else f"O({name})"
