"""States as polynomials in the three commuting creation letters, and two
independent exact engines for the bilinear pairing <<Psi | Phi>> = int Psi Phi.

All pairings are reported in units of <<Psi0 | Psi0>>; the absolute value of
that constant is (pi/lam)^(3/2), which never needs to be represented because
only ratios enter every verified statement.

The two engines are deliberately unrelated:

* :func:`wick_inner` contracts creation words against each other with the
  constant cross-brackets of the letters, reducing each monomial pairing to a
  signed matrix permanent (Ryser inclusion-exclusion).
* :func:`gaussian_moment_inner` works directly with wavefunctions: it expands
  the integrand over real coordinates and evaluates formal Gaussian moments
  from the exact inverse of the quadratic-form matrix.

Their agreement on a sweep of states is one of the acceptance criteria.
"""

from __future__ import annotations

from functools import lru_cache

from .coeff import ParamScalar, LAM, G, I, ONE, ZERO, scalar
from .weyl import (Poly3, GaussianState, SPACE_ZZB, SPACE_UVW, SPACE_X123,
                   poly_var, poly_one)
from . import operators as _ops

__all__ = [
    "CreationPolynomial", "contraction_matrix", "expand_q_power",
    "wick_inner", "gaussian_moment_inner", "eta_apply", "to_gaussian_state",
    "gaussian_state_to_creation", "creation_to_uvw", "uvw_to_creation",
    "uvw_poly_to_zzb", "zzb_poly_to_uvw", "verify_contraction_matrix",
]

_LETTERS = ("A", "B", "C")


class CreationPolynomial:
    """Finite sum of creation words (i, j, l) with ParamScalar coefficients.

    A word (i, j, l) denotes the state  (A+)^i (B+)^j (C+)^l  applied to the
    ground state; the letters commute, so the exponent triple is well defined.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {m: c for m, c in (terms or {}).items() if not c.is_zero()}
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("CreationPolynomial is immutable")

    @classmethod
    def word(cls, i: int, j: int, l: int, coeff=None):
        return cls({(i, j, l): coeff if coeff is not None else ONE})

    @classmethod
    def zero(cls):
        return cls({})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return CreationPolynomial(out)

    def __neg__(self):
        return CreationPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CreationPolynomial":
        c = ParamScalar(c) if not isinstance(c, ParamScalar) else c
        return CreationPolynomial({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                add = c1 * c2
                cur = out.get(m)
                out[m] = add if cur is None else cur + add
        return CreationPolynomial(out)

    def __eq__(self, other):
        if not isinstance(other, CreationPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (i, j, l), coeff in self.sorted_terms():
            factors = []
            for name, e in (("A+", i), ("B+", j), ("C+", l)):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = coeff.render()
            if factors:
                if coeff.is_one():
                    body = "*".join(factors)
                elif (-coeff).is_one():
                    body = "-" + "*".join(factors)
                else:
                    atomic = all(ch not in "+-" or k == 0 for k, ch in enumerate(cs))
                    cs = cs if atomic and "/" not in cs[1:] else f"({cs})"
                    body = cs + "*" + "*".join(factors)
            else:
                body = cs
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(" - " + body[1:])
            else:
                pieces.append(" + " + body)
        return "".join(pieces)

    def to_json(self):
        return [{"word": list(m), "coeff": c.render()} for m, c in self.sorted_terms()]

    def __repr__(self):
        return f"CreationPolynomial({self.render()})"


# ---------------------------------------------------------------------------
# Contraction table
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def contraction_matrix():
    """3x3 table K[x][y] = bracket of the x-lowering with the y-raising letter.

    Cross-validated against the Weyl-algebra brackets on first use; raising
    letters are also checked to commute among themselves (which is what makes
    creation words well defined).
    """
    minus_2lam = scalar(-2) * LAM
    two_g = scalar(2) * G
    table = {
        ("A", "A"): ZERO, ("A", "B"): minus_2lam, ("A", "C"): ZERO,
        ("B", "A"): minus_2lam, ("B", "B"): ZERO, ("B", "C"): two_g,
        ("C", "A"): ZERO, ("C", "B"): two_g, ("C", "C"): minus_2lam,
    }
    _crosscheck_contractions(table)
    return table


def _crosscheck_contractions(table):
    cat = _ops.catalogue()
    ident = {(0, 0, 0, 0, 0, 0)}
    for x in _LETTERS:
        for y in _LETTERS:
            br = cat[f"{x}-"].commutator(cat[f"{y}+"])
            expected = table[(x, y)]
            if expected.is_zero():
                ok = br.is_zero()
            else:
                ok = set(br.terms) == ident and br.terms[(0, 0, 0, 0, 0, 0)] == expected
            if not ok:
                raise AssertionError(f"contraction table mismatch at [{x}-, {y}+]")
    for pair in (("A+", "B+"), ("A+", "C+"), ("B+", "C+"),
                 ("A-", "B-"), ("A-", "C-"), ("B-", "C-")):
        if not cat[pair[0]].commutator(cat[pair[1]]).is_zero():
            raise AssertionError(f"letters {pair} do not commute")


def verify_contraction_matrix() -> list:
    """Identity records for the table cross-validation."""
    from .weyl import identity_op
    cat = _ops.catalogue()
    table = contraction_matrix()
    out = []
    for x in _LETTERS:
        for y in _LETTERS:
            out.append(_ops.record(
                f"fock/contraction-{x}{y}", "contraction table matches the algebra",
                cat[f"{x}-"].commutator(cat[f"{y}+"]),
                identity_op().scale(table[(x, y)])))
    return out


# ---------------------------------------------------------------------------
# Wick engine
# ---------------------------------------------------------------------------

def _letters(word):
    i, j, l = word
    return ("A",) * i + ("B",) * j + ("C",) * l


def _permanent(rows):
    """Exact permanent by Ryser inclusion-exclusion with Gray-code updates."""
    p = len(rows)
    if p == 0:
        return ONE
    sums = [ZERO] * p
    total = ZERO
    gray = 0
    sign_total = -1 if p % 2 else 1
    for k in range(1, 1 << p):
        new_gray = k ^ (k >> 1)
        bit = gray ^ new_gray
        col = bit.bit_length() - 1
        if new_gray & bit:
            sums = [s + row[col] for s, row in zip(sums, rows)]
        else:
            sums = [s - row[col] for s, row in zip(sums, rows)]
        gray = new_gray
        prod = ONE
        for s in sums:
            prod = prod * s
        bits = gray.bit_count()
        term = prod if bits % 2 == 0 else -prod
        total = total + term
    return total if sign_total == 1 else -total


@lru_cache(maxsize=None)
def _word_inner(bra, ket) -> ParamScalar:
    lb, lk = _letters(bra), _letters(ket)
    if len(lb) != len(lk):
        return ZERO
    K = contraction_matrix()
    rows = [[K[(x, y)] for y in lk] for x in lb]
    value = _permanent(rows)
    return -value if len(lb) % 2 else value


def wick_inner(bra: CreationPolynomial, ket: CreationPolynomial) -> ParamScalar:
    """<<bra Psi0 | ket Psi0>> in units of <<Psi0 | Psi0>>, by contraction
    permanents; symmetric and bilinear."""
    total = ZERO
    for wb, cb in bra.terms.items():
        for wk, ck in ket.terms.items():
            v = _word_inner(wb, wk)
            if not v.is_zero():
                total = total + cb * ck * v
    return total


def expand_q_power(k: int) -> CreationPolynomial:
    """(Q+)^k applied to the ground state, via the trinomial expansion of the
    factorized form 2 A+ B+ - (C+)^2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    import math
    out = {}
    for j in range(k + 1):
        coeff = scalar(math.comb(k, j)) * scalar(2) ** j * scalar(-1) ** (k - j)
        out[(j, j, 2 * (k - j))] = coeff
    return CreationPolynomial(out)


# ---------------------------------------------------------------------------
# Variable changes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _uvw_images_in_zzb():
    z, zb, x3 = (poly_var(i, SPACE_ZZB) for i in range(3))
    u = zb
    v = z.scale(-LAM) + x3.scale(scalar(2) * G)
    w = zb.scale(G) + x3.scale(-LAM)
    return (u, v, w)


@lru_cache(maxsize=None)
def _zzb_images_in_uvw():
    u, v, w = (poly_var(i, SPACE_UVW) for i in range(3))
    lam2 = LAM * LAM
    z = u.scale(scalar(2) * G * G / lam2) + v.scale(-ONE / LAM) + w.scale(scalar(-2) * G / lam2)
    zb = u
    x3 = u.scale(G / LAM) + w.scale(-ONE / LAM)
    return (z, zb, x3)


def uvw_poly_to_zzb(p: Poly3) -> Poly3:
    return p.substitute(_uvw_images_in_zzb())


def zzb_poly_to_uvw(p: Poly3) -> Poly3:
    return p.substitute(_zzb_images_in_uvw())


@lru_cache(maxsize=None)
def raising_ops_uvw():
    """The raising letters in the weight-stripped polynomial picture: exact
    first-order operators on polynomials in (u, v, w).

    Acting on 1 they give -2*lam*u, v, 2*w, but on higher polynomials every
    application also carries a derivative piece, so creation words are NOT
    plain monomials in (u, v, w).
    """
    from .weyl import variable as _va, derivative as _de
    u, v, w = (_va(i, SPACE_UVW) for i in range(3))
    du, dv, dw = (_de(i, SPACE_UVW) for i in range(3))
    a_hat = (u + dv).scale(scalar(-2) * LAM)
    b_hat = v + du + dw.scale(G)
    c_hat = w.scale(2) + dv.scale(scalar(2) * G) + dw.scale(-LAM)
    return (a_hat, b_hat, c_hat)


@lru_cache(maxsize=None)
def lowering_ops_uvw():
    """The lowering letters in the polynomial picture: pure derivative ops."""
    from .weyl import derivative as _de
    du, dv, dw = (_de(i, SPACE_UVW) for i in range(3))
    return (dv.scale(scalar(-2) * LAM), du + dw.scale(G),
            dv.scale(scalar(2) * G) + dw.scale(-LAM))


@lru_cache(maxsize=None)
def _word_uvw_poly(word) -> Poly3:
    """Exact wavefunction of a single creation word, in (u, v, w)."""
    i, j, l = word
    if i:
        return raising_ops_uvw()[0].apply_poly(_word_uvw_poly((i - 1, j, l)))
    if j:
        return raising_ops_uvw()[1].apply_poly(_word_uvw_poly((i, j - 1, l)))
    if l:
        return raising_ops_uvw()[2].apply_poly(_word_uvw_poly((i, j, l - 1)))
    return poly_one(SPACE_UVW)


def creation_to_uvw(p: CreationPolynomial) -> Poly3:
    """Exact wavefunction of a creation polynomial in the (u, v, w) variables,
    by repeated operator application."""
    out = Poly3({}, SPACE_UVW)
    for word, c in p.terms.items():
        out = out + _word_uvw_poly(word).scale(c)
    return out


def uvw_to_creation(p: Poly3) -> CreationPolynomial:
    """Inverse of :func:`creation_to_uvw` by triangular elimination.

    The leading graded-lex term of a word's wavefunction is
    (-2*lam)^i * 2^l * u^i v^j w^l, and all corrections have lower total
    degree, so peeling leading terms terminates.
    """
    if p.space != SPACE_UVW:
        raise ValueError("expected a uvw polynomial")
    minus_2lam = scalar(-2) * LAM
    two = scalar(2)
    residue = p
    out = {}
    while not residue.is_zero():
        mono, coeff = max(residue.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        i, j, l = mono
        c = coeff / (minus_2lam ** i * two ** l)
        out[mono] = out.get(mono, ZERO) + c
        residue = residue - _word_uvw_poly(mono).scale(c)
    return CreationPolynomial(out)


def to_gaussian_state(p: CreationPolynomial) -> GaussianState:
    """The wavefunction of a creation polynomial, as poly(z, zb, x3) * Psi0."""
    return GaussianState(uvw_poly_to_zzb(creation_to_uvw(p)))


def gaussian_state_to_creation(s: GaussianState) -> CreationPolynomial:
    return uvw_to_creation(zzb_poly_to_uvw(s.poly))


# ---------------------------------------------------------------------------
# Gaussian-moment engine
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _covariance():
    """Exact (A^-1)/2 for the squared-ground-state weight exp(-x^T A x)."""
    lam, g = LAM, G
    A = [[lam, ZERO, -g],
         [ZERO, lam, I * g],
         [-g, I * g, lam]]
    det = _det3(A)
    adj = [[_cofactor(A, j, i) for j in range(3)] for i in range(3)]
    half = ONE / scalar(2)
    return tuple(tuple(adj[i][j] / det * half for j in range(3)) for i in range(3)), det


def _det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def _cofactor(M, i, j):
    rows = [r for k, r in enumerate(M) if k != i]
    m = [[v for k, v in enumerate(r) if k != j] for r in rows]
    det2 = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return det2 if (i + j) % 2 == 0 else -det2


_MOMENT_CACHE = {}


def _moment(e) -> ParamScalar:
    """Formal Gaussian moment <x1^e1 x2^e2 x3^e3> by Wick pairing."""
    if sum(e) == 0:
        return ONE
    if sum(e) % 2:
        return ZERO
    hit = _MOMENT_CACHE.get(e)
    if hit is not None:
        return hit
    cov, _ = _covariance()
    i = next(k for k in range(3) if e[k])
    total = ZERO
    base = list(e)
    base[i] -= 1
    for j in range(3):
        mult = base[j]
        if mult:
            rest = list(base)
            rest[j] -= 1
            total = total + cov[i][j] * mult * _moment(tuple(rest))
    _MOMENT_CACHE[e] = total
    return total


@lru_cache(maxsize=None)
def _x123_images():
    x1, x2, x3 = (poly_var(i, SPACE_X123) for i in range(3))
    return (x1 + x2.scale(I), x1 + x2.scale(-I), x3)


def eta_apply(s: GaussianState) -> GaussianState:
    """Parity image of a state: the partner function on the adjoint side.

    Swaps the conjugate pair of variables in both the polynomial part and the
    Gaussian weight; applying it twice is the identity.
    """
    return s.eta_apply()


def gaussian_moment_inner(bra: GaussianState, ket: GaussianState) -> ParamScalar:
    """Independent oracle: int bra ket Psi0^2 / int Psi0^2 by formal Gaussian
    moments over the real coordinates."""
    if bra.weight != ket.weight or bra.weight != "psi0":
        raise ValueError("the moment oracle pairs standard-weight states")
    prod = (bra.poly * ket.poly).substitute(_x123_images())
    total = ZERO
    for mono, coeff in prod.terms.items():
        m = _moment(mono)
        if not m.is_zero():
            total = total + coeff * m
    return total
