"""A finite lattice-quotient model of the Weil representation at an odd prime.

The carrier is the quotient (p^-N integers)/(p^N integers), of size p^(2N),
with each point carrying Haar mass p^-N. Functions on it stand in for
Schwartz functions supported on the lattice p^-N Z_p and constant on cosets
of p^N Z_p; that window is self-dual, so the Fourier transform with kernel
psi(2xy) acts exactly and the double transform is exactly the parity flip.

Generator actions (chi is an auxiliary multiplicative character, supplied
as already-evaluated values where needed):

    w         f -> gamma(psi) * fourier(f)
    n(b)      f -> psi(b x^2) f(x)
    t(a)      f -> |a|^(1/2) mu(a) f(a x)
    d(s)      f -> chi(s) |s|^(-1/2) f(s^-1 x)   (the cover point diag(1, s^2))
    central(a)f -> chi(a) mu(a) f(x)
    sign(xi)  f -> xi f(x)

Window discipline: a substitution x -> a x is well defined on the carrier
only for v_p(a) >= 0 (negative valuations push points off the lattice, and
quadratic phases psi(b x^2) need v_p(b) >= 0 to be constant on cosets).
Direct generator applications additionally keep |v_p| small enough that the
model is a faithful truncation: v(a) <= N-1 for t, v(b) <= 2N-2 for n,
v(s) >= -(N-1) for d. Canonical words for products are allowed twice the
t-depth, since products of in-window generators land there. Violations
raise PreconditionError, never wrap around silently.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import (
    DomainError,
    ModelInconsistencyError,
    PreconditionError,
    UnsupportedDomainError,
)
from .local_arith import (
    Place,
    as_fraction,
    is_prime,
    square_class_rep,
    valuation_and_unit,
)
from .weil_index import AdditiveCharacter, gamma, mu

OP_TOL = 1e-9


def _sqrt_fraction(x: Fraction):
    """Exact rational square root, or None."""
    if x <= 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class FiniteWeilModel:
    """Carrier, exact phase bookkeeping, and the Fourier kernel for one
    (p, N, psi). The additive character must have unit scale so the kernel
    psi(2xy) is well defined pointwise on the carrier."""

    __slots__ = ("p", "N", "psi", "size", "_fourier", "_scale_res")

    def __init__(self, p: int, N: int, psi: AdditiveCharacter):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "size", p ** (2 * N))
        M = self.size
        s = psi.scale
        c2 = (2 * s.numerator * pow(s.denominator, -1, M)) % M
        object.__setattr__(self, "_scale_res", c2)
        idx = np.arange(M, dtype=np.int64)
        phases = (c2 * (np.outer(idx, idx) % M)) % M
        kernel = np.exp(2j * np.pi * phases / M) * (p ** (-N))
        object.__setattr__(self, "_fourier", kernel)

    def __setattr__(self, *a):
        raise AttributeError("FiniteWeilModel is immutable")

    @property
    def place(self) -> Place:
        return Place.finite(self.p)

    def point(self, k: int) -> Fraction:
        """The rational value of carrier index k: k / p^N."""
        return Fraction(k % self.size, self.p**self.N)

    def points(self):
        return [self.point(k) for k in range(self.size)]

    def negate_index(self, k: int) -> int:
        return (-k) % self.size

    def scale_index(self, k: int, a: Fraction) -> int:
        """Index of a * x_k; requires v_p(a) >= 0."""
        v, u = valuation_and_unit(a, self.p)
        if v < 0:
            raise PreconditionError(
                f"substitution by valuation {v} leaves the carrier"
            )
        M = self.size
        ur = (u.numerator * pow(u.denominator, -1, M)) % M
        return (k * ur * self.p**v) % M

    def fourier_matrix(self) -> np.ndarray:
        return self._fourier

    def __repr__(self):
        return f"FiniteWeilModel(p={self.p}, N={self.N}, scale={self.psi.scale})"


def build_model(p: int, N: int, scale=1) -> FiniteWeilModel:
    """Model constructor; odd prime p, window depth N >= 1, unit scale."""
    if not is_prime(p) or p == 2:
        raise UnsupportedDomainError(f"need an odd prime, got {p}")
    if N < 1:
        raise DomainError("window depth must be at least 1")
    scale = as_fraction(scale)
    place = Place.finite(p)
    v, _ = valuation_and_unit(scale, p)
    if v != 0:
        raise PreconditionError(
            "character scale must be a unit; twist the model, not the lattice"
        )
    return FiniteWeilModel(p, N, AdditiveCharacter(place, scale))


class ModelFunction:
    """A function on the carrier: a complex amplitude per point."""

    __slots__ = ("model", "values")

    def __init__(self, model: FiniteWeilModel, values):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (model.size,):
            raise DomainError(f"need {model.size} amplitudes, got {values.shape}")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "values", values)

    def __setattr__(self, *a):
        raise AttributeError("ModelFunction is immutable")

    @classmethod
    def delta(cls, model: FiniteWeilModel, k: int) -> "ModelFunction":
        v = np.zeros(model.size, dtype=np.complex128)
        v[k % model.size] = 1.0
        return cls(model, v)

    @classmethod
    def indicator_integers(cls, model: FiniteWeilModel) -> "ModelFunction":
        # the p-adic integers inside the carrier: indices divisible by p^N
        v = np.zeros(model.size, dtype=np.complex128)
        v[:: model.p**model.N] = 1.0
        return cls(model, v)

    @classmethod
    def random(cls, model: FiniteWeilModel, rng) -> "ModelFunction":
        v = np.array(
            [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(model.size)]
        )
        return cls(model, v)

    def _flip(self) -> np.ndarray:
        out = np.empty_like(self.values)
        for k in range(self.model.size):
            out[self.model.negate_index(k)] = self.values[k]
        return out

    def even_part(self) -> "ModelFunction":
        return ModelFunction(self.model, (self.values + self._flip()) / 2)

    def odd_part(self) -> "ModelFunction":
        return ModelFunction(self.model, (self.values - self._flip()) / 2)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def __sub__(self, other):
        return ModelFunction(self.model, self.values - other.values)


def fourier(f: ModelFunction) -> ModelFunction:
    """The transform with kernel psi(2xy) and mass p^-N per point; applying
    it twice gives exactly the parity flip."""
    return ModelFunction(f.model, f.model.fourier_matrix() @ f.values)


# generator operators -----------------------------------------------------


def _check_window(v: int, lo: int, hi: int, what: str):
    if not (lo <= v <= hi):
        raise PreconditionError(
            f"{what} valuation {v} outside window [{lo}, {hi}]"
        )


def operator(model: FiniteWeilModel, gen, chi_value=None, extended: bool = False) -> np.ndarray:
    """Matrix of one generator on the carrier basis.

    gen is a tuple: ("w",), ("n", b), ("t", a), ("d", s), ("central", a),
    ("sign", xi). For "d" the parameter is the square root s of the torus
    entry, since the scalar involves chi(s). chi_value is the evaluated
    character value needed by "d" and "central". extended widens the
    substitution windows to what products of in-window generators reach.
    """
    M, p, N = model.size, model.p, model.N
    kind = gen[0]
    if kind == "w":
        return gamma(model.psi).value() * model.fourier_matrix()
    if kind == "n":
        b = as_fraction(gen[1])
        if b == 0:
            return np.eye(M, dtype=np.complex128)
        v, _ = valuation_and_unit(b, p)
        hi = 2 * N - 2 if not extended else 4 * N - 4
        _check_window(v, 0, max(hi, 0), "quadratic phase")
        diag = np.empty(M, dtype=np.complex128)
        for k in range(M):
            x = model.point(k)
            diag[k] = cmath.exp(2j * math.pi * float(model.psi.phase(b * x * x)))
        return np.diag(diag)
    if kind == "t":
        a = as_fraction(gen[1])
        if a == 0:
            raise DomainError("torus entry must be nonzero")
        v, _ = valuation_and_unit(a, p)
        hi = N - 1 if not extended else 2 * N - 2
        _check_window(v, 0, max(hi, 0), "torus substitution")
        scalar = p ** (-v / 2) * mu(a, model.psi).value()
        out = np.zeros((M, M), dtype=np.complex128)
        for k in range(M):
            out[k, model.scale_index(k, a)] = scalar
        return out
    if kind == "d":
        s = as_fraction(gen[1])
        if s == 0:
            raise DomainError("square-torus parameter must be nonzero")
        if chi_value is None:
            raise DomainError("d-generator needs the character value at s")
        v, _ = valuation_and_unit(s, p)
        lo = -(N - 1) if not extended else -(2 * N - 2)
        _check_window(v, min(lo, 0), 0, "inverse substitution")
        scalar = complex(chi_value) * p ** (v / 2)
        out = np.zeros((M, M), dtype=np.complex128)
        for k in range(M):
            out[k, model.scale_index(k, 1 / s)] = scalar
        return out
    if kind == "central":
        a = as_fraction(gen[1])
        if chi_value is None:
            raise DomainError("central generator needs the character value at a")
        return complex(chi_value) * mu(a, model.psi).value() * np.eye(M, dtype=np.complex128)
    if kind == "sign":
        xi = gen[1]
        if xi not in (1, -1):
            raise DomainError(f"cover sign must be +-1, got {xi}")
        return float(xi) * np.eye(M, dtype=np.complex128)
    raise DomainError(f"unknown generator {gen!r}")


def apply_generator(model: FiniteWeilModel, gen, f: ModelFunction, chi_value=None) -> ModelFunction:
    return ModelFunction(model, operator(model, gen, chi_value=chi_value) @ f.values)


def op_of_word(model: FiniteWeilModel, word, chi=None, extended: bool = False) -> np.ndarray:
    """Operator of a generator word (left factor acts last, as in function
    composition). chi is a value oracle used by d/central letters."""
    out = np.eye(model.size, dtype=np.complex128)
    for gen in word:
        cv = None
        if gen[0] in ("d", "central"):
            if chi is None:
                raise DomainError("word contains a chi-dependent letter")
            cv = chi.value(gen[1])
        out = out @ operator(model, gen, chi_value=cv, extended=extended)
    return out


# canonical words and the empirical multiplier ----------------------------


def canonical_word(mat, place_hint=None) -> list:
    """Canonical generator word for a 2x2 block: determinant one gives the
    Bruhat form (n w t n for a nonzero lower-left entry, t n otherwise); a
    square determinant s^2 peels off d(s) on the right."""
    rows = mat.rows if hasattr(mat, "rows") else tuple(
        tuple(as_fraction(x) for x in row) for row in mat
    )
    al, be = rows[0]
    ga, de = rows[1]
    det = al * de - be * ga
    if det == 1:
        if ga == 0:
            return [("t", al), ("n", be / al)]
        return [("n", al / ga), ("w",), ("t", -ga), ("n", de / ga)]
    s = _sqrt_fraction(det)
    if s is None:
        raise UnsupportedDomainError(
            f"no canonical word: determinant {det} is not a rational square"
        )
    # peel the square factor off the second column: M = M0 * diag(1, s^2)
    inner = ((al, be / (s * s)), (ga, de / (s * s)))
    return canonical_word(inner) + [("d", s)]


def operator_for_matrix(model: FiniteWeilModel, mat, chi=None) -> np.ndarray:
    return op_of_word(model, canonical_word(mat), chi=chi, extended=True)


def projective_multiplier(g, h, model: FiniteWeilModel, chi=None) -> complex:
    """The scalar c with op(g) op(h) = c op(gh), extracted from the operator
    matrices of the canonical words. Raises ModelInconsistencyError if the
    two sides are not proportional within tolerance (1e-6 relative)."""
    og = operator_for_matrix(model, g, chi=chi)
    oh = operator_for_matrix(model, h, chi=chi)
    gh = g.compose(h) if hasattr(g, "compose") else None
    if gh is None:
        raise DomainError("g and h must be composable matrix blocks")
    ogh = operator_for_matrix(model, gh, chi=chi)
    prod = og @ oh
    k = np.unravel_index(np.argmax(np.abs(ogh)), ogh.shape)
    if abs(ogh[k]) < OP_TOL:
        raise ModelInconsistencyError("product word operator vanished")
    c = prod[k] / ogh[k]
    resid = np.max(np.abs(prod - c * ogh))
    if resid > 1e-6 * max(1.0, float(np.max(np.abs(prod)))):
        raise ModelInconsistencyError(
            f"operators are not proportional: residual {resid}"
        )
    return complex(c)


def borel_sign(mat, place: Place) -> int:
    """The +-1 function supported on the upper-triangular cell: for a block
    with vanishing lower-left entry, the Hilbert symbol of its upper-left
    entry against -1; elsewhere +1. Its coboundary is the exact discrepancy
    between the model multiplier and Kubota's formula (a tested contract,
    not an assumption)."""
    rows = mat.rows if hasattr(mat, "rows") else mat
    if rows[1][0] == 0:
        from .local_arith import hilbert

        return hilbert(rows[0][0], -1, place)
    return 1


# structural checks --------------------------------------------------------


def parity_invariance_check(model: FiniteWeilModel, gen, chi_value=None) -> bool:
    """True iff the generator's operator commutes with the parity flip,
    i.e. preserves the even/odd decomposition."""
    op = operator(model, gen, chi_value=chi_value)
    M = model.size
    perm = np.zeros((M, M))
    for k in range(M):
        perm[model.negate_index(k), k] = 1.0
    return bool(np.max(np.abs(perm @ op @ perm - op)) < OP_TOL)


def whittaker_eigen_check(model: FiniteWeilModel, b_index: int, c) -> bool:
    """Evaluation at carrier point b composed with the quadratic-phase
    generator n(c) multiplies by psi(c b^2): the eigenproperty of the
    evaluation functional, checked on the full operator matrix."""
    c = as_fraction(c)
    op = operator(model, ("n", c))
    b = model.point(b_index)
    expect = cmath.exp(2j * math.pi * float(model.psi.phase(c * b * b)))
    row = op[b_index % model.size]
    want = np.zeros(model.size, dtype=np.complex128)
    want[b_index % model.size] = expect
    return bool(np.max(np.abs(row - want)) < OP_TOL)


def whittaker_functional_exists(model: FiniteWeilModel, a) -> bool:
    """Whether some evaluation functional has the quadratic eigencharacter
    of scale a: true iff a is in the square class of some nonzero carrier
    point squared (times the model's scale). Enumerates the carrier."""
    a = as_fraction(a)
    if a == 0:
        raise DomainError("target scale must be nonzero")
    place = model.place
    target = square_class_rep(a, place)
    seen = set()
    for k in range(1, model.size):
        x = model.point(k)
        if x == 0:
            continue
        seen.add(square_class_rep(model.psi.scale * x * x, place))
    return target in seen


def central_word_check(model: FiniteWeilModel, a, chi) -> bool:
    """The word t(a) d(a) (torus then square-torus with parameter a) lands
    on the central scalar chi(a) mu(a) with multiplier exactly +1."""
    a = as_fraction(a)
    word = op_of_word(model, [("t", a), ("d", a)], chi=chi)
    direct = operator(model, ("central", a), chi_value=chi.value(a))
    return bool(np.max(np.abs(word - direct)) < OP_TOL)


# twisting ------------------------------------------------------------------


def twist_intertwiner_check(a, model: FiniteWeilModel, t_samples=None, b_samples=None) -> bool:
    """Conjugation by diag(1, a) carries the psi-model to the psi_a-model.

    Verified at the word level, generator by generator, for unit a:
    n(b) conjugates to n(ab) with no scalar; w conjugates to the word
    w t(1/a) with no scalar; t(c) is fixed by conjugation but picks up the
    exact cover sign (a, c) from the diagonal torus cocycle. When a = c^2
    is a rational square the explicit intertwiner f(x) -> f(c x) is also
    checked against every generator. Non-unit a raises PreconditionError:
    rescaling the character by p moves the self-dual lattice, which this
    fixed-carrier model cannot represent faithfully.
    """
    from .local_arith import hilbert

    a = as_fraction(a)
    p = model.p
    v, _ = valuation_and_unit(a, p)
    if v != 0:
        raise PreconditionError(
            "twists are supported for unit scales only on a fixed carrier"
        )
    if t_samples is None:
        # include the uniformizer when the window permits, so the cover
        # sign on torus generators is exercised non-trivially
        t_samples = (2, -1) + ((p,) if model.N >= 2 else ())
    if b_samples is None:
        b_samples = (1, 2, -1) + ((p,) if model.N >= 2 else ())
    twisted = FiniteWeilModel(p, model.N, model.psi.twist(a))
    ok = True
    # n(b) -> n(a b), exactly
    for b in b_samples:
        lhs = operator(model, ("n", as_fraction(b) * a))
        rhs = operator(twisted, ("n", b))
        ok = ok and np.max(np.abs(lhs - rhs)) < OP_TOL
    # w -> w t(1/a), exactly
    lhs = op_of_word(model, [("w",), ("t", 1 / a)])
    rhs = operator(twisted, ("w",))
    ok = ok and np.max(np.abs(lhs - rhs)) < OP_TOL
    # t(c) -> (a, c) t(c)
    for c in t_samples:
        c = as_fraction(c)
        sign = hilbert(a, c, model.place)
        lhs = sign * operator(model, ("t", c))
        rhs = operator(twisted, ("t", c))
        ok = ok and np.max(np.abs(lhs - rhs)) < OP_TOL
    croot = _sqrt_fraction(a)
    if croot is not None:
        # explicit intertwiner T f(x) = f(c x) between the two models
        M = model.size
        T = np.zeros((M, M))
        for k in range(M):
            T[k, model.scale_index(k, croot)] = 1.0
        gens = [("w",), ("n", 2), ("t", 2)]
        if model.N >= 2:
            gens.append(("t", p))
        for gen in gens:
            lhs = T @ operator(model, gen)
            rhs = operator(twisted, gen) @ T
            ok = ok and np.max(np.abs(lhs - rhs)) < OP_TOL
    return bool(ok)


# tensor models --------------------------------------------------------------


def tensor_whittaker_check(model: FiniteWeilModel, block_scales, targets) -> bool:
    """Product-evaluation functionals on a small tensor of twisted models.

    Builds one twisted model per block scale a_i and asks whether a product
    of evaluation functionals transforms under the block-diagonal quadratic
    phases by the tuple character with coefficients (b_1, ..., b_q): true
    iff for every block some nonzero carrier point x has a_i x^2 in the
    square class of b_i. The absence direction exhausts the carrier's
    square classes per block, so a False is a proof at model scale.
    """
    if len(block_scales) != len(targets):
        raise DomainError("need one target per block scale")
    for a_i, b_i in zip(block_scales, targets):
        a_i, b_i = as_fraction(a_i), as_fraction(b_i)
        block = FiniteWeilModel(model.p, model.N, model.psi.twist(a_i))
        if not whittaker_functional_exists(block, b_i * model.psi.scale):
            return False
    return True
