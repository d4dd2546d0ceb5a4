"""Two-cocycles on the double cover of GL_r, over the structured subgroups
where closed formulas exist, plus the genuine characters built from them.

The cocycle sigma_r is a partial evaluator by design: it knows the torus
rule, the block-diagonal rule (with Kubota's formula inside 2x2 blocks of
determinant one), the unipotent rule, and the central-scalar rule. Anything
else raises UnsupportedDomainError rather than extrapolating. The block
cocycle tau on a standard parabolic Levi has the same shape: per-block
cocycles times Hilbert cross-terms of determinants.

Cocycle formulas are pure Hilbert-symbol algebra and work at every place of
Q including 2; the character layer (which needs a Weil index) is restricted
to odd finite places and the real place by its AdditiveCharacter argument.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, PreconditionError, UnsupportedDomainError
from .local_arith import (
    Place,
    as_fraction,
    hilbert,
    prime_factors,
    same_square_class,
    valuation_and_unit,
)
from .weil_index import AdditiveCharacter, EighthRoot, mu

Sign = int


def _sign_power(s: Sign, n: int) -> Sign:
    return s if n % 2 else 1


# block payloads --------------------------------------------------------


class Torus:
    """A diagonal segment: nonzero rational entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        es = tuple(as_fraction(e) for e in entries)
        if not es or any(e == 0 for e in es):
            raise DomainError("torus entries must be nonzero")
        object.__setattr__(self, "entries", es)

    def __setattr__(self, *a):
        raise AttributeError("Torus is immutable")

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> Fraction:
        d = Fraction(1)
        for e in self.entries:
            d *= e
        return d

    def is_identity(self) -> bool:
        return all(e == 1 for e in self.entries)

    def compose(self, other):
        if not isinstance(other, Torus) or other.size != self.size:
            raise UnsupportedDomainError("torus composition needs equal sizes")
        return Torus(tuple(a * b for a, b in zip(self.entries, other.entries)))

    def __eq__(self, other):
        return isinstance(other, Torus) and self.entries == other.entries

    def __hash__(self):
        return hash(("Torus", self.entries))

    def __repr__(self):
        return f"Torus({list(map(str, self.entries))})"


class MatrixBlock:
    """A 2x2 invertible rational block; ``unimodular`` pins det = 1."""

    __slots__ = ("rows", "unimodular")

    def __init__(self, rows, unimodular: bool = False):
        m = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if len(m) != 2 or any(len(row) != 2 for row in m):
            raise DomainError("matrix block must be 2x2")
        d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if d == 0:
            raise DomainError("matrix block must be invertible")
        if unimodular and d != 1:
            raise DomainError(f"unimodular block must have det 1, got {d}")
        object.__setattr__(self, "rows", m)
        object.__setattr__(self, "unimodular", unimodular)

    def __setattr__(self, *a):
        raise AttributeError("MatrixBlock is immutable")

    size = 2

    def det(self) -> Fraction:
        m = self.rows
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]

    def is_identity(self) -> bool:
        return self.rows == ((1, 0), (0, 1))

    def is_diagonal(self) -> bool:
        return self.rows[0][1] == 0 and self.rows[1][0] == 0

    def compose(self, other):
        if not isinstance(other, MatrixBlock):
            raise UnsupportedDomainError("matrix block composition mismatch")
        a, b = self.rows, other.rows
        rows = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )
        return MatrixBlock(rows, unimodular=self.unimodular and other.unimodular)

    def __eq__(self, other):
        return isinstance(other, MatrixBlock) and self.rows == other.rows

    def __hash__(self):
        return hash(("MatrixBlock", self.rows))

    def __repr__(self):
        return f"MatrixBlock({[[str(x) for x in r] for r in self.rows]})"


def sl2(a, b, c, d) -> MatrixBlock:
    return MatrixBlock(((a, b), (c, d)), unimodular=True)


def gl2(a, b, c, d) -> MatrixBlock:
    return MatrixBlock(((a, b), (c, d)))


class Scalar:
    """A central scalar a * identity of the given size."""

    __slots__ = ("a", "size")

    def __init__(self, a, size: int):
        a = as_fraction(a)
        if a == 0:
            raise DomainError("central scalar must be nonzero")
        if size < 1:
            raise DomainError("scalar size must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "size", size)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def det(self) -> Fraction:
        return self.a**self.size

    def is_identity(self) -> bool:
        return self.a == 1

    def compose(self, other):
        if not isinstance(other, Scalar) or other.size != self.size:
            raise UnsupportedDomainError("scalar composition needs equal sizes")
        return Scalar(self.a * other.a, self.size)

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.a == other.a
            and self.size == other.size
        )

    def __hash__(self):
        return hash(("Scalar", self.a, self.size))

    def __repr__(self):
        return f"Scalar({self.a}, size={self.size})"


# structured elements ----------------------------------------------------


class StructuredElement:
    """An element of GL_r drawn from the classes the cocycle knows.

    Either block-diagonal (an ordered tuple of Torus / MatrixBlock / Scalar
    payloads whose sizes sum to r) or upper unipotent (a full matrix with
    unit diagonal). Immutable.
    """

    __slots__ = ("r", "blocks", "matrix")

    def __init__(self, blocks=None, matrix=None):
        if (blocks is None) == (matrix is None):
            raise DomainError("exactly one of blocks/matrix must be given")
        if blocks is not None:
            blocks = tuple(blocks)
            if not blocks:
                raise DomainError("empty block list")
            for b in blocks:
                if not isinstance(b, (Torus, MatrixBlock, Scalar)):
                    raise DomainError(f"unknown payload {b!r}")
            r = sum(b.size for b in blocks)
        else:
            m = tuple(tuple(as_fraction(x) for x in row) for row in matrix)
            r = len(m)
            if any(len(row) != r for row in m):
                raise DomainError("matrix must be square")
            for i in range(r):
                if m[i][i] != 1:
                    raise DomainError("unipotent element needs unit diagonal")
                for j in range(i):
                    if m[i][j] != 0:
                        raise DomainError("unipotent element must be upper triangular")
            matrix = m
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *a):
        raise AttributeError("StructuredElement is immutable")

    # constructors

    @classmethod
    def torus(cls, *entries) -> "StructuredElement":
        if len(entries) == 1 and isinstance(entries[0], (tuple, list)):
            entries = tuple(entries[0])
        return cls(blocks=(Torus(entries),))

    @classmethod
    def central(cls, a, r: int) -> "StructuredElement":
        return cls(blocks=(Scalar(a, r),))

    @classmethod
    def block_diagonal(cls, payloads) -> "StructuredElement":
        return cls(blocks=tuple(payloads))

    @classmethod
    def unipotent_upper(cls, rows) -> "StructuredElement":
        return cls(matrix=rows)

    @classmethod
    def identity(cls, r: int) -> "StructuredElement":
        return cls.torus((Fraction(1),) * r)

    # predicates and views

    @property
    def is_unipotent(self) -> bool:
        return self.matrix is not None

    @property
    def is_central(self) -> bool:
        return (
            self.blocks is not None
            and len(self.blocks) == 1
            and isinstance(self.blocks[0], Scalar)
        )

    @property
    def is_torus(self) -> bool:
        return self.blocks is not None and all(
            isinstance(b, Torus) for b in self.blocks
        )

    @property
    def torus_entries(self) -> tuple:
        """Diagonal entries, for torus and central elements."""
        if self.is_torus:
            out = []
            for b in self.blocks:
                out.extend(b.entries)
            return tuple(out)
        if self.is_central:
            return (self.blocks[0].a,) * self.r
        raise UnsupportedDomainError("element has no diagonal form")

    def is_identity(self) -> bool:
        if self.is_unipotent:
            n = self.r
            return all(
                self.matrix[i][j] == (1 if i == j else 0)
                for i in range(n)
                for j in range(n)
            )
        return all(b.is_identity() for b in self.blocks)

    def det(self) -> Fraction:
        if self.is_unipotent:
            return Fraction(1)
        d = Fraction(1)
        for b in self.blocks:
            d *= b.det()
        return d

    def block_structure(self) -> tuple:
        if self.blocks is None:
            return ()
        return tuple((type(b).__name__, b.size) for b in self.blocks)

    def in_even_torus(self, place: Place) -> bool:
        """Torus of even rank whose consecutive entry ratios t1/t2, t3/t4, ...
        are local squares."""
        if not (self.is_torus or self.is_central):
            return False
        t = self.torus_entries
        if len(t) % 2:
            return False
        return all(
            same_square_class(t[k], t[k + 1], place) for k in range(0, len(t), 2)
        )

    def has_square_det(self, place: Place) -> bool:
        return same_square_class(self.det(), 1, place)

    def entry(self, i: int, j: int) -> Fraction:
        """1-based matrix entry; unipotent elements only."""
        if not self.is_unipotent:
            raise UnsupportedDomainError("entry access needs a matrix element")
        return self.matrix[i - 1][j - 1]

    def compose(self, other: "StructuredElement") -> "StructuredElement":
        """Product g * other, defined when both stay in one supported class."""
        if self.is_unipotent and other.is_unipotent:
            if self.r != other.r:
                raise UnsupportedDomainError("rank mismatch")
            n = self.r
            rows = tuple(
                tuple(
                    sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n))
                    for j in range(n)
                )
                for i in range(n)
            )
            return StructuredElement(matrix=rows)
        if self.is_unipotent or other.is_unipotent:
            raise UnsupportedDomainError("mixed unipotent product not supported")
        # a central scalar broadcasts over a torus
        a, b = self, other
        if a.is_central and b.is_torus:
            a = StructuredElement.torus(a.torus_entries)
        if b.is_central and a.is_torus:
            b = StructuredElement.torus(b.torus_entries)
        if a.is_torus and b.is_torus and a.r == b.r:
            return StructuredElement.torus(
                tuple(x * y for x, y in zip(a.torus_entries, b.torus_entries))
            )
        if a.block_structure() != b.block_structure():
            raise UnsupportedDomainError(
                f"block structures differ: {a.block_structure()} vs {b.block_structure()}"
            )
        return StructuredElement.block_diagonal(
            tuple(p.compose(q) for p, q in zip(a.blocks, b.blocks))
        )

    def __eq__(self, other):
        return (
            isinstance(other, StructuredElement)
            and self.blocks == other.blocks
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash(("StructuredElement", self.blocks, self.matrix))

    def __repr__(self):
        if self.is_unipotent:
            return f"StructuredElement(unipotent r={self.r})"
        return f"StructuredElement({list(self.blocks)})"


class CoverElement:
    """A pair (g, xi) in the double cover; multiplication goes through
    sigma_eval explicitly, never implicitly."""

    __slots__ = ("element", "xi")

    def __init__(self, element: StructuredElement, xi: Sign = 1):
        if xi not in (1, -1):
            raise DomainError(f"cover sign must be +-1, got {xi}")
        object.__setattr__(self, "element", element)
        object.__setattr__(self, "xi", xi)

    def __setattr__(self, *a):
        raise AttributeError("CoverElement is immutable")

    def multiply(self, other: "CoverElement", place: Place) -> "CoverElement":
        sign = sigma_eval(self.element, other.element, place)
        return CoverElement(self.element.compose(other.element), sign * self.xi * other.xi)

    def __eq__(self, other):
        return (
            isinstance(other, CoverElement)
            and self.element == other.element
            and self.xi == other.xi
        )

    def __hash__(self):
        return hash(("CoverElement", self.element, self.xi))

    def __repr__(self):
        return f"CoverElement({self.element!r}, xi={self.xi})"


# the cocycle ------------------------------------------------------------


def _torus_rule(ts, hs, place: Place) -> Sign:
    s = 1
    for i in range(len(ts)):
        for j in range(i + 1, len(hs)):
            s *= hilbert(ts[i], hs[j], place)
    return s


def kubota_sl2(g, h, place: Place) -> Sign:
    """Kubota's 2-cocycle on SL2: (x(gh)/x(g), x(gh)/x(h)) where x is the
    lower-left entry when nonzero, else the lower-right entry."""
    if isinstance(g, StructuredElement) or isinstance(h, StructuredElement):
        raise DomainError("kubota_sl2 takes 2x2 blocks, not structured elements")
    if g.det() != 1 or h.det() != 1:
        raise PreconditionError("kubota_sl2 needs determinant-one blocks")

    def x(m: MatrixBlock) -> Fraction:
        return m.rows[1][0] if m.rows[1][0] != 0 else m.rows[1][1]

    gh = g.compose(h)
    return hilbert(x(gh) / x(g), x(gh) / x(h), place)


def _payload_sigma(g, h, place: Place) -> Sign:
    if g.is_identity() or h.is_identity():
        return 1
    if isinstance(g, Scalar) and isinstance(h, Scalar) and g.size == h.size:
        return _sign_power(hilbert(g.a, h.a, place), g.size * (g.size - 1) // 2)
    def diag_of(b):
        if isinstance(b, Torus):
            return b.entries
        if isinstance(b, Scalar):
            return (b.a,) * b.size
        if b.is_diagonal():
            return (b.rows[0][0], b.rows[1][1])
        return None

    gt, ht = diag_of(g), diag_of(h)
    if gt is not None and ht is not None and len(gt) == len(ht):
        return _torus_rule(gt, ht, place)
    if (
        isinstance(g, MatrixBlock)
        and isinstance(h, MatrixBlock)
        and g.det() == 1
        and h.det() == 1
    ):
        return kubota_sl2(g, h, place)
    raise UnsupportedDomainError(
        f"no block cocycle formula for this pair: {g!r}, {h!r}"
    )


def sigma_eval(g: StructuredElement, h: StructuredElement, place: Place) -> Sign:
    """The cover cocycle sigma_r(g, h) on the supported element classes.

    Rules, in dispatch order: identity on either side gives +1; a unipotent
    upper-triangular argument gives +1; central scalar pairs give
    (a, b)^(r(r-1)/2); torus pairs give the product of (t_i, h_j) over
    i < j; matching block-diagonal pairs give the per-block cocycles times
    (det g_i, det h_j) over block slots i < j. Everything else raises
    UnsupportedDomainError.
    """
    if g.r != h.r:
        raise UnsupportedDomainError("rank mismatch")
    if g.is_identity() or h.is_identity():
        return 1
    if g.is_unipotent or h.is_unipotent:
        return 1
    if g.is_central and h.is_central:
        n = g.r
        return _sign_power(
            hilbert(g.blocks[0].a, h.blocks[0].a, place), n * (n - 1) // 2
        )
    if (g.is_torus or g.is_central) and (h.is_torus or h.is_central):
        return _torus_rule(g.torus_entries, h.torus_entries, place)
    # partitions must agree; payload classes may differ slot by slot, and
    # _payload_sigma decides per pair whether a formula exists
    if tuple(b.size for b in g.blocks) != tuple(b.size for b in h.blocks):
        raise UnsupportedDomainError(
            f"block partitions differ: {g.block_structure()} vs {h.block_structure()}"
        )
    s = 1
    for p, q in zip(g.blocks, h.blocks):
        s *= _payload_sigma(p, q, place)
    dets_g = [p.det() for p in g.blocks]
    dets_h = [q.det() for q in h.blocks]
    s *= _torus_rule(dets_g, dets_h, place)
    return s


def sigma_torus_even_reduced(t: StructuredElement, h: StructuredElement, place: Place) -> Sign:
    """Short form of the torus cocycle on the even-square subtorus: the
    product of (t_i, h_i) over odd positions i = 1, 3, 5, ... only. Agrees
    with sigma_eval there; that agreement is a tested contract."""
    if not (t.in_even_torus(place) and h.in_even_torus(place)):
        raise PreconditionError("both arguments must lie in the even square subtorus")
    ts, hs = t.torus_entries, h.torus_entries
    s = 1
    for k in range(0, len(ts), 2):
        s *= hilbert(ts[k], hs[k], place)
    return s


def global_sigma_product(g: StructuredElement, h: StructuredElement) -> Sign:
    """Product of sigma_eval over the real place and every prime where a
    factor could be nontrivial (primes of the entries' numerators and
    denominators, plus 2). The product formula says +1; computed, not
    assumed."""
    primes = {2}

    def harvest(e: StructuredElement):
        vals = []
        if e.is_unipotent:
            return
        for b in e.blocks:
            if isinstance(b, Torus):
                vals.extend(b.entries)
            elif isinstance(b, Scalar):
                vals.append(b.a)
            else:
                vals.extend(x for row in b.rows for x in row if x != 0)
            vals.append(b.det())
        for x in vals:
            for n in (x.numerator, x.denominator):
                if abs(n) != 1:
                    primes.update(prime_factors(n))

    harvest(g)
    harvest(h)
    s = sigma_eval(g, h, Place.real())
    for p in sorted(primes):
        s *= sigma_eval(g, h, Place.finite(p))
    return s


def cocycle_identity_check(
    g: StructuredElement, h: StructuredElement, k: StructuredElement, place: Place
) -> bool:
    """True iff sigma(g,h) sigma(gh,k) = sigma(g,hk) sigma(h,k)."""
    lhs = sigma_eval(g, h, place) * sigma_eval(g.compose(h), k, place)
    rhs = sigma_eval(g, h.compose(k), place) * sigma_eval(h, k, place)
    return lhs == rhs


def tau_p(m: StructuredElement, h: StructuredElement, place: Place) -> Sign:
    """Block cocycle on a standard Levi of type (r_1, ..., r_k): per-block
    cocycles times Hilbert cross-terms of block determinants. Same shape as
    the block rule of sigma_eval; kept separate because its domain is the
    Levi with a fixed block type, not all of GL_r."""
    if m.is_unipotent or h.is_unipotent:
        raise UnsupportedDomainError("block cocycle needs block-diagonal arguments")
    if m.is_torus and h.is_torus and m.r == h.r:
        return _torus_rule(m.torus_entries, h.torus_entries, place)
    return sigma_eval(m, h, place)


def _embed(payload, slot: int, partition) -> StructuredElement:
    blocks = []
    for idx, size in enumerate(partition):
        if idx == slot:
            if payload.size != size:
                raise DomainError(f"payload size {payload.size} != slot size {size}")
            blocks.append(payload)
        else:
            blocks.append(Torus((Fraction(1),) * size))
    return StructuredElement.block_diagonal(blocks)


def block_lemmas_check(
    i: int,
    j: int,
    g,
    h,
    place: Place,
    partition=(2, 2),
    enforce_square: bool = True,
) -> bool:
    """Commutation and homomorphism checks for blocks in different Levi slots.

    Embeds g at slot i and h at slot j (identities elsewhere) and verifies
    (1) tau is symmetric on the pair of embeddings, and (2) tau of the
    combined block-diagonal pair equals the product of per-block cocycles,
    i.e. the cross-terms vanish. Both hold exactly when the block
    determinants are local squares. With enforce_square=True (the default)
    non-square determinants raise PreconditionError; pass False to watch
    the checks fail honestly on such input.
    """
    if i == j or not (0 <= i < len(partition)) or not (0 <= j < len(partition)):
        raise DomainError(f"need two distinct slots, got {i}, {j}")
    if enforce_square:
        for blk in (g, h):
            if not same_square_class(blk.det(), 1, place):
                raise PreconditionError(
                    f"block determinant {blk.det()} is not a square at {place}"
                )
    ei_g = _embed(g, i, partition)
    ej_h = _embed(h, j, partition)
    commutes = tau_p(ei_g, ej_h, place) == tau_p(ej_h, ei_g, place)

    both = [
        g if idx == i else (h if idx == j else Torus((Fraction(1),) * size))
        for idx, size in enumerate(partition)
    ]
    full = StructuredElement.block_diagonal(both)
    blockwise = 1
    for payload in both:
        blockwise *= _payload_sigma(payload, payload, place)
    homomorphic = tau_p(full, full, place) == blockwise
    return commutes and homomorphic


# value type for genuine characters ---------------------------------------


class RootScaled:
    """A positive rational times an eighth root of unity; exact arithmetic.

    Negative rational coefficients fold their sign into the root, so the
    representation is canonical and equality is decidable.
    """

    __slots__ = ("coeff", "root")

    def __init__(self, coeff, root: EighthRoot = EighthRoot(0)):
        coeff = as_fraction(coeff)
        if coeff == 0:
            raise DomainError("RootScaled coefficient must be nonzero")
        if coeff < 0:
            coeff, root = -coeff, root * EighthRoot(4)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "root", root)

    def __setattr__(self, *a):
        raise AttributeError("RootScaled is immutable")

    @classmethod
    def one(cls) -> "RootScaled":
        return cls(1)

    def __mul__(self, other):
        if isinstance(other, RootScaled):
            return RootScaled(self.coeff * other.coeff, self.root * other.root)
        if isinstance(other, EighthRoot):
            return RootScaled(self.coeff, self.root * other)
        if isinstance(other, (int, Fraction)):
            return RootScaled(self.coeff * other, self.root)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "RootScaled":
        return RootScaled(1 / self.coeff, self.root.inverse())

    def __pow__(self, n: int) -> "RootScaled":
        return RootScaled(self.coeff**n, self.root**n)

    def value(self) -> complex:
        return float(self.coeff) * self.root.value()

    def __eq__(self, other):
        return (
            isinstance(other, RootScaled)
            and self.coeff == other.coeff
            and self.root == other.root
        )

    def __hash__(self):
        return hash(("RootScaled", self.coeff, self.root))

    def __repr__(self):
        return f"{self.coeff} * {self.root!r}"


class UnramifiedCharacter:
    """Multiplicative character determined by one value: at a finite place,
    its value at the uniformizer (trivial on units); at the real place, a
    sign character x -> sign(x)^e. Values are exact rationals."""

    __slots__ = ("place", "at_uniformizer", "sign_exponent")

    def __init__(self, place: Place, at_uniformizer=None, sign_exponent: int = 0):
        if place.is_finite:
            if at_uniformizer is None:
                raise DomainError("finite place needs a value at the uniformizer")
            at_uniformizer = as_fraction(at_uniformizer)
            if at_uniformizer == 0:
                raise DomainError("character value must be nonzero")
        object.__setattr__(self, "place", place)
        object.__setattr__(self, "at_uniformizer", at_uniformizer)
        object.__setattr__(self, "sign_exponent", sign_exponent % 2)

    def __setattr__(self, *a):
        raise AttributeError("UnramifiedCharacter is immutable")

    def value(self, x) -> Fraction:
        x = as_fraction(x)
        if x == 0:
            raise DomainError("character of 0 is undefined")
        if self.place.is_real:
            return Fraction(1) if (x > 0 or self.sign_exponent == 0) else Fraction(-1)
        v, _ = valuation_and_unit(x, self.place.p)
        return self.at_uniformizer**v

    def __repr__(self):
        if self.place.is_real:
            return f"UnramifiedCharacter(real, sign^{self.sign_exponent})"
        return f"UnramifiedCharacter({self.place}, at_p={self.at_uniformizer})"


# genuine characters -------------------------------------------------------


def character_eval(
    kind: str,
    t: StructuredElement,
    xi: Sign,
    chi: UnramifiedCharacter,
    psi: AdditiveCharacter,
    a=None,
) -> RootScaled:
    """Genuine character of the even-square subtorus cover.

    kind "standard": xi * chi(det t) * prod over odd positions of mu(t_i).
    kind "twisted": xi * chi(det t) * mu_{psi_a}(t_1)^(-1) * prod over odd
    positions i >= 3 of mu(t_i)^(-1); needs the twist parameter a.
    """
    place = psi.place
    if not t.in_even_torus(place):
        raise PreconditionError("argument is not in the even square subtorus")
    if xi not in (1, -1):
        raise DomainError(f"cover sign must be +-1, got {xi}")
    entries = t.torus_entries
    out = RootScaled(chi.value(t.det())) * xi
    if kind == "standard":
        for k in range(0, len(entries), 2):
            out = out * mu(entries[k], psi)
    elif kind == "twisted":
        if a is None:
            raise DomainError("twisted kind needs the twist parameter")
        out = out * mu(entries[0], psi.twist(a)).inverse()
        for k in range(2, len(entries), 2):
            out = out * mu(entries[k], psi).inverse()
    else:
        raise DomainError(f"unknown character kind {kind!r}")
    return out


def central_char_eval(
    kind: str,
    a,
    xi: Sign,
    q: int,
    chi_value,
    psi: AdditiveCharacter,
    eta_value=None,
) -> RootScaled:
    """Central character values on scalar matrices in the cover.

    Kinds (z = a * identity, q the block count):
      "odd":       xi * chi(a)^(2q+1) * mu(a)^q        (rank 2q+1)
      "even":      xi * chi(a)^q      * mu(a)^q        (rank 2q)
      "pair_even": xi * chi(a)^(2q) * eta(a) * mu(a)^(-q)
      "pair_odd":  xi * chi(a)^q    * eta(a) * mu(a)^(-q)
    chi_value and eta_value are the already-evaluated character values at a.
    """
    if xi not in (1, -1):
        raise DomainError(f"cover sign must be +-1, got {xi}")
    if q < 1:
        raise DomainError("block count must be positive")
    a = as_fraction(a)
    m = mu(a, psi)
    chi_value = as_fraction(chi_value)
    if kind == "odd":
        out = RootScaled(chi_value ** (2 * q + 1), m**q)
    elif kind == "even":
        out = RootScaled(chi_value**q, m**q)
    elif kind in ("pair_even", "pair_odd"):
        if eta_value is None:
            raise DomainError(f"kind {kind!r} needs eta_value")
        chi_pow = chi_value ** (2 * q) if kind == "pair_even" else chi_value**q
        out = RootScaled(chi_pow * as_fraction(eta_value), m**-q)
    else:
        raise DomainError(f"unknown central character kind {kind!r}")
    return out * xi


def nilpotent_char_phase(
    kind: str,
    n: StructuredElement,
    psi: AdditiveCharacter,
    a=1,
    coefficients=None,
) -> Fraction:
    """Exact phase (in [0,1)) of an additive character of the unipotent
    upper-triangular group.

    kind "alternating": psi applied to x_{r-1,r} + x_{r-3,r-2} + ...
    kind "whittaker":   psi applied to a*x_{1,2} + sum_{i>=2} x_{i,i+1}
    kind "tuple":       psi applied to sum_i c_i * x_{2i-1,2i}
    """
    if not n.is_unipotent:
        raise PreconditionError("nilpotent character needs a unipotent element")
    r = n.r
    if kind == "alternating":
        arg = Fraction(0)
        i = r - 1
        while i >= 1:
            arg += n.entry(i, i + 1)
            i -= 2
    elif kind == "whittaker":
        arg = as_fraction(a) * n.entry(1, 2) if r >= 2 else Fraction(0)
        for i in range(2, r):
            arg += n.entry(i, i + 1)
    elif kind == "tuple":
        if coefficients is None:
            raise DomainError("tuple kind needs coefficients")
        cs = [as_fraction(c) for c in coefficients]
        if 2 * len(cs) > r:
            raise DomainError("too many coefficients for the rank")
        arg = Fraction(0)
        for idx, c in enumerate(cs, start=1):
            arg += c * n.entry(2 * idx - 1, 2 * idx)
    else:
        raise DomainError(f"unknown nilpotent character kind {kind!r}")
    return psi.phase(arg)


def nilpotent_char_eval(
    kind: str,
    n: StructuredElement,
    psi: AdditiveCharacter,
    a=1,
    coefficients=None,
) -> complex:
    import cmath
    import math

    phase = nilpotent_char_phase(kind, n, psi, a=a, coefficients=coefficients)
    return cmath.exp(2j * math.pi * float(phase))
