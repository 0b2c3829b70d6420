"""Exact counting of fixed points of multihomogeneous self-maps of
P^{n_1} x ... x P^{n_k}, hence of classes of extreme points (singular vector
tuples) of a generic multilinear form.

Arithmetic happens in the truncated integer polynomial ring
Z[a_1, ..., a_k] / (a_1^{n_1+1}, ..., a_k^{n_k+1}): the Chow ring of the
product of projective spaces.  The number of fixed points of a map with
multidegree matrix (d_ij) is the coefficient of a_1^{n_1} ... a_k^{n_k} in

    prod_j  sum_{i=0}^{n_j} (d_j1 a_1 + ... + d_jk a_k)^{n_j - i} a_j^i

(the product over j of the graph-times-diagonal contributions; the triple sum
of the counting theorem factors slot by slot).  Everything is exact integer
arithmetic; the convention d^0 = 1 holds even for d = 0, so a constant map
has one fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError


@dataclass(frozen=True)
class TruncatedClassPolynomial:
    """Element of Z[a_1..a_k]/(a_i^{n_i+1}); coeffs maps exponent tuples
    (e_1..e_k), e_i <= n_i, to integers."""

    factor_dims: tuple
    coeffs: dict

    def __post_init__(self):
        dims = tuple(int(n) for n in self.factor_dims)
        if any(n < 0 for n in dims):
            raise DimensionMismatchError(f"factor dims must be >= 0, got {dims}")
        clean = {}
        for exps, c in self.coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(dims):
                raise DimensionMismatchError(
                    f"exponent tuple {exps} has wrong arity for dims {dims}"
                )
            if any(e < 0 for e in exps):
                raise DimensionMismatchError(f"negative exponent in {exps}")
            c = int(c)
            if c and all(e <= n for e, n in zip(exps, dims)):
                clean[exps] = clean.get(exps, 0) + c
        object.__setattr__(self, "factor_dims", dims)
        object.__setattr__(self, "coeffs", {e: c for e, c in clean.items() if c})

    @classmethod
    def zero(cls, factor_dims) -> "TruncatedClassPolynomial":
        return cls(tuple(factor_dims), {})

    @classmethod
    def one(cls, factor_dims) -> "TruncatedClassPolynomial":
        k = len(factor_dims)
        return cls(tuple(factor_dims), {(0,) * k: 1})

    @classmethod
    def variable(cls, factor_dims, index: int) -> "TruncatedClassPolynomial":
        """The hyperplane class a_{index} (0-based factor index)."""
        k = len(factor_dims)
        exps = tuple(1 if i == index else 0 for i in range(k))
        return cls(tuple(factor_dims), {exps: 1})

    def coefficient(self, exps) -> int:
        return self.coeffs.get(tuple(exps), 0)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedClassPolynomial(self.factor_dims, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedClassPolynomial(
                self.factor_dims, {e: c * other for e, c in self.coeffs.items()}
            )
        return class_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative power")
        result = TruncatedClassPolynomial.one(self.factor_dims)
        base = self
        while p:
            if p & 1:
                result = result * base
            base = base * base if p > 1 else base
            p >>= 1
        return result

    def _check(self, other):
        if self.factor_dims != other.factor_dims:
            raise DimensionMismatchError(
                f"factor dims {self.factor_dims} != {other.factor_dims}"
            )


def class_mul(
    a: TruncatedClassPolynomial, b: TruncatedClassPolynomial
) -> TruncatedClassPolynomial:
    """Product in the truncated ring; exponents exceeding n_i are dropped."""
    a._check(b)
    dims = a.factor_dims
    out = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > n for x, n in zip(e, dims)):
                continue
            out[e] = out.get(e, 0) + ca * cb
    return TruncatedClassPolynomial(dims, out)


@dataclass(frozen=True)
class MultidegreeProfile:
    """Dimensions (n_1..n_k) of the projective factors and the k x k
    multidegree matrix of the self-map (row j = multidegree of F_j)."""

    dims: tuple
    degrees: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        degs = tuple(tuple(int(d) for d in row) for row in self.degrees)
        k = len(dims)
        if len(degs) != k or any(len(row) != k for row in degs):
            raise DimensionMismatchError(
                f"degree matrix must be {k}x{k} for dims {dims}"
            )
        if any(d < 0 for row in degs for d in row):
            raise DimensionMismatchError("multidegrees must be nonnegative")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "degrees", degs)

    @property
    def k(self) -> int:
        return len(self.dims)


def count_fixed_points(profile: MultidegreeProfile) -> int:
    """Number of fixed points (over C) of a generic self-map with the given
    multidegree profile."""
    dims = profile.dims
    total = TruncatedClassPolynomial.one(dims)
    for j in range(profile.k):
        linear = TruncatedClassPolynomial.zero(dims)
        for l, d in enumerate(profile.degrees[j]):
            if d:
                linear = linear + d * TruncatedClassPolynomial.variable(dims, l)
        aj = TruncatedClassPolynomial.variable(dims, j)
        # G_j = sum_{i=0}^{n_j} linear^{n_j - i} * a_j^i
        power = TruncatedClassPolynomial.one(dims)  # linear^0
        terms = [power]
        for _ in range(dims[j]):
            power = power * linear
            terms.append(power)
        gj = TruncatedClassPolynomial.zero(dims)
        ai = TruncatedClassPolynomial.one(dims)
        for i in range(dims[j] + 1):
            gj = gj + terms[dims[j] - i] * ai
            ai = ai * aj
        total = total * gj
    return total.coefficient(dims)


def gradient_profile(form_dims) -> MultidegreeProfile:
    """Multidegree profile of the gradient self-map of a generic multilinear
    form with slot dimensions form_dims = (n_1+1, ..., n_r+1): row i is 0 in
    position i and 1 elsewhere."""
    dims = tuple(int(d) - 1 for d in form_dims)
    k = len(dims)
    degrees = tuple(
        tuple(0 if l == j else 1 for l in range(k)) for j in range(k)
    )
    return MultidegreeProfile(dims=dims, degrees=degrees)


def count_extreme_classes(form_dims) -> int:
    """Number of classes of extreme points (singular vector tuples, over C)
    of a generic multilinear form with the given slot dimensions.

    For a non-generic form with finitely many extreme classes this is an
    upper bound, not the exact count.
    """
    form_dims = tuple(int(d) for d in form_dims)
    if len(form_dims) < 2:
        raise DimensionMismatchError("need at least two slots")
    if any(d < 1 for d in form_dims):
        raise DimensionMismatchError(f"slot dims must be positive, got {form_dims}")
    return count_fixed_points(gradient_profile(form_dims))
