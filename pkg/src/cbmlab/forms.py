"""Contact 1-forms on a sampled manifold, written as e^f times a base form.

Distances between forms come as certified one-sided bounds: upper bounds by
minimizing the conformal sandwich width over finite candidate map families
(the identity always counts), lower bounds from the volumes of the subgraph
domains in the symplectization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True, eq=False)
class SampledManifold:
    """Quadrature sites for the measure induced by the base contact form.

    ``half_dim`` is the half real dimension of the filled symplectization;
    it controls how volumes respond to Liouville scaling.
    """

    weights: np.ndarray
    half_dim: int

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise InvalidInputError("weights must form a nonempty vector")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise InvalidInputError("site weights must be positive and finite")
        if self.half_dim < 1:
            raise InvalidInputError("half dimension must be >= 1")
        object.__setattr__(self, "weights", weights)
        weights.flags.writeable = False

    @property
    def sites(self) -> int:
        return self.weights.size

    def matches(self, other: "SampledManifold") -> bool:
        return self is other or (
            self.half_dim == other.half_dim and np.array_equal(self.weights, other.weights)
        )


def _check_shared(m1: SampledManifold, m2: SampledManifold) -> None:
    if not m1.matches(m2):
        raise InvalidInputError("objects live on different sampled manifolds")


@dataclass(frozen=True, eq=False)
class ContactFormRep:
    """A contact form e^f alpha0, stored as the exponent samples f."""

    manifold: SampledManifold
    f: np.ndarray

    def __post_init__(self):
        f = np.array(self.f, dtype=float)
        if f.shape != (self.manifold.sites,):
            raise InvalidInputError("f must have one sample per site")
        if not np.all(np.isfinite(f)):
            raise InvalidInputError("f must be finite everywhere")
        object.__setattr__(self, "f", f)
        f.flags.writeable = False

    def rescaled(self, c: float) -> "ContactFormRep":
        """The form scaled by a positive constant: f + ln c."""
        if not (c > 0):
            raise InvalidInputError("rescaling constant must be positive")
        return ContactFormRep(self.manifold, self.f + math.log(c))

    def dominates(self, other: "ContactFormRep") -> bool:
        """Pointwise partial order on exponents."""
        _check_shared(self.manifold, other.manifold)
        return bool(np.all(other.f <= self.f))


@dataclass(frozen=True, eq=False)
class ContactMapRep:
    """Candidate contactomorphism data: a site permutation and its conformal
    exponent g, so pulling back e^f alpha0 yields e^(f o phi + g) alpha0.

    Whether (phi, g) arises from a genuine contactomorphism is not checkable
    at this discretization; candidates are trusted inputs.
    """

    manifold: SampledManifold
    perm: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        perm = np.array(self.perm, dtype=np.int64)
        g = np.array(self.g, dtype=float)
        n = self.manifold.sites
        if perm.shape != (n,) or g.shape != (n,):
            raise InvalidInputError("perm and g must have one entry per site")
        if not np.array_equal(np.sort(perm), np.arange(n)):
            raise InvalidInputError("phi must be a bijection on sites (a permutation)")
        if not np.all(np.isfinite(g)):
            raise InvalidInputError("conformal exponent must be finite")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "g", g)
        perm.flags.writeable = False
        g.flags.writeable = False

    @staticmethod
    def identity(manifold: SampledManifold) -> "ContactMapRep":
        n = manifold.sites
        return ContactMapRep(manifold, np.arange(n), np.zeros(n))

    @staticmethod
    def measure_compatible(manifold: SampledManifold, perm) -> "ContactMapRep":
        """The unique conformal exponent making the permutation preserve the
        subgraph volume of every form: g = (ln w o phi - ln w) / half_dim."""
        perm = np.asarray(perm, dtype=np.int64)
        logw = np.log(manifold.weights)
        g = (logw[perm] - logw) / manifold.half_dim
        return ContactMapRep(manifold, perm, g)

    def compose(self, other: "ContactMapRep") -> "ContactMapRep":
        """Map whose pullback equals pulling back by self, then by other."""
        _check_shared(self.manifold, other.manifold)
        return ContactMapRep(
            self.manifold, self.perm[other.perm], self.g[other.perm] + other.g
        )

    def inverse(self) -> "ContactMapRep":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size)
        return ContactMapRep(self.manifold, inv, -self.g[inv])


def pullback(alpha: ContactFormRep, m: ContactMapRep) -> ContactFormRep:
    """Pull the form back through the candidate map: f o phi + g."""
    _check_shared(alpha.manifold, m.manifold)
    return ContactFormRep(alpha.manifold, alpha.f[m.perm] + m.g)


def dcbm_forms_upper(
    f1: ContactFormRep,
    f2: ContactFormRep,
    candidates: Iterable[ContactMapRep] = (),
) -> float:
    """Upper bound for the form distance over a finite candidate family.

    Each candidate phi bounds the distance by the sup-norm of
    f1 - (f2 o phi + g); the identity candidate is always included.
    """
    _check_shared(f1.manifold, f2.manifold)
    best = float(np.max(np.abs(f1.f - f2.f)))  # identity candidate
    for m in candidates:
        _check_shared(f1.manifold, m.manifold)
        width = float(np.max(np.abs(f1.f - pullback(f2, m).f)))
        if width < best:
            best = width
    return best


def w_alpha_volume(alpha: ContactFormRep) -> float:
    """Volume of the subgraph domain {u < e^f} in the symplectization.

    Radially integrating u^(n'-1) du up to e^f against the site measure
    gives (1/n') * sum e^(n' f) w.
    """
    n = alpha.manifold.half_dim
    return float(np.sum(np.exp(n * alpha.f) * alpha.manifold.weights) / n)


def dcbm_forms_lower_volume(f1: ContactFormRep, f2: ContactFormRep) -> float:
    """Volume lower bound for the form distance.

    A conformal sandwich of width ln C squeezes one subgraph domain between
    Liouville rescalings of the other, and rescaling by C multiplies the
    volume by C^(n'); hence ln C >= |ln(vol1/vol2)| / n'.
    """
    _check_shared(f1.manifold, f2.manifold)
    n = f1.manifold.half_dim
    return abs(math.log(w_alpha_volume(f1) / w_alpha_volume(f2))) / n


@dataclass(frozen=True)
class FormsDistanceReport:
    upper: float
    lower: float

    @property
    def pinched(self) -> bool:
        return abs(self.upper - self.lower) <= 1e-9

    def to_json_dict(self) -> dict:
        return {"upper": self.upper, "lower": self.lower, "pinched": self.pinched}


def dcbm_forms(
    f1: ContactFormRep,
    f2: ContactFormRep,
    candidates: Sequence[ContactMapRep] = (),
) -> FormsDistanceReport:
    """Both one-sided bounds at once; ``pinched`` marks a certified value."""
    return FormsDistanceReport(
        upper=dcbm_forms_upper(f1, f2, candidates),
        lower=dcbm_forms_lower_volume(f1, f2),
    )
