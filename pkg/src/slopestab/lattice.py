"""Divisor classes over a named basis with an exact intersection form.

A :class:`SurfaceModel` holds an ordered basis of named classes together
with the symmetric Gram matrix of their intersection numbers.  A
:class:`DivisorClass` is a rational coefficient vector over that basis.
Classes remember their surface, and pairing classes from different
surfaces is a hard error: pullback bookkeeping mistakes are the main
failure mode in these computations.

Everything is immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ParamError, SurfaceMismatch
from .rationals import RationalLike, as_fraction


class DivisorClass:
    """A rational combination of basis classes on one surface."""

    __slots__ = ("_model", "_coeffs")

    def __init__(self, model: "SurfaceModel", coeffs: Mapping[str, RationalLike]):
        cleaned: dict[str, Fraction] = {}
        for label, value in coeffs.items():
            if label not in model.basis_index:
                raise ParamError(
                    f"unknown basis label {label!r} on surface {model.surface_id}"
                )
            v = as_fraction(value)
            if v != 0:
                cleaned[label] = v
        self._model = model
        self._coeffs = {label: cleaned[label] for label in model.basis if label in cleaned}

    @property
    def surface(self) -> "SurfaceModel":
        return self._model

    @property
    def surface_id(self) -> str:
        return self._model.surface_id

    @property
    def coefficients(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    def coefficient(self, label: str) -> Fraction:
        if label not in self._model.basis_index:
            raise ParamError(
                f"unknown basis label {label!r} on surface {self._model.surface_id}"
            )
        return self._coeffs.get(label, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        _require_same_surface(self, other)
        out = dict(self._coeffs)
        for label, v in other._coeffs.items():
            out[label] = out.get(label, Fraction(0)) + v
        return DivisorClass(self._model, out)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self._model, {k: -v for k, v in self._coeffs.items()})

    def __mul__(self, scalar: RationalLike) -> "DivisorClass":
        a = as_fraction(scalar)
        return DivisorClass(self._model, {k: a * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.surface_id == other.surface_id and self._coeffs == other._coeffs

    __hash__ = None  # mutable-looking value type; not meant for dict keys

    def render(self) -> str:
        """Deterministic human form, e.g. ``3*f + delta_prime``."""
        if not self._coeffs:
            return "0"
        parts = []
        for label in self._model.basis:
            if label not in self._coeffs:
                continue
            v = self._coeffs[label]
            if v == 1:
                term = label
            elif v == -1:
                term = f"-{label}"
            else:
                term = f"{v}*{label}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self) -> str:
        return f"DivisorClass({self.surface_id}: {self.render()})"


class SurfaceModel:
    """Named basis, exact Gram matrix, and distinguished classes.

    Instances are assembled by the constructors in
    :mod:`slopestab.surfaces` and treated as immutable afterwards.
    """

    def __init__(
        self,
        surface_id: str,
        basis: Sequence[str],
        gram: Sequence[Sequence[RationalLike]],
        params=None,
    ):
        basis = tuple(basis)
        if len(set(basis)) != len(basis):
            raise ParamError("basis labels must be unique")
        n = len(basis)
        rows = tuple(tuple(as_fraction(v) for v in row) for row in gram)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParamError("Gram matrix shape does not match the basis")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ParamError("Gram matrix must be symmetric")
        self.surface_id = surface_id
        self.basis = basis
        self.basis_index = {label: i for i, label in enumerate(basis)}
        self.gram = rows
        self.params = params
        self._named: dict[str, DivisorClass] = {}

    def divisor(self, coeffs: Mapping[str, RationalLike]) -> DivisorClass:
        return DivisorClass(self, coeffs)

    def zero(self) -> DivisorClass:
        return DivisorClass(self, {})

    def basis_class(self, label: str) -> DivisorClass:
        return DivisorClass(self, {label: 1})

    def gram_entry(self, a: str, b: str) -> Fraction:
        return self.gram[self.basis_index[a]][self.basis_index[b]]

    def register(self, name: str, coeffs: Mapping[str, RationalLike]) -> DivisorClass:
        if name in self._named:
            raise ParamError(f"class {name!r} already registered")
        cls = DivisorClass(self, coeffs)
        self._named[name] = cls
        return cls

    def named(self, name: str) -> DivisorClass:
        try:
            return self._named[name]
        except KeyError:
            raise ParamError(
                f"surface {self.surface_id} has no distinguished class {name!r}"
            ) from None

    def has_named(self, name: str) -> bool:
        return name in self._named

    def named_classes(self) -> dict[str, DivisorClass]:
        return dict(self._named)

    @property
    def canonical(self) -> DivisorClass:
        return self.named("K")

    def pair(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        return pair(a, b)

    def __repr__(self) -> str:
        return f"SurfaceModel({self.surface_id}, basis={list(self.basis)})"


def _require_same_surface(a: DivisorClass, b: DivisorClass) -> None:
    if a.surface_id != b.surface_id:
        raise SurfaceMismatch(
            f"classes live on different surfaces: {a.surface_id} vs {b.surface_id}"
        )


def pair(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Symmetric bilinear pairing through the Gram matrix."""
    _require_same_surface(a, b)
    gram = a.surface.gram
    index = a.surface.basis_index
    total = Fraction(0)
    for la, va in a.coefficients.items():
        row = gram[index[la]]
        for lb, vb in b.coefficients.items():
            total += va * vb * row[index[lb]]
    return total


def self_intersection(a: DivisorClass) -> Fraction:
    return pair(a, a)


def linear_combination(
    terms: Iterable[tuple[RationalLike, DivisorClass]],
    *,
    surface: Optional[SurfaceModel] = None,
) -> DivisorClass:
    """Exact coefficient-wise sum of scalar multiples.

    ``surface`` is only needed to disambiguate the empty combination.
    """
    acc: Optional[DivisorClass] = None
    for scalar, cls in terms:
        piece = as_fraction(scalar) * cls
        acc = piece if acc is None else acc + piece
    if acc is not None:
        return acc
    if surface is None:
        raise ParamError("empty combination needs an explicit surface")
    return surface.zero()
