"""Custom exception classes for the geometry toolkit."""
from typing import Any, Optional


class GeometryError(Exception):
    """Base exception for all geometry errors."""
    pass


class DomainError(GeometryError):
    """Exception raised when an argument lies outside an operation's domain."""

    def __init__(self, quantity: str, value: Any, allowed: str):
        self.quantity = quantity
        self.value = value
        self.allowed = allowed
        super().__init__(f"{quantity}={value!r} outside domain {allowed}")


class ParameterError(GeometryError):
    """Exception raised when construction parameters violate their constraints."""

    def __init__(self, name: str, value: Any, requirement: str):
        self.name = name
        self.value = value
        self.requirement = requirement
        super().__init__(f"Parameter '{name}'={value!r} violates {requirement}")


class ResolutionError(GeometryError):
    """Exception raised when a sampling grid is too coarse for the requested order."""

    def __init__(self, message: str, layers: Optional[int] = None, order: Optional[int] = None):
        self.layers = layers
        self.order = order
        super().__init__(message)


class BoundaryError(GeometryError):
    """Exception raised when a stencil would leave the chart."""

    def __init__(self, point: Any, margin: float):
        self.point = point
        self.margin = margin
        super().__init__(f"Point {point!r} is closer than {margin:g} to the chart boundary")


class DegeneratePlaneError(GeometryError):
    """Exception raised when a tangent plane is spanned by dependent vectors."""

    def __init__(self, denominator: float):
        self.denominator = denominator
        super().__init__(f"Degenerate plane: |u|^2|v|^2 - <u,v>^2 = {denominator:.3e}")


class MetricValidationError(GeometryError):
    """Exception raised when sampled components are not symmetric positive definite."""

    def __init__(self, message: str, point: Any = None):
        self.point = point
        super().__init__(message)


class RangeError(GeometryError):
    """Exception raised when a width index exceeds the materialized range."""

    def __init__(self, index: int, cap: int):
        self.index = index
        self.cap = cap
        super().__init__(f"Width index {index} exceeds cap {cap}")


class StarMembershipError(GeometryError):
    """Exception raised when a point is not in the closed star of a simplex."""

    def __init__(self, simplex: Any, carrier: Any):
        self.simplex = simplex
        self.carrier = carrier
        super().__init__(f"Carrier {carrier} and simplex {simplex} do not span a simplex")


class ComplexFormatError(GeometryError):
    """Exception raised when a complex description cannot be parsed."""
    pass


class UnsupportedDimensionError(GeometryError):
    """Exception raised when a recursion needs a link that is not a circle."""

    def __init__(self, dimension: int, message: str = ""):
        self.dimension = dimension
        super().__init__(f"Unsupported dimension {dimension}. {message}".strip())


class UndefinedRegionError(GeometryError):
    """Exception raised when a partially defined metric is evaluated off its domain."""

    def __init__(self, radius: float, bound: float):
        self.radius = radius
        self.bound = bound
        super().__init__(f"Metric undefined at radius {radius:g} (defined for radius >= {bound:g})")
