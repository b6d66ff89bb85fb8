"""Exception types raised across the package."""

from __future__ import annotations


class DilationError(Exception):
    """Base class for all package errors."""


class NotHermitian(DilationError):
    pass


class NotPSD(DilationError):
    pass


class NotOrthonormalInput(DilationError):
    pass


class NotCommuting(DilationError):
    def __init__(self, residual: float, tol: float):
        super().__init__(f"T1 T2 - T2 T1 has norm {residual:.3e} > {tol:.3e}")
        self.residual = residual
        self.tol = tol


class NotContraction(DilationError):
    def __init__(self, which: int, norm: float):
        super().__init__(f"T{which} has norm {norm:.15g} > 1")
        self.which = which
        self.norm = norm


class NotStrict(DilationError):
    def __init__(self, which: int, norm: float, margin: float):
        super().__init__(f"T{which} has norm {norm:.15g}; strict margin {margin} not met")
        self.which = which
        self.norm = norm
        self.margin = margin


class BadParams(DilationError, ValueError):
    pass


class DegenerateDefect(DilationError):
    pass


class RankDeficient(DilationError):
    pass


class NotUnitary(DilationError):
    pass


class DimMismatch(DilationError, ValueError):
    pass


class MissingUnitary(DilationError):
    pass


class BadP(DilationError, ValueError):
    pass


class NotContractiveInBase(DilationError):
    pass


class ProductNotStrict(DilationError):
    pass


class SNotInterpolating(DilationError):
    pass


class SNotMixedIsometry(DilationError):
    pass


class ANormInvalid(DilationError):
    pass


class HashMismatch(DilationError):
    pass
