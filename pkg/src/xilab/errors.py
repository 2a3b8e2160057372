"""Exception types shared across the package."""


class XilabError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveConstantTerm(XilabError):
    """log of a series whose constant term is not strictly positive."""


class NonzeroInnerConstant(XilabError):
    """Composition f(g(x)) around 0 requires g(0) = 0."""


class NonConvergence(XilabError):
    """A kernel sum/product hit its term cap before reaching tolerance."""


class NonPositiveLeadingCoefficient(XilabError):
    """Rescaling needs a strictly positive coefficient at degree p+1."""


class NonPositiveG(XilabError):
    """Double-scaling produced a non-positive coupling constant g."""


class DegenerateBasis(XilabError):
    """A polynomial in the recurrence basis has lower degree than its index."""


class NoConvergence(XilabError):
    """Root iteration failed to meet its backward-error target."""


class InsufficientZerosFound(XilabError):
    """Zero scan exhausted its window before finding the requested count."""


class TailNotNegligible(XilabError):
    """Integrand tail at the domain cutoff exceeds the negligibility bound."""


class UnknownReference(XilabError):
    """No reference-zero table with the requested id."""


class DegenerateFit(XilabError):
    """Linear calibration needs two distinct anchor roots."""


class ComplexAnchor(XilabError):
    """A root selected as a calibration anchor is not real."""


class MissingPipeline(XilabError):
    """Report assembly is missing one of the required rows."""


class SingularJacobian(XilabError):
    """Newton step hit a singular Jacobian even after damping retries."""
