"""Exception hierarchy shared across the package.

Exit-code buckets used by the CLI:
  2 parse, 3 dimension/type, 4 domain precondition, 5 numerical failure.
"""


class PTSimError(Exception):
    """Base class for all library errors."""


# -- dimension / type errors (CLI exit 3) -----------------------------------

class NonSquareError(PTSimError):
    pass


class DimensionMismatchError(PTSimError):
    pass


class WrongDimensionError(PTSimError):
    pass


# -- domain precondition errors (CLI exit 4) --------------------------------

class NotHermitianError(PTSimError):
    pass


class NotPSDError(PTSimError):
    pass


class NotPositiveDefiniteError(PTSimError):
    pass


class DependentInputError(PTSimError):
    pass


class NotInvolutoryPError(PTSimError):
    pass


class NotInvolutoryTError(PTSimError):
    pass


class NonCommutingError(PTSimError):
    pass


class NotPTSymmetricError(PTSimError):
    pass


class DefectiveInputError(PTSimError):
    pass


class InconsistentSpectrumError(PTSimError):
    pass


class SingularFrameError(PTSimError):
    pass


class NotUnbrokenError(PTSimError):
    pass


class NotIntertwiningError(PTSimError):
    pass


class DegenerateSpectrumUnsupportedError(PTSimError):
    pass


class EtaNotGreaterThanIError(PTSimError):
    pass


class SuppliedH1NotHermitianError(PTSimError):
    pass


class ZeroVectorError(PTSimError):
    pass


class NotInSubspaceError(PTSimError):
    pass


class ZeroMapError(PTSimError):
    pass


class NotProjectionError(PTSimError):
    pass


class NotNormalizedError(PTSimError):
    pass


class ZeroFinalStateError(PTSimError):
    pass


class ZeroBranchError(PTSimError):
    pass


# -- numerical failures (CLI exit 5) -----------------------------------------

class NumericalFailureError(PTSimError):
    pass


# -- I/O (CLI exit 2) ---------------------------------------------------------

class ParseError(PTSimError):
    pass
