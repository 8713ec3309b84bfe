#pragma once

#include <stdexcept>

namespace rpcirc {

// Base class of every error the toolkit throws on its own behalf.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RPCIRC_ERROR(Name)   \
  class Name : public Error { \
   public:                    \
    using Error::Error;       \
  }

// linear algebra
RPCIRC_ERROR(NotHermitian);
RPCIRC_ERROR(NonFinite);
RPCIRC_ERROR(DomainError);
RPCIRC_ERROR(NotPSD);
RPCIRC_ERROR(DimensionMismatch);
RPCIRC_ERROR(NotUnitary);

// measures
RPCIRC_ERROR(NegativeAtom);
RPCIRC_ERROR(NonHermitianSample);

// circle functions
RPCIRC_ERROR(WrongBacking);
RPCIRC_ERROR(OutOfRange);
RPCIRC_ERROR(NotOnGrid);
RPCIRC_ERROR(NegativeRate);
RPCIRC_ERROR(GridOutOfRange);

// GNS / OS quantization
RPCIRC_ERROR(NotThetaPositive);
RPCIRC_ERROR(NullSpaceNotPreserved);
RPCIRC_ERROR(NotInvariant);
RPCIRC_ERROR(NotRepresentation);

// realization
RPCIRC_ERROR(NoSuchJ);
RPCIRC_ERROR(NoSuchR);
RPCIRC_ERROR(AsymmetricSpectrum);
RPCIRC_ERROR(ZeroMode);

// standard subspaces
RPCIRC_ERROR(DegenerateFixSpace);
RPCIRC_ERROR(NotStandard);
RPCIRC_ERROR(NotFixed);

// KMS systems
RPCIRC_ERROR(NotSelfAdjoint);
RPCIRC_ERROR(NotSeparating);

#undef RPCIRC_ERROR

}  // namespace rpcirc
