#pragma once

#include <stdexcept>
#include <string>

namespace qps {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration / invalid arguments (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numeric precondition of an operation is violated (CLI exit code 3).
class NumericPreconditionError : public Error {
 public:
  using Error::Error;
};

// A verification run exceeded its deviation threshold (CLI exit code 4).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

#define QPS_DEFINE_ERROR(NAME, BASE)   \
  class NAME : public BASE {           \
   public:                             \
    using BASE::BASE;                  \
  }

QPS_DEFINE_ERROR(BoundaryDecayViolated, NumericPreconditionError);
QPS_DEFINE_ERROR(ZeroField, NumericPreconditionError);
QPS_DEFINE_ERROR(NodeSplitsDomain, NumericPreconditionError);
QPS_DEFINE_ERROR(MaskedRegion, NumericPreconditionError);
QPS_DEFINE_ERROR(InsufficientSamples, NumericPreconditionError);
QPS_DEFINE_ERROR(LeftDomain, NumericPreconditionError);
QPS_DEFINE_ERROR(KernelNotFinite, NumericPreconditionError);
QPS_DEFINE_ERROR(DivisionByVanishingKernel, NumericPreconditionError);
QPS_DEFINE_ERROR(YRangeInsufficient, NumericPreconditionError);
QPS_DEFINE_ERROR(NotQuadratic, NumericPreconditionError);
QPS_DEFINE_ERROR(DegenerateObservable, NumericPreconditionError);
QPS_DEFINE_ERROR(KernelConstraintsViolated, NumericPreconditionError);
QPS_DEFINE_ERROR(UnsupportedKernel, NumericPreconditionError);
QPS_DEFINE_ERROR(TrajectoryCrossing, NumericPreconditionError);

#undef QPS_DEFINE_ERROR

}  // namespace qps
