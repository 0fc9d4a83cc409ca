#pragma once

#include <stdexcept>
#include <string>

namespace gps {

/// All domain errors carry a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define GPS_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    }

GPS_DEFINE_ERROR(NotPrime);
GPS_DEFINE_ERROR(ReducibleModulus);
GPS_DEFINE_ERROR(ZeroPolynomial);
GPS_DEFINE_ERROR(DimensionMismatch);
GPS_DEFINE_ERROR(NotFound);
GPS_DEFINE_ERROR(NotCertified);
GPS_DEFINE_ERROR(HypothesisViolated);
GPS_DEFINE_ERROR(IncompatibleContexts);
GPS_DEFINE_ERROR(IndeterminateValuation);
GPS_DEFINE_ERROR(NoSupportModel);
GPS_DEFINE_ERROR(NotSimpleRoot);
GPS_DEFINE_ERROR(InsufficientPrecision);
GPS_DEFINE_ERROR(CharacteristicZero);
GPS_DEFINE_ERROR(NotMonicInY);
GPS_DEFINE_ERROR(BranchExplosion);
GPS_DEFINE_ERROR(InfiniteFiber);
GPS_DEFINE_ERROR(FiberNeedsCertificate);
GPS_DEFINE_ERROR(SingularMatrix);
GPS_DEFINE_ERROR(NotMonic);
GPS_DEFINE_ERROR(MonomialInput);
GPS_DEFINE_ERROR(NotPure);
GPS_DEFINE_ERROR(ResourceBound);
GPS_DEFINE_ERROR(ParseError);
GPS_DEFINE_ERROR(SchemaError);

#undef GPS_DEFINE_ERROR

}  // namespace gps
