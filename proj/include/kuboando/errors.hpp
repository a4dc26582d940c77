#ifndef KUBOANDO_ERRORS_HPP
#define KUBOANDO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kuboando {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonHermitianInput : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NegativeScalar : Error { using Error::Error; };
struct DegenerateGrid : Error { using Error::Error; };
struct NonFiniteIntegral : Error { using Error::Error; };
struct MissingEndpointValue : Error { using Error::Error; };
struct IncomparableRepresentation : Error { using Error::Error; };
struct UnsupportedInversion : Error { using Error::Error; };
struct NonScalarResult : Error { using Error::Error; };
struct ZeroConnection : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace kuboando

#endif
