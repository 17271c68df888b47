#pragma once

#include <stdexcept>
#include <string>

namespace liepower {

enum class ErrorKind {
    DimensionMismatch,
    ConjugationEscapesAlgebra,
    IllConditioned,
    ParseError,
    UnsupportedFamily,
    UnsupportedGroup,
    NoMatrixModel,
    BoundaryAmbiguity,
    NotRegular,
    NonAbelianNilspace,
    UnsupportedShape,
    InvalidCase,
    NotLinear,
    NotFullRank,
    InvalidArgument,
    InternalConsistency,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ConjugationEscapesAlgebra: return "ConjugationEscapesAlgebra";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
        case ErrorKind::NoMatrixModel: return "NoMatrixModel";
        case ErrorKind::BoundaryAmbiguity: return "BoundaryAmbiguity";
        case ErrorKind::NotRegular: return "NotRegular";
        case ErrorKind::NonAbelianNilspace: return "NonAbelianNilspace";
        case ErrorKind::UnsupportedShape: return "UnsupportedShape";
        case ErrorKind::InvalidCase: return "InvalidCase";
        case ErrorKind::NotLinear: return "NotLinear";
        case ErrorKind::NotFullRank: return "NotFullRank";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
    }
    return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers which contract failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures carry the byte offset into the input text.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorKind::ParseError, what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace liepower
