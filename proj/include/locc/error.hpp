#pragma once

#include <stdexcept>
#include <string>

namespace locc {

enum class ErrorKind {
    InvalidMatrix,
    ShapeMismatch,
    NotPositive,
    InvalidInput,
    ParseError,
    NotOrthogonal,
    NotNormalized,
    UnknownCatalogEntry,
    InvalidParams,
    TooManyStates,
    InvalidCut,
    NotMultipartite,
    NotComplete,
    InvalidIndication,
    UnsupportedShape,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidMatrix: return "InvalidMatrix";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NotOrthogonal: return "NotOrthogonal";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::UnknownCatalogEntry: return "UnknownCatalogEntry";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::TooManyStates: return "TooManyStates";
        case ErrorKind::InvalidCut: return "InvalidCut";
        case ErrorKind::NotMultipartite: return "NotMultipartite";
        case ErrorKind::NotComplete: return "NotComplete";
        case ErrorKind::InvalidIndication: return "InvalidIndication";
        case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    }
    return "UnknownError";
}

}  // namespace locc
