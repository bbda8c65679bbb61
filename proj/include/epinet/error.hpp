#pragma once

#include <stdexcept>
#include <string>

namespace epinet {

/// Failure categories surfaced by the library. Callers (CLI, tests) map
/// these onto exit codes and diagnostics.
enum class ErrorKind {
    MissingHeader,
    NoDateSource,
    EmptyAfterFiltering,
    InvalidThreshold,
    DimensionMismatch,
    InsufficientHistory,
    EmptyInput,
    MissingPlanningArea,
    EmptyAfterMapping,
    InvalidScenario,
    ParseError,
    IoError,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. The message always names the offending input
/// (file, week, row) when one exists.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MissingHeader: return "MissingHeader";
        case ErrorKind::NoDateSource: return "NoDateSource";
        case ErrorKind::EmptyAfterFiltering: return "EmptyAfterFiltering";
        case ErrorKind::InvalidThreshold: return "InvalidThreshold";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InsufficientHistory: return "InsufficientHistory";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::MissingPlanningArea: return "MissingPlanningArea";
        case ErrorKind::EmptyAfterMapping: return "EmptyAfterMapping";
        case ErrorKind::InvalidScenario: return "InvalidScenario";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

}  // namespace epinet
