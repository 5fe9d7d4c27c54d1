#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhg {

enum class ErrorKind {
    InvalidArgument,
    PointOutsideDomain,
    ArcLeavesDomain,
    QuadratureCap,
    ParameterOutOfRange,
    PointNotOnArc,
    EmptyRegion,
    DisconnectedGraph,
    ToleranceNotReached,
    ShortnessNotCertified,
    MatrixInconsistent,
    RangeOverflow,
    NotATriangle,
    CutOverflow,
    PrefixTooShort,
    NormalizationFailed,
    SequencesEquivalent,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
        case ErrorKind::ArcLeavesDomain: return "ArcLeavesDomain";
        case ErrorKind::QuadratureCap: return "QuadratureCap";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::PointNotOnArc: return "PointNotOnArc";
        case ErrorKind::EmptyRegion: return "EmptyRegion";
        case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
        case ErrorKind::ShortnessNotCertified: return "ShortnessNotCertified";
        case ErrorKind::MatrixInconsistent: return "MatrixInconsistent";
        case ErrorKind::RangeOverflow: return "RangeOverflow";
        case ErrorKind::NotATriangle: return "NotATriangle";
        case ErrorKind::CutOverflow: return "CutOverflow";
        case ErrorKind::PrefixTooShort: return "PrefixTooShort";
        case ErrorKind::NormalizationFailed: return "NormalizationFailed";
        case ErrorKind::SequencesEquivalent: return "SequencesEquivalent";
    }
    return "Unknown";
}

/// All library failures are reported through this type; `kind()` identifies the contract that failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qhg
