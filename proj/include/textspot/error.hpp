#pragma once

#include <stdexcept>
#include <string>

namespace textspot {

enum class ErrorCode {
    // file formats
    BadMagic,
    TruncatedPayload,
    UnsupportedVersion,
    IoFailure,
    MalformedLine,
    UnknownScript,
    DuplicateSymbol,
    EmptyAlphabet,
    // geometry
    DegenerateAngle,
    ZeroAreaBox,
    NonConvexQuad,
    DegenerateQuad,
    BoxOutsideGrid,
    // losses / optimization
    ShapeMismatch,
    TiePoint,
    Divergence,
    // ctc
    InfeasibleLength,
    TooLarge,
    UnknownCharacter,
    // script id
    EmptyWord,
    // generic precondition violation
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

    /// True for errors caused by unreadable or malformed external input
    /// (as opposed to violated numeric preconditions or tolerances).
    bool is_io_error() const {
        switch (code_) {
        case ErrorCode::BadMagic:
        case ErrorCode::TruncatedPayload:
        case ErrorCode::UnsupportedVersion:
        case ErrorCode::IoFailure:
        case ErrorCode::MalformedLine:
        case ErrorCode::UnknownScript:
        case ErrorCode::DuplicateSymbol:
        case ErrorCode::EmptyAlphabet:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace textspot
