#pragma once

#include <stdexcept>
#include <string>

namespace facepool {

enum class ErrorCode {
    Ok = 0,
    DimMismatch,
    ZeroNormInput,
    EmptyTemplate,
    MissingQualityScores,
    ConstantSeries,
    LengthMismatch,
    IndexOutOfRange,
    MissingMate,
    EmptyProbeSet,
    EmptyDomain,
    TooFewSubjects,
    InvalidConfig,
    BadMagic,
    VersionUnsupported,
    TruncatedPayload,
    IoFailure,
    ParseFailure,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::ZeroNormInput: return "ZeroNormInput";
        case ErrorCode::EmptyTemplate: return "EmptyTemplate";
        case ErrorCode::MissingQualityScores: return "MissingQualityScores";
        case ErrorCode::ConstantSeries: return "ConstantSeries";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::MissingMate: return "MissingMate";
        case ErrorCode::EmptyProbeSet: return "EmptyProbeSet";
        case ErrorCode::EmptyDomain: return "EmptyDomain";
        case ErrorCode::TooFewSubjects: return "TooFewSubjects";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::VersionUnsupported: return "VersionUnsupported";
        case ErrorCode::TruncatedPayload: return "TruncatedPayload";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::ParseFailure: return "ParseFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace facepool
