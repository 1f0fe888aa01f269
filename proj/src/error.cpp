#include "figjudge/error.hpp"

namespace figjudge {

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingCaptionSource: return "MissingCaptionSource";
    case ErrorCode::InvalidRankPermutation: return "InvalidRankPermutation";
    case ErrorCode::MissingAnnotation: return "MissingAnnotation";
    case ErrorCode::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::TransportFailure: return "TransportFailure";
    case ErrorCode::TransportExhausted: return "TransportExhausted";
    case ErrorCode::AuthRejected: return "AuthRejected";
    case ErrorCode::BackendRefused: return "BackendRefused";
    case ErrorCode::MissingRanking: return "MissingRanking";
    case ErrorCode::EmptyCaption: return "EmptyCaption";
    case ErrorCode::InsufficientExemplars: return "InsufficientExemplars";
    case ErrorCode::NoQuestionsParsed: return "NoQuestionsParsed";
    case ErrorCode::OutOfRangeRank: return "OutOfRangeRank";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::FigureMismatch: return "FigureMismatch";
    case ErrorCode::UnmatchedCaptions: return "UnmatchedCaptions";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::TransportFailure:
    case ErrorCode::TransportExhausted:
    case ErrorCode::AuthRejected:
    case ErrorCode::BackendRefused:
        return 2;
    case ErrorCode::DegenerateSeries:
        return 3;
    default:
        return 1;
    }
}

} // namespace figjudge
