#pragma once

#include <stdexcept>
#include <string>

namespace figjudge {

enum class ErrorCode {
    // corpus
    MalformedRecord,
    DuplicateId,
    MissingCaptionSource,
    InvalidRankPermutation,
    MissingAnnotation,
    EmptyLabelSet,
    // judge transport
    TransportFailure,   // transient, retried internally
    TransportExhausted, // retries used up
    AuthRejected,
    BackendRefused,
    MissingRanking,
    // strategies
    EmptyCaption,
    InsufficientExemplars,
    NoQuestionsParsed,
    // stats
    OutOfRangeRank,
    DegenerateSeries,
    FigureMismatch,
    UnmatchedCaptions,
    // cli / config
    InvalidConfig,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

// Process exit classes: 1 validation, 2 backend/transport, 3 degenerate statistics.
int exit_code_for(ErrorCode code);

} // namespace figjudge
