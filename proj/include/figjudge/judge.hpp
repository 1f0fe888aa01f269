#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "figjudge/corpus.hpp"
#include "figjudge/error.hpp"

namespace figjudge {

struct DecodingParams {
    double temperature = 0.1;
    double top_p = 0.95;
    int min_new_tokens = 10;
    int max_new_tokens = 200;
    double repetition_penalty = 1.0;
    int num_beams = 1;
    bool sample = true;

    bool operator==(const DecodingParams&) const = default;
};

enum class Role { System, User, Assistant };

std::string_view to_string(Role r);

struct ChatMessage {
    Role role = Role::User;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

// Tag layout: "<id>|<strategy>|<phase>" where phase is "rate", "q" or "a".
// The id part is the caption id ("q" phases carry the figure id); offline
// oracle backends key their script on it.
std::string make_request_tag(std::string_view id, std::string_view strategy, std::string_view phase);
std::string tag_id(std::string_view tag);

struct JudgeRequest {
    std::vector<ChatMessage> messages; // non-empty; last role is user
    DecodingParams params;
    std::string tag;
};

struct JudgeResponse {
    std::string raw_text; // may be empty: emptiness is data, not an error
    std::string backend_id;
    bool cached = false;
    int latency_ms = 0;
    int attempts = 1;
};

enum class ParseStatus { Parsed, Fallback };

std::string_view to_string(ParseStatus s);

struct JudgeScore {
    std::string caption_id;
    std::string strategy_id;
    std::string backend_id;
    double score = 1.0; // in [1,6]; Fallback implies 1
    ParseStatus parse_status = ParseStatus::Fallback;
    std::optional<double> fraction; // CoT yes-fraction in [0,1]
    JudgeResponse raw;
};

struct ScoreParse {
    int score = 1;
    ParseStatus status = ParseStatus::Fallback;
};

// Extracts the 1-6 rating from free text. Priority: (1) rating/score/
// usefulness vocabulary followed by an integer, (2) "N out of 6" or "N/6",
// (3) a bare leading integer on the first line. No match -> (1, Fallback).
// Total function; never returns a score outside [1,6].
ScoreParse parse_score(std::string_view raw_text);

struct YesNoParse {
    std::vector<bool> verdicts; // length n_questions
    int matched = 0;            // verdicts backed by an explicit Yes/No token
};

// One verdict per question from enumerated items ("1. Yes ...") or, failing
// that, sequential sentence-initial Yes/No tokens. Missing or ambiguous
// verdicts default to No.
YesNoParse parse_yesno(std::string_view raw_text, int n_questions);

// ---------------------------------------------------------------------------
// Backends
// ---------------------------------------------------------------------------

class JudgeBackend {
  public:
    virtual ~JudgeBackend() = default;
    virtual std::string id() const = 0;
    // Transport only: returns raw text, throws Error with TransportFailure
    // (retryable), AuthRejected or BackendRefused.
    virtual std::string complete(const JudgeRequest& request) = 0;
};

// Fixed tag -> response table; refuses unknown tags unless a default is set.
class ScriptedBackend final : public JudgeBackend {
  public:
    explicit ScriptedBackend(std::map<std::string, std::string> responses_by_tag,
                             std::optional<std::string> default_response = std::nullopt);

    std::string id() const override { return "scripted"; }
    std::string complete(const JudgeRequest& request) override;

  private:
    std::map<std::string, std::string> responses_;
    std::optional<std::string> default_;
};

std::shared_ptr<JudgeBackend> make_oracle_backend(const ValidatedCorpus& corpus);
std::shared_ptr<JudgeBackend> make_anti_oracle_backend(const ValidatedCorpus& corpus);
// With probability flip_prob the oracle score is replaced by a uniform draw
// in 1..6; deterministic per (seed, caption id). flip_prob = 1 gives the
// pure random-score backend used for null calibration.
std::shared_ptr<JudgeBackend> make_noisy_backend(const ValidatedCorpus& corpus, std::uint64_t seed, double flip_prob);
// Scores high iff the prompt's Paragraphs slot is non-empty, with a seeded
// per-caption 0/1 jitter so paired differences never have zero variance.
std::shared_ptr<JudgeBackend> make_context_probe_backend(std::uint64_t seed);

struct RemoteBackendConfig {
    std::string endpoint;                       // e.g. http://host:port/v1/chat/completions
    std::string model;
    std::string auth_header = "Authorization";  // header carrying the token
    std::string auth_scheme = "Bearer";         // prefix; empty for raw token
    std::string api_key_env = "FIGJUDGE_API_KEY";
    int timeout_seconds = 60;
};

// HTTP POST of {model, messages, temperature, top_p, max_tokens}; the token
// is read from the environment, never from flags or config files.
std::shared_ptr<JudgeBackend> make_remote_backend(RemoteBackendConfig config);

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

// Raw responses only, keyed by a content hash; parsed scores are never
// cached, so parser changes re-evaluate for free. Concurrent readers,
// serialized writers.
class ResponseCache {
  public:
    static std::shared_ptr<ResponseCache> in_memory();
    static std::shared_ptr<ResponseCache> on_disk(std::filesystem::path dir);

    // SHA-256 over (backend id, serialized messages, serialized params).
    // The model name is part of the remote backend id.
    static std::string key_for(const std::string& backend_id, const JudgeRequest& request);

    std::optional<std::string> lookup(const std::string& key) const;
    void store(const std::string& key, const std::string& backend_id, const JudgeRequest& request,
               const std::string& raw_text);

  private:
    explicit ResponseCache(std::optional<std::filesystem::path> dir);

    std::optional<std::filesystem::path> dir_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::string> memory_; // read-through mirror of the disk entries
};

// ---------------------------------------------------------------------------
// Client
// ---------------------------------------------------------------------------

struct RetryPolicy {
    int max_attempts = 5;
    int base_delay_ms = 100;
    double multiplier = 2.0;
    double jitter = 0.25; // fraction of the delay randomized away
    int max_delay_ms = 5000;
    std::uint64_t jitter_seed = 0;
};

struct RateLimit {
    double requests_per_minute = 0.0; // 0 = unlimited
    int burst = 1;
};

// Token bucket over an injectable clock so tests stay sleep-free.
class TokenBucket {
  public:
    TokenBucket(double per_minute, int burst);

    bool try_acquire(std::chrono::steady_clock::time_point now);
    void acquire(); // blocks until a token is available

  private:
    double per_second_;
    double capacity_;
    double tokens_;
    bool primed_ = false;
    std::chrono::steady_clock::time_point last_{};
    std::mutex mutex_;
};

struct ClientOptions {
    std::shared_ptr<ResponseCache> cache; // null = caching off
    RetryPolicy retry;
    RateLimit rate_limit;
    int max_in_flight = 4;
};

// Wraps a backend with caching, bounded retries with exponential backoff,
// rate limiting and an in-flight bound. Safe for concurrent submission.
class JudgeClient {
  public:
    JudgeClient(std::shared_ptr<JudgeBackend> backend, ClientOptions options = {});

    JudgeResponse submit(const JudgeRequest& request);

    const std::string& backend_id() const { return backend_id_; }
    std::int64_t backend_calls() const { return backend_calls_.load(); }
    std::int64_t cache_hits() const { return cache_hits_.load(); }

  private:
    std::shared_ptr<JudgeBackend> backend_;
    std::string backend_id_;
    ClientOptions options_;
    std::unique_ptr<TokenBucket> bucket_;

    std::mutex inflight_mutex_;
    std::condition_variable inflight_cv_;
    int in_flight_ = 0;

    std::atomic<std::int64_t> backend_calls_{0};
    std::atomic<std::int64_t> cache_hits_{0};
};

} // namespace figjudge
