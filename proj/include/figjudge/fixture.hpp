#pragma once

#include <cstdint>

#include "figjudge/corpus.hpp"

namespace figjudge {

// Synthetic corpus generator for demos and offline pipeline tests. At full
// size (200 figures per domain) with the exact error layout it reproduces
// the reference annotation statistics: per-kind error counts 102/242/101/23,
// 441 captions with at least one error, 3,159 valid captions.
struct FixtureSpec {
    int figures_per_domain = 200;
    std::uint64_t seed = 42;
    // Exact error layout (full size only); smaller corpora fall back to
    // seeded random flags at error_rate.
    bool exact_error_layout = true;
    double error_rate = 0.12;
    double empty_mention_fraction = 0.05;
    // Adds a second annotator re-ranking ten figures, each with one adjacent
    // swap, for agreement demos.
    bool with_agreement_batch = true;
};

ValidatedCorpus make_reference_fixture(const FixtureSpec& spec = {});

} // namespace figjudge
