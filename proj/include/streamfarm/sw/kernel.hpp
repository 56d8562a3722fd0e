#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "streamfarm/sw/fasta.hpp"
#include "streamfarm/sw/scoring.hpp"

namespace streamfarm::sw {

// Best local alignment score under affine gap penalties (Gotoh recurrence),
// computed with two rolling rows in O(|query| * |subject|) time and
// O(|subject|) memory. Either side empty scores 0. The score is never
// negative: the empty alignment is always available.
int local_align_score(std::string_view query, std::string_view subject,
                      const ScoringScheme& scheme);

struct ScoreResult {
    std::string subject_name;
    int score = 0;            // >= 0, local alignment floor
    std::uint64_t cells = 0;  // |query| * |subject|, for throughput accounting
};

ScoreResult sw_score(const Sequence& query, const Sequence& subject,
                     const ScoringScheme& scheme);

}  // namespace streamfarm::sw
