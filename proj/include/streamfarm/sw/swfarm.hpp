#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "streamfarm/farm.hpp"
#include "streamfarm/sw/fasta.hpp"
#include "streamfarm/sw/scoring.hpp"

namespace streamfarm::sw {

// q_len * total_db_residues / (seconds * 1e9): billions of DP cell
// updates per second. Throws std::invalid_argument unless seconds > 0.
double gcups(double q_len, double total_db_residues, double seconds);

struct SwFarmOptions {
    std::size_t n_workers = 4;
    std::size_t channel_capacity = 64;
    // Workers pull on demand: database sequences have wildly different
    // lengths, so fixed round-robin would leave workers idle.
    SchedulingPolicy policy = SchedulingPolicy::on_demand();
};

struct SwFarmReport {
    std::uint64_t n_results = 0;
    std::uint64_t cells = 0;
    double seconds = 0.0;
    double gcups_value = 0.0;
    FarmStats farm;
};

// Streams every database sequence through a worker pool, scores it against
// the query, and writes one "name<TAB>score" line per sequence in database
// order, then a "# gcups=... seconds=... cells=..." trailer. Result lines
// are deterministic across runs and worker counts; the trailer is not
// (it reports wall time).
SwFarmReport run_swfarm(const Sequence& query, const std::vector<Sequence>& db,
                        const ScoringScheme& scheme, std::ostream& out,
                        const SwFarmOptions& options = {});

}  // namespace streamfarm::sw
