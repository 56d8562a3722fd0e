#include "streamfarm/sw/swfarm.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "streamfarm/errors.hpp"
#include "streamfarm/sw/kernel.hpp"

namespace streamfarm::sw {

double gcups(double q_len, double total_db_residues, double seconds) {
    if (!(seconds > 0.0))
        throw std::invalid_argument("gcups: seconds must be > 0");
    return q_len * total_db_residues / (seconds * 1e9);
}

namespace {

struct AlignmentTask {
    const Sequence* subject;
    int score;
};

}  // namespace

SwFarmReport run_swfarm(const Sequence& query, const std::vector<Sequence>& db,
                        const ScoringScheme& scheme, std::ostream& out,
                        const SwFarmOptions& options) {
    // One task per database sequence, preallocated; the farm moves
    // pointers into this vector, never the sequences themselves.
    std::vector<AlignmentTask> tasks(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) tasks[i] = {&db[i], 0};

    std::size_t next = 0;
    std::uint64_t delivered = 0;

    FarmConfig fc;
    fc.n_workers = options.n_workers == 0 ? 1 : options.n_workers;
    fc.channel_capacity = options.channel_capacity;
    fc.policy = options.policy;
    fc.ordered = true;

    auto emitter = [&](void*) -> Verdict {
        if (next >= tasks.size()) return Verdict::end();
        return Verdict::emit(&tasks[next++]);
    };
    auto worker = [&](void* p) -> Verdict {
        auto* t = static_cast<AlignmentTask*>(p);
        t->score = local_align_score(query.residues, t->subject->residues, scheme);
        return Verdict::emit(p);
    };
    auto collector = [&](void* p) -> Verdict {
        auto* t = static_cast<AlignmentTask*>(p);
        out << t->subject->name << '\t' << t->score << '\n';
        ++delivered;
        return Verdict::absorb();
    };

    auto t0 = std::chrono::steady_clock::now();
    Farm farm(emitter, worker, collector, fc);
    farm.run();
    FarmStats stats = farm.wait();
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds <= 0.0) seconds = 1e-9;

    if (delivered != db.size())
        throw IntegrityError("swfarm: delivered " + std::to_string(delivered) +
                             " results for " + std::to_string(db.size()) +
                             " database sequences");

    std::uint64_t db_residues = 0;
    for (const auto& s : db) db_residues += s.residues.size();

    SwFarmReport report;
    report.n_results = delivered;
    report.cells = static_cast<std::uint64_t>(query.residues.size()) * db_residues;
    report.seconds = seconds;
    report.gcups_value = gcups(static_cast<double>(query.residues.size()),
                               static_cast<double>(db_residues), seconds);
    report.farm = std::move(stats);

    char trailer[160];
    std::snprintf(trailer, sizeof trailer, "# gcups=%.6f seconds=%.6f cells=%llu\n",
                  report.gcups_value, report.seconds,
                  static_cast<unsigned long long>(report.cells));
    out << trailer;
    out.flush();
    return report;
}

}  // namespace streamfarm::sw
