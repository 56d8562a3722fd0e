#include "streamfarm/sw/kernel.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace streamfarm::sw {

int local_align_score(std::string_view query, std::string_view subject,
                      const ScoringScheme& scheme) {
    if (query.empty() || subject.empty()) return 0;

    // Low enough that subtracting a gap penalty cannot wrap, high enough
    // that a gap state is never picked before it has been opened.
    constexpr int kNegInf = std::numeric_limits<int>::min() / 4;
    const int open = scheme.gap_open();
    const int extend = scheme.gap_extend();
    const std::size_t m = subject.size();

    std::vector<int8_t> sub_idx(m);
    for (std::size_t j = 0; j < m; ++j)
        sub_idx[j] = static_cast<int8_t>(scheme.index(subject[j]));

    // h[j], e[j] carry the previous row until overwritten in place.
    std::vector<int> h(m + 1, 0);
    std::vector<int> e(m + 1, kNegInf);

    int best = 0;
    for (std::size_t i = 1; i <= query.size(); ++i) {
        const int* row = scheme.row(scheme.index(query[i - 1]));
        int diag = 0;    // h[i-1][j-1]
        int f = kNegInf; // gap in the subject, within the current row
        for (std::size_t j = 1; j <= m; ++j) {
            e[j] = std::max(e[j] - extend, h[j] - open);
            f = std::max(f - extend, h[j - 1] - open);
            int score = diag + row[sub_idx[j - 1]];
            score = std::max({0, score, e[j], f});
            diag = h[j];
            h[j] = score;
            best = std::max(best, score);
        }
    }
    return best;
}

ScoreResult sw_score(const Sequence& query, const Sequence& subject,
                     const ScoringScheme& scheme) {
    ScoreResult r;
    r.subject_name = subject.name;
    r.score = local_align_score(query.residues, subject.residues, scheme);
    r.cells = static_cast<std::uint64_t>(query.residues.size()) * subject.residues.size();
    return r;
}

}  // namespace streamfarm::sw
