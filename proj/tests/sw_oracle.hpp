// Reference local-alignment scorer used to cross-check the production
// kernel. It is written straight from the definition with a general gap
// penalty: the best alignment ending at (i, j) is the best of a diagonal
// step or a gap of ANY length k priced open + extend * (k - 1), scanned
// exhaustively. O(n * m * (n + m)) time, full matrix, no recurrence
// shortcuts shared with the kernel.

#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "streamfarm/sw/scoring.hpp"

namespace testsupport {

inline int oracle_local_align(std::string_view q, std::string_view s,
                              const streamfarm::sw::ScoringScheme& sc) {
    const std::size_t n = q.size();
    const std::size_t m = s.size();
    const int open = sc.gap_open();
    const int extend = sc.gap_extend();
    std::vector<std::vector<int>> H(n + 1, std::vector<int>(m + 1, 0));
    int best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            int h = std::max(0, H[i - 1][j - 1] + sc.score(q[i - 1], s[j - 1]));
            for (std::size_t k = 1; k <= j; ++k)
                h = std::max(h, H[i][j - k] - (open + static_cast<int>(k - 1) * extend));
            for (std::size_t k = 1; k <= i; ++k)
                h = std::max(h, H[i - k][j] - (open + static_cast<int>(k - 1) * extend));
            H[i][j] = h;
            best = std::max(best, h);
        }
    }
    return best;
}

}  // namespace testsupport
