#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "streamfarm/sw/scoring.hpp"
#include "support.hpp"

using streamfarm::sw::ScoringScheme;

namespace {

std::filesystem::path write_temp(const std::string& stem, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / stem;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_SUITE("scoring") {

TEST_CASE("published table spot values") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    CHECK(sc.alphabet() == "ARNDCQEGHILKMFPSTWYVBZX*");
    CHECK(sc.alphabet_size() == 24);
    CHECK(sc.score('A', 'A') == 5);
    CHECK(sc.score('C', 'C') == 13);
    CHECK(sc.score('W', 'W') == 15);
    CHECK(sc.score('W', 'C') == -5);
    CHECK(sc.score('B', 'N') == 4);
    CHECK(sc.score('X', 'X') == -1);
    CHECK(sc.score('*', '*') == 1);
    CHECK(sc.score('A', '*') == -5);
    CHECK(sc.score('X', 'A') == -1);
    CHECK(sc.score('X', 'T') == 0);
    CHECK(sc.gap_open() == 10);
    CHECK(sc.gap_extend() == 2);
}

TEST_CASE("the whole matrix is symmetric") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    const auto n = static_cast<int>(sc.alphabet_size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            CHECK(sc.score_by_index(a, b) == sc.score_by_index(b, a));
}

TEST_CASE("row pointer agrees with pairwise lookup") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    const int ia = sc.index('W');
    const int* r = sc.row(ia);
    for (int b = 0; b < static_cast<int>(sc.alphabet_size()); ++b)
        CHECK(r[b] == sc.score_by_index(ia, b));
}

TEST_CASE("lowercase input folds onto the uppercase rows") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    CHECK(sc.score('a', 'a') == sc.score('A', 'A'));
    CHECK(sc.score('w', 'C') == sc.score('W', 'C'));
    CHECK(sc.index('m') == sc.index('M'));
}

TEST_CASE("unknown residues land on the wildcard row") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    // 'J', digits, punctuation: all outside the 24-letter alphabet.
    CHECK(sc.index('J') == sc.index('X'));
    CHECK(sc.index('@') == sc.index('X'));
    CHECK(sc.index('7') == sc.index('X'));
    CHECK(sc.score('J', 'A') == sc.score('X', 'A'));
}

TEST_CASE("gap parameter validation") {
    CHECK_THROWS_AS(ScoringScheme::blosum50(2, 5), std::invalid_argument);   // open < extend
    CHECK_THROWS_AS(ScoringScheme::blosum50(10, 0), std::invalid_argument);  // zero extend
    CHECK_THROWS_AS(ScoringScheme::blosum50(-1, -1), std::invalid_argument);
    CHECK_NOTHROW(ScoringScheme::blosum50(5, 5));
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(ScoringScheme("", {}, 10, 2), std::invalid_argument);
    CHECK_THROWS_AS(ScoringScheme("AB", {1, 2, 3}, 10, 2), std::invalid_argument);
    // Asymmetric matrix.
    CHECK_THROWS_AS(ScoringScheme("AB", {1, 2, 3, 1}, 10, 2), std::invalid_argument);
}

TEST_CASE("a matrix without a wildcard gets one synthesized") {
    const ScoringScheme sc("ACG", {2, -1, -2, -1, 3, 0, -2, 0, 4}, 6, 2);
    CHECK(sc.alphabet_size() == 4);  // X appended
    CHECK(sc.index('X') == 3);
    CHECK(sc.score('X', 'A') == -1);
    CHECK(sc.score('X', 'X') == -1);
    CHECK(sc.score('G', 'G') == 4);
    // Unknown residues route through the synthesized row.
    CHECK(sc.score('Q', 'C') == -1);
}

TEST_CASE("file round-trip preserves every pair") {
    const ScoringScheme ref = ScoringScheme::blosum50(12, 3);
    std::string text = "# round-trip fixture\n  ";
    for (char c : ref.alphabet()) {
        text += ' ';
        text += c;
    }
    text += '\n';
    for (std::size_t a = 0; a < ref.alphabet_size(); ++a) {
        text += ref.alphabet()[a];
        for (std::size_t b = 0; b < ref.alphabet_size(); ++b) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), " %d", ref.score_by_index(static_cast<int>(a),
                                                                      static_cast<int>(b)));
            text += buf;
        }
        text += '\n';
    }
    const auto path = write_temp("streamfarm_matrix_roundtrip.txt", text);
    const ScoringScheme parsed = ScoringScheme::from_file(path.string(), 12, 3);
    CHECK(parsed.alphabet() == ref.alphabet());
    CHECK(parsed.gap_open() == 12);
    CHECK(parsed.gap_extend() == 3);
    for (std::size_t a = 0; a < ref.alphabet_size(); ++a)
        for (std::size_t b = 0; b < ref.alphabet_size(); ++b)
            CHECK(parsed.score_by_index(static_cast<int>(a), static_cast<int>(b)) ==
                  ref.score_by_index(static_cast<int>(a), static_cast<int>(b)));
    std::filesystem::remove(path);
}

TEST_CASE("file parser handles comments, CRLF, and a tiny alphabet") {
    const auto path = write_temp("streamfarm_matrix_tiny.txt",
                                 "# tiny nucleotide-style matrix\r\n"
                                 "   A  C  G\r\n"
                                 "A  2 -1 -2\r\n"
                                 "C -1  3  0\r\n"
                                 "G -2  0  4\r\n");
    const ScoringScheme sc = ScoringScheme::from_file(path.string(), 5, 2);
    CHECK(sc.score('A', 'A') == 2);
    CHECK(sc.score('C', 'G') == 0);
    CHECK(sc.index('T') == sc.index('X'));  // synthesized wildcard
    std::filesystem::remove(path);
}

TEST_CASE("malformed matrix files are rejected") {
    CHECK_THROWS_AS(ScoringScheme::from_file("/nonexistent/matrix.txt", 10, 2),
                    std::runtime_error);

    const auto bad_label = write_temp("streamfarm_matrix_badlabel.txt",
                                      "   A  C\n"
                                      "A  2 -1\n"
                                      "G -1  3\n");  // label G does not match header C
    CHECK_THROWS_AS(ScoringScheme::from_file(bad_label.string(), 10, 2), std::runtime_error);
    std::filesystem::remove(bad_label);

    const auto short_row = write_temp("streamfarm_matrix_short.txt",
                                      "   A  C\n"
                                      "A  2\n"
                                      "C -1  3\n");
    CHECK_THROWS_AS(ScoringScheme::from_file(short_row.string(), 10, 2), std::runtime_error);
    std::filesystem::remove(short_row);

    const auto truncated = write_temp("streamfarm_matrix_trunc.txt",
                                      "   A  C\n"
                                      "A  2 -1\n");
    CHECK_THROWS_AS(ScoringScheme::from_file(truncated.string(), 10, 2), std::runtime_error);
    std::filesystem::remove(truncated);
}

}  // TEST_SUITE
