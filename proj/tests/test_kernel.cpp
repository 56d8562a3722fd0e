#include <random>
#include <string>

#include "doctest.h"
#include "streamfarm/sw/kernel.hpp"
#include "sw_oracle.hpp"

using streamfarm::sw::local_align_score;
using streamfarm::sw::ScoringScheme;
using streamfarm::sw::Sequence;
using streamfarm::sw::sw_score;
using testsupport::oracle_local_align;

namespace {

std::string random_protein(std::mt19937& rng, std::size_t max_len) {
    // Mostly the 20 standard residues, with occasional ambiguity codes.
    static const std::string common = "ARNDCQEGHILKMFPSTWYV";
    static const std::string rare = "BZX*";
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<int> pick(0, 99);
    std::uniform_int_distribution<std::size_t> c_dist(0, common.size() - 1);
    std::uniform_int_distribution<std::size_t> r_dist(0, rare.size() - 1);
    std::string s(len_dist(rng), 'A');
    for (char& c : s)
        c = pick(rng) < 97 ? common[c_dist(rng)] : rare[r_dist(rng)];
    return s;
}

}  // namespace

TEST_SUITE("sw") {

TEST_CASE("single-residue matches score their diagonal entry") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    CHECK(local_align_score("A", "A", sc) == 5);
    CHECK(local_align_score("W", "W", sc) == 15);
    CHECK(local_align_score("C", "C", sc) == 13);
}

TEST_CASE("the local floor keeps hopeless pairs at zero") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    CHECK(local_align_score("A", "W", sc) == 0);  // A/W = -3, worse than aligning nothing
    CHECK(local_align_score("AAAA", "WWWW", sc) == 0);
}

TEST_CASE("empty sequences score zero") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    CHECK(local_align_score("", "", sc) == 0);
    CHECK(local_align_score("MKT", "", sc) == 0);
    CHECK(local_align_score("", "MKT", sc) == 0);
}

TEST_CASE("perfect self-alignment sums the diagonal") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    // M7 K6 T5 A5 Y8 I5 A5 K6 Q7 R7 = 61
    CHECK(local_align_score("MKTAYIAKQR", "MKTAYIAKQR", sc) == 61);
}

TEST_CASE("a single deletion pays the gap-open price") {
    // Matches A5 C13 D8 F8 G8 = 42, one residue skipped in the query.
    const ScoringScheme strict = ScoringScheme::blosum50(10, 2);
    CHECK(local_align_score("ACDEFG", "ACDFG", strict) == 42 - 10);
    const ScoringScheme lax = ScoringScheme::blosum50(5, 2);
    CHECK(local_align_score("ACDEFG", "ACDFG", lax) == 42 - 5);
}

TEST_CASE("a length-2 gap pays open plus one extension") {
    // MKTAY...KQR vs the same with IA deleted: matches sum to 51.
    const ScoringScheme sc = ScoringScheme::blosum50(10, 2);
    const int got = local_align_score("MKTAYIAKQR", "MKTAYKQR", sc);
    CHECK(got == 51 - (10 + 2));
    CHECK(got == oracle_local_align("MKTAYIAKQR", "MKTAYKQR", sc));
}

TEST_CASE("wildcards and lowercase run through the same alignment") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    const int expected = 2 * sc.score('A', 'A') + sc.score('X', 'A');
    CHECK(local_align_score("AXA", "AAA", sc) == expected);
    CHECK(local_align_score("axa", "AAA", sc) == expected);
    CHECK(local_align_score("AJA", "AAA", sc) == expected);  // J folds to X
}

TEST_CASE("kernel equals the exhaustive reference on random pairs") {
    std::mt19937 rng(20260823);
    const ScoringScheme strict = ScoringScheme::blosum50(10, 2);
    const ScoringScheme lax = ScoringScheme::blosum50(5, 2);
    for (int trial = 0; trial < 300; ++trial) {
        const std::string q = random_protein(rng, 64);
        const std::string s = random_protein(rng, 64);
        CAPTURE(q);
        CAPTURE(s);
        REQUIRE(local_align_score(q, s, strict) == oracle_local_align(q, s, strict));
        REQUIRE(local_align_score(q, s, lax) == oracle_local_align(q, s, lax));
    }
}

TEST_CASE("kernel equals the reference on an asymmetric long pair") {
    std::mt19937 rng(7);
    const ScoringScheme sc = ScoringScheme::blosum50();
    const std::string q = random_protein(rng, 64);
    std::string s;
    for (int i = 0; i < 4; ++i)
        s += random_protein(rng, 64);
    CHECK(local_align_score(q, s, sc) == oracle_local_align(q, s, sc));
}

TEST_CASE("alignment score is symmetric in its arguments") {
    std::mt19937 rng(99);
    const ScoringScheme sc = ScoringScheme::blosum50();
    for (int trial = 0; trial < 200; ++trial) {
        const std::string a = random_protein(rng, 48);
        const std::string b = random_protein(rng, 48);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(local_align_score(a, b, sc) == local_align_score(b, a, sc));
    }
}

TEST_CASE("sw_score carries the subject name and the cell count") {
    const ScoringScheme sc = ScoringScheme::blosum50();
    const Sequence q{"query", "MKTAYIAKQR"};
    const Sequence s{"subject-7", "MKTAYKQR"};
    const auto r = sw_score(q, s, sc);
    CHECK(r.subject_name == "subject-7");
    CHECK(r.score == local_align_score(q.residues, s.residues, sc));
    CHECK(r.cells == q.residues.size() * s.residues.size());
}

}  // TEST_SUITE
