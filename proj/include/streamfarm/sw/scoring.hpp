// Substitution matrix plus affine gap penalties. A gap of length L costs
// gap_open + gap_extend * (L - 1). Residues outside the matrix alphabet
// (and lowercase input) are folded onto the wildcard row instead of being
// rejected, so real-world FASTA files run unmodified.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace streamfarm::sw {

class ScoringScheme {
public:
    // The standard published BLOSUM50 table, 24-letter alphabet.
    static ScoringScheme blosum50(int gap_open = 10, int gap_extend = 2);

    // NCBI matrix format: '#' comments, a header row of residue letters,
    // then one labelled row per residue.
    static ScoringScheme from_file(const std::string& path, int gap_open, int gap_extend);

    ScoringScheme(std::string alphabet, std::vector<int> matrix, int gap_open, int gap_extend);

    int score(char a, char b) const {
        return matrix_[static_cast<std::size_t>(index(a)) * n_ + index(b)];
    }
    int score_by_index(int ia, int ib) const {
        return matrix_[static_cast<std::size_t>(ia) * n_ + ib];
    }
    const int* row(int ia) const { return matrix_.data() + static_cast<std::size_t>(ia) * n_; }

    // Alphabet index for a residue; unknown characters land on the
    // wildcard row.
    int index(char c) const { return char_to_index_[static_cast<unsigned char>(c)]; }

    int gap_open() const { return gap_open_; }
    int gap_extend() const { return gap_extend_; }
    std::size_t alphabet_size() const { return n_; }
    const std::string& alphabet() const { return alphabet_; }

private:
    std::string alphabet_;
    std::size_t n_;
    std::vector<int> matrix_;
    std::array<int8_t, 256> char_to_index_{};
    int gap_open_;
    int gap_extend_;
};

}  // namespace streamfarm::sw
