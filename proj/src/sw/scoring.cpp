#include "streamfarm/sw/scoring.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace streamfarm::sw {

namespace {

constexpr char kBlosum50Alphabet[] = "ARNDCQEGHILKMFPSTWYVBZX*";

// Published BLOSUM50, row-major over the alphabet above.
constexpr int kBlosum50[24 * 24] = {
    //  A   R   N   D   C   Q   E   G   H   I   L   K   M   F   P   S   T   W   Y   V   B   Z   X   *
        5, -2, -1, -2, -1, -1, -1,  0, -2, -1, -2, -1, -1, -3, -1,  1,  0, -3, -2,  0, -2, -1, -1, -5,  // A
       -2,  7, -1, -2, -4,  1,  0, -3,  0, -4, -3,  3, -2, -3, -3, -1, -1, -3, -1, -3, -1,  0, -1, -5,  // R
       -1, -1,  7,  2, -2,  0,  0,  0,  1, -3, -4,  0, -2, -4, -2,  1,  0, -4, -2, -3,  4,  0, -1, -5,  // N
       -2, -2,  2,  8, -4,  0,  2, -1, -1, -4, -4, -1, -4, -5, -1,  0, -1, -5, -3, -4,  5,  1, -1, -5,  // D
       -1, -4, -2, -4, 13, -3, -3, -3, -3, -2, -2, -3, -2, -2, -4, -1, -1, -5, -3, -1, -3, -3, -2, -5,  // C
       -1,  1,  0,  0, -3,  7,  2, -2,  1, -3, -2,  2,  0, -4, -1,  0, -1, -1, -1, -3,  0,  4, -1, -5,  // Q
       -1,  0,  0,  2, -3,  2,  6, -3,  0, -4, -3,  1, -2, -3, -1, -1, -1, -3, -2, -3,  1,  5, -1, -5,  // E
        0, -3,  0, -1, -3, -2, -3,  8, -2, -4, -4, -2, -3, -4, -2,  0, -2, -3, -3, -4, -1, -2, -2, -5,  // G
       -2,  0,  1, -1, -3,  1,  0, -2, 10, -4, -3,  0, -1, -1, -2, -1, -2, -3,  2, -4,  0,  0, -1, -5,  // H
       -1, -4, -3, -4, -2, -3, -4, -4, -4,  5,  2, -3,  2,  0, -3, -3, -1, -3, -1,  4, -4, -3, -1, -5,  // I
       -2, -3, -4, -4, -2, -2, -3, -4, -3,  2,  5, -3,  3,  1, -4, -3, -1, -2, -1,  1, -4, -3, -1, -5,  // L
       -1,  3,  0, -1, -3,  2,  1, -2,  0, -3, -3,  6, -2, -4, -1,  0, -1, -3, -2, -3,  0,  1, -1, -5,  // K
       -1, -2, -2, -4, -2,  0, -2, -3, -1,  2,  3, -2,  7,  0, -3, -2, -1, -1,  0,  1, -3, -1, -1, -5,  // M
       -3, -3, -4, -5, -2, -4, -3, -4, -1,  0,  1, -4,  0,  8, -4, -3, -2,  1,  4, -1, -4, -4, -2, -5,  // F
       -1, -3, -2, -1, -4, -1, -1, -2, -2, -3, -4, -1, -3, -4, 10, -1, -1, -4, -3, -3, -2, -1, -2, -5,  // P
        1, -1,  1,  0, -1,  0, -1,  0, -1, -3, -3,  0, -2, -3, -1,  5,  2, -4, -2, -2,  0,  0, -1, -5,  // S
        0, -1,  0, -1, -1, -1, -1, -2, -2, -1, -1, -1, -1, -2, -1,  2,  5, -3, -2,  0,  0, -1,  0, -5,  // T
       -3, -3, -4, -5, -5, -1, -3, -3, -3, -3, -2, -3, -1,  1, -4, -4, -3, 15,  2, -3, -5, -2, -3, -5,  // W
       -2, -1, -2, -3, -3, -1, -2, -3,  2, -1, -1, -2,  0,  4, -3, -2, -2,  2,  8, -1, -3, -2, -1, -5,  // Y
        0, -3, -3, -4, -1, -3, -3, -4, -4,  4,  1, -3,  1, -1, -3, -2,  0, -3, -1,  5, -4, -3, -1, -5,  // V
       -2, -1,  4,  5, -3,  0,  1, -1,  0, -4, -4,  0, -3, -4, -2,  0,  0, -5, -3, -4,  5,  2, -1, -5,  // B
       -1,  0,  0,  1, -3,  4,  5, -2,  0, -3, -3,  1, -1, -4, -1,  0, -1, -2, -2, -3,  2,  5, -1, -5,  // Z
       -1, -1, -1, -1, -2, -1, -1, -2, -1, -1, -1, -1, -1, -2, -2, -1,  0, -3, -1, -1, -1, -1, -1, -5,  // X
       -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5, -5,  1,  // *
};

}  // namespace

ScoringScheme::ScoringScheme(std::string alphabet, std::vector<int> matrix,
                             int gap_open, int gap_extend)
    : alphabet_(std::move(alphabet)),
      n_(alphabet_.size()),
      matrix_(std::move(matrix)),
      gap_open_(gap_open),
      gap_extend_(gap_extend) {
    if (n_ == 0) throw std::invalid_argument("scoring: empty alphabet");
    if (matrix_.size() != n_ * n_)
        throw std::invalid_argument("scoring: matrix size does not match alphabet");
    if (!(gap_open_ >= gap_extend_ && gap_extend_ >= 1))
        throw std::invalid_argument("scoring: require gap_open >= gap_extend >= 1");
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (matrix_[i * n_ + j] != matrix_[j * n_ + i])
                throw std::invalid_argument("scoring: matrix is not symmetric");

    // If the alphabet has no explicit wildcard, synthesize one so unknown
    // residues still score (-1 against everything) instead of failing.
    int wildcard = -1;
    for (std::size_t i = 0; i < n_; ++i)
        if (alphabet_[i] == 'X' || alphabet_[i] == 'x') { wildcard = static_cast<int>(i); break; }
    if (wildcard < 0) {
        std::vector<int> grown((n_ + 1) * (n_ + 1), -1);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                grown[i * (n_ + 1) + j] = matrix_[i * n_ + j];
        matrix_ = std::move(grown);
        alphabet_.push_back('X');
        wildcard = static_cast<int>(n_);
        n_ += 1;
    }

    char_to_index_.fill(static_cast<int8_t>(wildcard));
    for (std::size_t i = 0; i < n_; ++i) {
        unsigned char c = static_cast<unsigned char>(alphabet_[i]);
        char_to_index_[std::toupper(c)] = static_cast<int8_t>(i);
        char_to_index_[std::tolower(c)] = static_cast<int8_t>(i);
    }
}

ScoringScheme ScoringScheme::blosum50(int gap_open, int gap_extend) {
    return ScoringScheme(kBlosum50Alphabet,
                         std::vector<int>(std::begin(kBlosum50), std::end(kBlosum50)),
                         gap_open, gap_extend);
}

ScoringScheme ScoringScheme::from_file(const std::string& path, int gap_open, int gap_extend) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scoring: cannot open matrix file: " + path);

    std::string alphabet;
    std::vector<int> matrix;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        if (alphabet.empty()) {
            // Header row: single-letter column labels.
            std::string tok;
            while (fields >> tok) {
                if (tok.size() != 1)
                    throw std::runtime_error("scoring: bad column label '" + tok + "' in " + path);
                alphabet.push_back(tok[0]);
            }
            if (alphabet.empty())
                throw std::runtime_error("scoring: empty header row in " + path);
            matrix.assign(alphabet.size() * alphabet.size(), 0);
            continue;
        }

        std::string label;
        fields >> label;
        if (label.size() != 1 || row >= alphabet.size() || label[0] != alphabet[row])
            throw std::runtime_error("scoring: row label mismatch at data row " +
                                     std::to_string(row + 1) + " in " + path);
        for (std::size_t j = 0; j < alphabet.size(); ++j) {
            int v;
            if (!(fields >> v))
                throw std::runtime_error("scoring: short data row for '" +
                                         std::string(1, label[0]) + "' in " + path);
            matrix[row * alphabet.size() + j] = v;
        }
        ++row;
    }
    if (row != alphabet.size())
        throw std::runtime_error("scoring: expected " + std::to_string(alphabet.size()) +
                                 " data rows, got " + std::to_string(row) + " in " + path);
    return ScoringScheme(std::move(alphabet), std::move(matrix), gap_open, gap_extend);
}

}  // namespace streamfarm::sw
