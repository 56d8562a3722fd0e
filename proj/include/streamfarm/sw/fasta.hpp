#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamfarm::sw {

struct Sequence {
    std::string name;      // header token up to the first whitespace
    std::string residues;  // concatenated body lines, case preserved
};

class FastaError : public std::runtime_error {
public:
    FastaError(const std::string& origin, std::size_t line, const std::string& what)
        : std::runtime_error(origin + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Multi-line records, blank lines skipped, CRLF tolerated. Sequence data
// before the first header and records with no residues are errors; an
// empty input yields an empty list and a warning on stderr.
std::vector<Sequence> parse_fasta_stream(std::istream& in, const std::string& origin);
std::vector<Sequence> parse_fasta(const std::string& path);

}  // namespace streamfarm::sw
