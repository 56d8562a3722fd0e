#include "streamfarm/sw/fasta.hpp"

#include <fstream>
#include <iostream>

namespace streamfarm::sw {

std::vector<Sequence> parse_fasta_stream(std::istream& in, const std::string& origin) {
    std::vector<Sequence> out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t header_line = 0;
    bool have_record = false;

    auto close_record = [&] {
        if (have_record && out.back().residues.empty())
            throw FastaError(origin, header_line,
                             "record '" + out.back().name + "' has no residues");
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (line[0] == '>') {
            close_record();
            std::size_t end = line.find_first_of(" \t", 1);
            std::string name = line.substr(1, end == std::string::npos ? end : end - 1);
            if (name.empty())
                throw FastaError(origin, lineno, "header with empty name");
            out.push_back(Sequence{std::move(name), {}});
            have_record = true;
            header_line = lineno;
        } else {
            if (!have_record)
                throw FastaError(origin, lineno, "sequence data before first header");
            out.back().residues += line;
        }
    }
    close_record();
    if (out.empty())
        std::cerr << "warning: " << origin << ": no sequences found\n";
    return out;
}

std::vector<Sequence> parse_fasta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open FASTA file: " + path);
    return parse_fasta_stream(in, path);
}

}  // namespace streamfarm::sw
