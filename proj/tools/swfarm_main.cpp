// `swfarm`: score every database sequence against a query with the
// affine-gap local-alignment kernel, fanned out over an order-preserving
// worker farm. Output is TSV (name<TAB>score, database order) plus a
// trailer comment with GCUPS and wall time.
//
// Exit codes: 0 success, 1 usage or input error, 2 integrity failure.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "streamfarm/errors.hpp"
#include "streamfarm/sw/fasta.hpp"
#include "streamfarm/sw/scoring.hpp"
#include "streamfarm/sw/swfarm.hpp"

int main(int argc, char** argv) {
    using namespace streamfarm;
    using namespace streamfarm::sw;

    CLI::App app{"Smith-Waterman database scan over a worker farm"};
    app.name("swfarm");

    std::string query_path;
    std::string db_path;
    std::string matrix = "blosum50";
    int gap_open = 10;
    int gap_extend = 2;
    std::size_t n_workers = 8;
    std::string out_path;

    app.add_option("--query", query_path, "FASTA file with the query sequence")->required();
    app.add_option("--db", db_path, "FASTA database to scan")->required();
    app.add_option("--matrix", matrix, "'blosum50' or a path to an NCBI-format matrix")
        ->capture_default_str();
    app.add_option("--gap-open", gap_open, "Penalty for a gap of length 1")
        ->capture_default_str();
    app.add_option("--gap-extend", gap_extend, "Penalty per additional gap position")
        ->capture_default_str();
    app.add_option("--workers", n_workers, "Worker thread count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out", out_path, "Write TSV to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        auto queries = parse_fasta(query_path);
        if (queries.empty()) {
            std::cerr << "error: " << query_path << " contains no sequences\n";
            return 1;
        }
        if (queries.size() > 1)
            std::cerr << "warning: " << query_path << " has " << queries.size()
                      << " sequences, using the first ('" << queries.front().name << "')\n";
        auto db = parse_fasta(db_path);

        ScoringScheme scheme = matrix == "blosum50"
                                   ? ScoringScheme::blosum50(gap_open, gap_extend)
                                   : ScoringScheme::from_file(matrix, gap_open, gap_extend);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) {
                std::cerr << "error: cannot open " << out_path << " for writing\n";
                return 1;
            }
            out = &file;
        }

        SwFarmOptions options;
        options.n_workers = n_workers;
        run_swfarm(queries.front(), db, scheme, *out, options);
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
