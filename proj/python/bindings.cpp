// Python bindings for the main operations: alignment scoring, FASTA
// parsing, spin calibration, and the two end-to-end runners.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "streamfarm/bench.hpp"
#include "streamfarm/sw/fasta.hpp"
#include "streamfarm/sw/kernel.hpp"
#include "streamfarm/sw/scoring.hpp"
#include "streamfarm/sw/swfarm.hpp"

namespace py = pybind11;

namespace {

streamfarm::bench::Engine engine_from_name(const std::string& name) {
    if (name == "lockfree") return streamfarm::bench::Engine::Lockfree;
    if (name == "mutex") return streamfarm::bench::Engine::MutexBaseline;
    throw std::invalid_argument("engine must be 'lockfree' or 'mutex', got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(streamfarm, m) {
    using namespace streamfarm;

    m.doc() = "Streaming task-farm runtime: alignment scoring and queue micro-benchmarks";

    m.def(
        "sw_score",
        [](const std::string& query, const std::string& subject, int gap_open, int gap_extend) {
            auto scheme = sw::ScoringScheme::blosum50(gap_open, gap_extend);
            return sw::local_align_score(query, subject, scheme);
        },
        py::arg("query"), py::arg("subject"), py::arg("gap_open") = 10,
        py::arg("gap_extend") = 2,
        "Best local alignment score of two residue strings under BLOSUM50 "
        "with affine gap penalties.");

    m.def("gcups", &sw::gcups, py::arg("q_len"), py::arg("total_db_residues"),
          py::arg("seconds"),
          "Billions of DP cell updates per second: q_len * total_db_residues / "
          "(seconds * 1e9).");

    m.def(
        "parse_fasta",
        [](const std::string& path) {
            std::vector<std::pair<std::string, std::string>> out;
            for (auto& s : sw::parse_fasta(path)) out.emplace_back(s.name, s.residues);
            return out;
        },
        py::arg("path"), "Parse a FASTA file into a list of (name, residues) pairs.");

    m.def("calibrate_spin", &bench::calibrate_spin, py::arg("target_micros"),
          "Busy-loop iteration count measuring target_micros on this machine.");

    m.def(
        "run_bench",
        [](double tc_micros, std::size_t n_workers, std::size_t n_tasks,
           const std::string& engine, int repetitions, std::size_t channel_capacity) {
            bench::BenchConfig cfg;
            cfg.tc_micros = tc_micros;
            cfg.n_workers = n_workers;
            cfg.n_tasks = n_tasks;
            cfg.engine = engine_from_name(engine);
            cfg.repetitions = repetitions;
            cfg.channel_capacity = channel_capacity;
            auto r = bench::run_bench(cfg);
            py::dict d;
            d["engine"] = r.engine;
            d["tc_micros"] = r.tc_micros;
            d["n_workers"] = r.n_workers;
            d["n_tasks"] = r.n_tasks;
            d["median_seconds"] = r.median_seconds;
            d["speedup"] = r.speedup;
            d["tasks_per_second"] = r.tasks_per_second;
            return d;
        },
        py::arg("tc_micros") = 5.0, py::arg("n_workers") = 2, py::arg("n_tasks") = 10000,
        py::arg("engine") = "lockfree", py::arg("repetitions") = 2,
        py::arg("channel_capacity") = 512,
        "One benchmark cell; returns the speedup record as a dict.");

    m.def(
        "run_swfarm",
        [](const std::string& query_path, const std::string& db_path, std::size_t n_workers,
           int gap_open, int gap_extend) {
            auto queries = sw::parse_fasta(query_path);
            if (queries.empty())
                throw std::invalid_argument(query_path + " contains no sequences");
            auto db = sw::parse_fasta(db_path);
            auto scheme = sw::ScoringScheme::blosum50(gap_open, gap_extend);
            std::ostringstream out;
            sw::SwFarmOptions options;
            options.n_workers = n_workers;
            auto report = sw::run_swfarm(queries.front(), db, scheme, out, options);
            py::dict d;
            d["output"] = out.str();
            d["n_results"] = report.n_results;
            d["cells"] = report.cells;
            d["seconds"] = report.seconds;
            d["gcups"] = report.gcups_value;
            return d;
        },
        py::arg("query_path"), py::arg("db_path"), py::arg("n_workers") = 4,
        py::arg("gap_open") = 10, py::arg("gap_extend") = 2,
        "Scan a FASTA database against the first query sequence; returns the "
        "TSV output and throughput figures as a dict.");
}
