// `bench`: sweep task grain and worker count over the lockfree farm and a
// mutex-queue baseline, writing one CSV row per cell.
//
// Exit codes: 0 success, 2 integrity failure, 3 calibration failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "streamfarm/bench.hpp"
#include "streamfarm/errors.hpp"

int main(int argc, char** argv) {
    using namespace streamfarm;
    using namespace streamfarm::bench;

    CLI::App app{"Farm micro-benchmark: speedup vs task grain and worker count"};
    app.name("bench");

    std::vector<double> grains{0.5, 5, 50};
    std::vector<std::size_t> workers{1, 2, 4, 8};
    std::size_t tasks = 100000;
    std::string engine = "both";
    std::string alloc = "pool";
    int reps = 5;
    std::string csv_path;
    std::size_t capacity = 512;
    bool no_verify = false;

    app.add_option("--grains", grains, "Per-task compute times Tc in microseconds")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--workers", workers, "Worker counts to sweep (0 = sequential reference)")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--tasks", tasks, "Stream length per run")->capture_default_str();
    app.add_option("--engine", engine, "Queue engine under test")
        ->check(CLI::IsMember({"lockfree", "mutex", "both"}))
        ->capture_default_str();
    app.add_option("--alloc", alloc, "Task allocator")
        ->check(CLI::IsMember({"pool", "system"}))
        ->capture_default_str();
    app.add_option("--reps", reps, "Repetitions per cell (first is warm-up)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--csv", csv_path, "Write CSV to this file instead of stdout");
    app.add_option("--capacity", capacity, "Channel capacity in items")->capture_default_str();
    app.add_flag("--no-verify", no_verify, "Skip per-task content verification");

    CLI11_PARSE(app, argc, argv);

    std::vector<Engine> engines;
    if (engine == "lockfree" || engine == "both") engines.push_back(Engine::Lockfree);
    if (engine == "mutex" || engine == "both") engines.push_back(Engine::MutexBaseline);

    BenchConfig base;
    base.n_tasks = tasks;
    base.channel_capacity = capacity;
    base.alloc = alloc == "pool" ? Alloc::Pool : Alloc::System;
    base.repetitions = reps;
    base.verify = !no_verify;

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) {
            std::cerr << "error: cannot open " << csv_path << " for writing\n";
            return 1;
        }
        out = &file;
    }

    write_csv_header(*out);
    try {
        sweep(grains, workers, engines, base, [&](const SpeedupRecord& r) {
            write_csv_row(*out, r);
            out->flush();
        });
    } catch (const CalibrationError& e) {
        *out << "# aborted: " << e.what() << "\n";
        std::cerr << "calibration failure: " << e.what() << "\n";
        return 3;
    } catch (const IntegrityError& e) {
        *out << "# aborted: " << e.what() << "\n";
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
