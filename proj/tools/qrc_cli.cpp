// Copyright 2026 The qrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qrc: command-line front end for sweeps and single-realization experiments.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrc/csv.hpp"
#include "qrc/dimension.hpp"
#include "qrc/entanglement.hpp"
#include "qrc/error.hpp"
#include "qrc/fixtures.hpp"
#include "qrc/harness.hpp"
#include "qrc/memory.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/rng.hpp"

namespace {

using namespace qrc;

struct ReservoirArgs {
    ReservoirConfig cfg;
    uint64_t input_seed = 1;
};

void add_reservoir_options(CLI::App *cmd, ReservoirArgs &a) {
    cmd->add_option("-n,--qubits", a.cfg.n_qubits, "number of qubits (1..6)")->capture_default_str();
    cmd->add_option("--field", a.cfg.h, "transverse field h")->capture_default_str();
    cmd->add_option("--j0", a.cfg.j0, "spectral radius of the coupling matrix")->capture_default_str();
    cmd->add_option("--delta-t", a.cfg.delta_t, "time between inputs")->capture_default_str();
    cmd->add_option("--v", a.cfg.v_multiplex, "sub-steps per input")->capture_default_str();
    cmd->add_option("--gamma", a.cfg.gamma, "dephasing rate")->capture_default_str();
    cmd->add_option("--seed", a.cfg.coupling_seed, "coupling seed")->capture_default_str();
    cmd->add_option("--input-seed", a.input_seed, "input sequence seed")->capture_default_str();
}

int cmd_sweep(const std::string &spec_path, const std::string &out_dir, int workers, bool quiet) {
    SweepSpec spec = load_sweep_spec(spec_path);
    int w = resolve_workers(workers, spec);
    if (!quiet) {
        std::fprintf(stderr, "sweep '%s': %zu jobs on %d worker(s)\n", spec.name.c_str(), spec.job_count(), w);
    }
    ProgressFn progress;
    if (!quiet) {
        progress = [](size_t done, size_t total) {
            std::fprintf(stderr, "\r%zu/%zu", done, total);
            if (done == total) {
                std::fputc('\n', stderr);
            }
        };
    }
    auto rows = run_sweep(spec, w, progress);
    std::string hash = write_sweep_outputs(out_dir, spec, rows);
    size_t errors = 0;
    for (const auto &r : rows) {
        if (!r.error.empty()) {
            ++errors;
            std::fprintf(stderr, "row N=%d J0=%g gamma=%g r=%d failed: %s\n", r.n_qubits, r.j0, r.gamma,
                         r.realization, r.error.c_str());
        }
    }
    std::printf("%zu rows, %zu errors, hash %s\n", rows.size(), errors, hash.c_str());
    return errors == 0 ? 0 : 3;
}

int cmd_stm(const ReservoirArgs &a, StmTask task, const std::string &out) {
    task.input_seed = a.input_seed;
    auto report = run_stm_task(a.cfg, task);
    CsvTable t;
    t.header = {"tau", "c_tau"};
    for (size_t tau = 0; tau < report.per_delay.size(); ++tau) {
        t.rows.push_back({std::to_string(tau), format_double(report.per_delay[tau])});
    }
    if (!out.empty()) {
        write_csv_file(out, t);
    }
    std::printf("C_STM %s\nC_0 %s\n", format_double(report.total).c_str(),
                format_double(report.per_delay.front()).c_str());
    if (report.zero_variance) {
        std::printf("warning: some delay had zero prediction variance\n");
    }
    return 0;
}

int cmd_negativity(const ReservoirArgs &a, size_t washout, size_t steps, const std::string &trace_out) {
    auto inputs = uniform_inputs(a.input_seed, washout + steps);
    const int n = a.cfg.n_qubits;
    NegativityRecorder recorder(n, washout, steps, !trace_out.empty());
    std::vector<std::vector<double>> sz;
    RunOptions run;
    run.validate_states = true;
    run.observer = [&](const StateEvent &e) {
        recorder.observe(e);
        if (!trace_out.empty() && e.step >= washout) {
            std::vector<double> z(static_cast<size_t>(n));
            for (int q = 1; q <= n; ++q) {
                z[static_cast<size_t>(q - 1)] = e.state.sigma_z(q);
            }
            sz.push_back(std::move(z));
        }
    };
    run_sequence(a.cfg, inputs, run);
    double avg = recorder.time_average();
    double post = recorder.max_post_injection_input_qubit();
    NegativityTrace trace = std::move(recorder).finish();
    for (size_t b = 0; b < trace.bipartitions.size(); ++b) {
        double m = 0;
        for (double v : trace.values[b]) {
            m += v;
        }
        if (!trace.values[b].empty()) {
            std::printf("N_d[%s] %s\n", trace.bipartitions[b].label().c_str(),
                        format_double(m / static_cast<double>(trace.values[b].size())).c_str());
        }
    }
    std::printf("mean N_d %s\nmax post-injection N_d[input] %s\n", format_double(avg).c_str(),
                format_double(post).c_str());
    if (!trace_out.empty()) {
        CsvTable t;
        t.header = {"step", "substep", "time", "input"};
        for (int q = 1; q <= n; ++q) {
            t.header.push_back("sigma_z_" + std::to_string(q));
        }
        for (const auto &bp : trace.bipartitions) {
            t.header.push_back("n_d_" + bp.label());
        }
        t.header.emplace_back("n_d_mean");
        for (size_t i = 0; i < trace.times.size(); ++i) {
            std::vector<std::string> row = {std::to_string(trace.steps[i]), std::to_string(trace.substeps[i]),
                                            format_double(trace.times[i]), format_double(inputs[trace.steps[i]])};
            for (double z : sz[i]) {
                row.push_back(format_double(z));
            }
            for (const auto &series : trace.values) {
                row.push_back(format_double(series[i]));
            }
            row.push_back(format_double(trace.mean_over_partitions[i]));
            t.rows.push_back(std::move(row));
        }
        write_csv_file(trace_out, t);
    }
    return 0;
}

void print_estimate(const DimensionEstimate &e) {
    std::printf("d_c %s\nambient %zu\nfraction %s\ndegenerate_anchors %d\n", format_double(e.d_c).c_str(),
                e.ambient_dim, format_double(e.fraction).c_str(), e.degenerate_anchors);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum reservoir simulator: sweeps, memory, entanglement and dimension"};
    app.set_version_flag("--version", qrc::software_version());
    app.require_subcommand(1);

    auto *sweep = app.add_subcommand("sweep", "run a parameter sweep from a JSON spec");
    std::string spec_path, out_dir;
    int workers = 0;
    bool quiet = false;
    sweep->add_option("spec", spec_path, "spec file")->required()->check(CLI::ExistingFile);
    sweep->add_option("-o,--out", out_dir, "output directory")->required();
    sweep->add_option("-w,--workers", workers, "worker threads (overrides QRC_WORKERS and the spec)");
    sweep->add_flag("-q,--quiet", quiet, "no progress output");

    ReservoirArgs stm_args;
    StmTask task;
    std::string stm_out;
    auto *stm = app.add_subcommand("stm", "short-term memory capacity of one realization");
    add_reservoir_options(stm, stm_args);
    stm->add_option("--tau-max", task.tau_max)->capture_default_str();
    stm->add_option("--washout", task.washout)->capture_default_str();
    stm->add_option("--train", task.train)->capture_default_str();
    stm->add_option("--test", task.test)->capture_default_str();
    stm->add_option("--ridge", task.ridge_lambda, "ridge, relative to the mean Gram diagonal")->capture_default_str();
    stm->add_option("-o,--out", stm_out, "write per-delay capacities as CSV");

    ReservoirArgs neg_args;
    size_t neg_washout = 500, neg_steps = 300;
    std::string trace_out;
    auto *neg = app.add_subcommand("negativity", "entanglement of one realization under random input");
    add_reservoir_options(neg, neg_args);
    neg->add_option("--washout", neg_washout)->capture_default_str();
    neg->add_option("--steps", neg_steps, "inputs averaged after the washout")->capture_default_str();
    neg->add_option("--trace-out", trace_out, "write <sigma_z> and N_d per sampled instant as CSV");

    ReservoirArgs dim_args;
    DimensionParams dparams;
    DimensionRunOptions drun;
    auto *dim = app.add_subcommand("dimension", "covariance dimension of one reservoir trajectory");
    add_reservoir_options(dim, dim_args);
    dim->add_option("--washout", drun.washout)->capture_default_str();
    dim->add_option("--steps", drun.steps)->capture_default_str();
    dim->add_option("-k,--neighbors", dparams.k_neighbors)->capture_default_str();
    dim->add_option("--anchors", dparams.n_anchors)->capture_default_str();
    dim->add_option("--threshold", dparams.threshold)->capture_default_str();

    size_t moebius_points = 5000;
    uint64_t moebius_seed = 1;
    double moebius_width = 0.1;
    auto *moebius = app.add_subcommand("demo-moebius", "estimator check on a Moebius strip in R^3");
    moebius->add_option("--points", moebius_points)->capture_default_str();
    moebius->add_option("--seed", moebius_seed)->capture_default_str();
    moebius->add_option("--half-width", moebius_width, "strip half width, centre radius 1")->capture_default_str();
    moebius->add_option("-k,--neighbors", dparams.k_neighbors)->capture_default_str();

    std::string agg_in, agg_out;
    std::vector<std::string> group_by;
    auto *agg = app.add_subcommand("aggregate", "ensemble mean / std / count of a results CSV");
    agg->add_option("csv", agg_in)->required()->check(CLI::ExistingFile);
    agg->add_option("--group-by", group_by, "grouping columns")->required()->delimiter(',');
    agg->add_option("-o,--out", agg_out, "output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            return cmd_sweep(spec_path, out_dir, workers, quiet);
        }
        if (*stm) {
            return cmd_stm(stm_args, task, stm_out);
        }
        if (*neg) {
            return cmd_negativity(neg_args, neg_washout, neg_steps, trace_out);
        }
        if (*dim) {
            auto inputs = uniform_inputs(dim_args.input_seed, drun.washout + drun.steps);
            print_estimate(reservoir_dimension(dim_args.cfg, inputs, dparams, drun));
            return 0;
        }
        if (*moebius) {
            auto cloud = moebius_strip(moebius_points, moebius_seed, 1.0, moebius_width);
            print_estimate(covariance_dimension(cloud, dparams));
            return 0;
        }
        if (*agg) {
            auto table = aggregate(read_csv_file(agg_in), group_by);
            if (agg_out.empty()) {
                write_csv(std::cout, table);
            } else {
                write_csv_file(agg_out, table);
            }
            return 0;
        }
    } catch (const qrc::Error &e) {
        std::fprintf(stderr, "error [%s]: %s\n", std::string(qrc::error_code_name(e.code())).c_str(), e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
