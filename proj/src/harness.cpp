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

#include "qrc/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qrc/entanglement.hpp"
#include "qrc/error.hpp"
#include "qrc/rng.hpp"

namespace qrc {

using nlohmann::json;

std::string software_version() {
    return QRC_VERSION;
}

void SweepSpec::validate() const {
    auto fail = [](const std::string &m) { throw Error(ErrorCode::InvalidConfig, "sweep spec: " + m); };
    if (n_values.empty() || j0_values.empty() || gamma_values.empty()) {
        fail("grid lists must be nonempty");
    }
    if (ensemble_size < 1) {
        fail("ensemble_size must be >= 1");
    }
    for (int n : n_values) {
        ReservoirConfig cfg;
        cfg.n_qubits = n;
        cfg.h = h;
        cfg.delta_t = delta_t;
        cfg.v_multiplex = v_multiplex;
        for (double j0 : j0_values) {
            for (double g : gamma_values) {
                cfg.j0 = j0;
                cfg.gamma = g;
                cfg.validate();
            }
        }
    }
    task.validate();
    dimension.validate();
    if (measurements.dimension && dimension_steps * static_cast<size_t>(v_multiplex) <
                                      static_cast<size_t>(dimension.k_neighbors) + 1) {
        fail("dimension_steps too small for k_neighbors");
    }
    if (workers < 1) {
        fail("workers must be >= 1");
    }
}

namespace {

template <typename T>
void read_into(const json &j, const char *key, T &out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

void reject_unknown(const json &j, std::initializer_list<const char *> known, const std::string &where) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw Error(ErrorCode::InvalidConfig, "sweep spec: unknown key '" + it.key() + "' in " + where);
        }
    }
}

json spec_to_json_value(const SweepSpec &s) {
    return json{
        {"name", s.name},
        {"n_qubits", s.n_values},
        {"j0", s.j0_values},
        {"gamma", s.gamma_values},
        {"ensemble_size", s.ensemble_size},
        {"base_seed", s.base_seed},
        {"reservoir", {{"h", s.h}, {"delta_t", s.delta_t}, {"v_multiplex", s.v_multiplex}}},
        {"task",
         {{"tau_max", s.task.tau_max},
          {"washout", s.task.washout},
          {"train", s.task.train},
          {"test", s.task.test},
          {"ridge_lambda", s.task.ridge_lambda}}},
        {"measurements",
         {{"negativity", s.measurements.negativity},
          {"dimension", s.measurements.dimension},
          {"stm", s.measurements.stm}}},
        {"negativity", {{"steps", s.negativity_steps}}},
        {"dimension",
         {{"k_neighbors", s.dimension.k_neighbors},
          {"n_anchors", s.dimension.n_anchors},
          {"threshold", s.dimension.threshold},
          {"steps", s.dimension_steps}}},
        {"validate_states", s.validate_states},
        {"workers", s.workers},
    };
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string &json_text) {
    SweepSpec s;
    try {
        json j = json::parse(json_text);
        reject_unknown(j,
                       {"name", "n_qubits", "j0", "gamma", "ensemble_size", "base_seed", "reservoir", "task",
                        "measurements", "negativity", "dimension", "validate_states", "workers", "description"},
                       "top level");
        read_into(j, "name", s.name);
        read_into(j, "n_qubits", s.n_values);
        read_into(j, "j0", s.j0_values);
        read_into(j, "gamma", s.gamma_values);
        read_into(j, "ensemble_size", s.ensemble_size);
        read_into(j, "base_seed", s.base_seed);
        read_into(j, "validate_states", s.validate_states);
        read_into(j, "workers", s.workers);
        if (j.contains("reservoir")) {
            const auto &r = j.at("reservoir");
            reject_unknown(r, {"h", "delta_t", "v_multiplex"}, "reservoir");
            read_into(r, "h", s.h);
            read_into(r, "delta_t", s.delta_t);
            read_into(r, "v_multiplex", s.v_multiplex);
        }
        if (j.contains("task")) {
            const auto &t = j.at("task");
            reject_unknown(t, {"tau_max", "washout", "train", "test", "ridge_lambda"}, "task");
            read_into(t, "tau_max", s.task.tau_max);
            read_into(t, "washout", s.task.washout);
            read_into(t, "train", s.task.train);
            read_into(t, "test", s.task.test);
            read_into(t, "ridge_lambda", s.task.ridge_lambda);
        }
        if (j.contains("measurements")) {
            const auto &m = j.at("measurements");
            reject_unknown(m, {"negativity", "dimension", "stm"}, "measurements");
            read_into(m, "negativity", s.measurements.negativity);
            read_into(m, "dimension", s.measurements.dimension);
            read_into(m, "stm", s.measurements.stm);
        }
        if (j.contains("negativity")) {
            reject_unknown(j.at("negativity"), {"steps"}, "negativity");
            read_into(j.at("negativity"), "steps", s.negativity_steps);
        }
        if (j.contains("dimension")) {
            const auto &d = j.at("dimension");
            reject_unknown(d, {"k_neighbors", "n_anchors", "threshold", "steps"}, "dimension");
            read_into(d, "k_neighbors", s.dimension.k_neighbors);
            read_into(d, "n_anchors", s.dimension.n_anchors);
            read_into(d, "threshold", s.dimension.threshold);
            read_into(d, "steps", s.dimension_steps);
        }
    } catch (const json::exception &e) {
        throw Error(ErrorCode::InvalidConfig, std::string("sweep spec: ") + e.what());
    }
    s.validate();
    return s;
}

SweepSpec load_sweep_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sweep_spec(buf.str());
}

std::string sweep_spec_to_json(const SweepSpec &spec) {
    return spec_to_json_value(spec).dump(2);
}

uint64_t coupling_seed_for(uint64_t base_seed, int n_qubits, int realization) {
    return derive_seed(base_seed, {static_cast<uint64_t>(n_qubits), static_cast<uint64_t>(realization), 0});
}

uint64_t input_seed_for(uint64_t base_seed, int n_qubits, int realization) {
    return derive_seed(base_seed, {static_cast<uint64_t>(n_qubits), static_cast<uint64_t>(realization), 1});
}

ResultRow evaluate_job(const SweepSpec &spec, int n_qubits, double j0, double gamma, int realization) {
    auto start = std::chrono::steady_clock::now();
    ResultRow row;
    row.n_qubits = n_qubits;
    row.j0 = j0;
    row.gamma = gamma;
    row.realization = realization;
    row.coupling_seed = coupling_seed_for(spec.base_seed, n_qubits, realization);
    row.input_seed = input_seed_for(spec.base_seed, n_qubits, realization);
    row.software_version = software_version();
    try {
        ReservoirConfig cfg;
        cfg.n_qubits = n_qubits;
        cfg.h = spec.h;
        cfg.j0 = j0;
        cfg.delta_t = spec.delta_t;
        cfg.v_multiplex = spec.v_multiplex;
        cfg.gamma = gamma;
        cfg.coupling_seed = row.coupling_seed;

        const auto &m = spec.measurements;
        const size_t washout = spec.task.washout;
        size_t active = 1;
        if (m.stm) {
            active = std::max(active, spec.task.train + spec.task.test);
        }
        if (m.negativity) {
            active = std::max(active, spec.negativity_steps);
        }
        if (m.dimension) {
            active = std::max(active, spec.dimension_steps);
        }
        auto inputs = uniform_inputs(row.input_seed, washout + active);

        NegativityRecorder recorder(n_qubits, washout, spec.negativity_steps, false);
        RunOptions run;
        run.validate_states = spec.validate_states;
        run.record_states = m.dimension;
        run.record_from_step = washout;
        run.record_steps = spec.dimension_steps;
        if (m.negativity) {
            run.observer = [&recorder](const StateEvent &e) { recorder.observe(e); };
        }
        auto result = run_sequence(cfg, inputs, run);

        if (spec.validate_states) {
            row.states_checked = result.stats.states_checked;
            row.max_trace_error = result.stats.max_trace_error;
            row.max_hermiticity_error = result.stats.max_hermiticity_error;
            row.min_eigenvalue = result.stats.min_eigenvalue;
        }
        if (m.negativity) {
            row.mean_negativity = recorder.time_average();
            row.max_post_injection_negativity = recorder.max_post_injection_input_qubit();
        }
        if (m.dimension) {
            auto est = covariance_dimension(*result.states, spec.dimension);
            row.d_c = est.d_c;
            row.d_c_fraction = est.fraction;
        }
        if (m.stm) {
            StmTask task = spec.task;
            task.input_seed = row.input_seed;
            auto report = stm_from_records(cfg, result.records, inputs, task);
            row.c_stm = report.total;
            row.c_tau = report.per_delay;
        }
    } catch (const std::exception &e) {
        row.error = e.what();
    }
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<ResultRow> run_sweep(const SweepSpec &spec, int workers, const ProgressFn &progress) {
    spec.validate();
    const size_t n_j0 = spec.j0_values.size();
    const size_t n_g = spec.gamma_values.size();
    const auto n_r = static_cast<size_t>(spec.ensemble_size);
    const size_t total = spec.job_count();
    std::vector<ResultRow> rows(total);
    std::mutex progress_mutex;
    size_t done = 0;

    auto run_one = [&](size_t idx) {
        size_t r = idx % n_r;
        size_t g = (idx / n_r) % n_g;
        size_t j = (idx / (n_r * n_g)) % n_j0;
        size_t n = idx / (n_r * n_g * n_j0);
        rows[idx] = evaluate_job(spec, spec.n_values[n], spec.j0_values[j], spec.gamma_values[g], static_cast<int>(r));
        if (progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            progress(++done, total);
        }
    };

    const auto count = static_cast<long>(total);
    if (workers <= 1) {
        for (long i = 0; i < count; ++i) {
            run_one(static_cast<size_t>(i));
        }
    } else {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (long i = 0; i < count; ++i) {
            run_one(static_cast<size_t>(i));
        }
    }
    return rows;
}

std::vector<std::string> result_columns(int tau_max) {
    std::vector<std::string> cols = {"n_qubits",
                                     "j0",
                                     "gamma",
                                     "realization",
                                     "coupling_seed",
                                     "input_seed",
                                     "mean_negativity",
                                     "max_post_injection_negativity",
                                     "d_c",
                                     "d_c_fraction",
                                     "c_stm"};
    for (int t = 0; t <= tau_max; ++t) {
        cols.push_back("c_tau_" + std::to_string(t));
    }
    for (const char *c : {"states_checked", "max_trace_error", "max_hermiticity_error", "min_eigenvalue", "runtime_ms",
                          "software_version", "error"}) {
        cols.emplace_back(c);
    }
    return cols;
}

CsvTable rows_to_table(const std::vector<ResultRow> &rows, int tau_max) {
    CsvTable t;
    t.header = result_columns(tau_max);
    for (const auto &r : rows) {
        std::vector<std::string> cells = {std::to_string(r.n_qubits),
                                          format_double(r.j0),
                                          format_double(r.gamma),
                                          std::to_string(r.realization),
                                          std::to_string(r.coupling_seed),
                                          std::to_string(r.input_seed),
                                          format_double(r.mean_negativity),
                                          format_double(r.max_post_injection_negativity),
                                          format_double(r.d_c),
                                          format_double(r.d_c_fraction),
                                          format_double(r.c_stm)};
        for (int tau = 0; tau <= tau_max; ++tau) {
            auto i = static_cast<size_t>(tau);
            cells.push_back(format_double(i < r.c_tau.size() ? r.c_tau[i] : NAN));
        }
        cells.push_back(std::to_string(r.states_checked));
        cells.push_back(format_double(r.max_trace_error));
        cells.push_back(format_double(r.max_hermiticity_error));
        cells.push_back(format_double(r.min_eigenvalue));
        cells.push_back(format_double(std::round(r.runtime_ms * 1000.0) / 1000.0));
        cells.push_back(r.software_version);
        cells.push_back(r.error);
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::string determinism_hash(const CsvTable &table) {
    int skip = table.column("runtime_ms");
    uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0x1f;
        h *= 0x100000001b3ull;
    };
    auto feed_row = [&](const std::vector<std::string> &row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (static_cast<int>(i) != skip) {
                feed(row[i]);
            }
        }
        h ^= '\n';
        h *= 0x100000001b3ull;
    };
    feed_row(table.header);
    for (const auto &r : table.rows) {
        feed_row(r);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string write_sweep_outputs(const std::string &dir, const SweepSpec &spec, const std::vector<ResultRow> &rows) {
    std::filesystem::create_directories(dir);
    CsvTable table = rows_to_table(rows, spec.task.tau_max);
    write_csv_file((std::filesystem::path(dir) / "results.csv").string(), table);
    std::string hash = determinism_hash(table);
    size_t errors = 0;
    for (const auto &r : rows) {
        errors += !r.error.empty();
    }
    json sidecar = {
        {"schema_version", kResultSchemaVersion},
        {"software_version", software_version()},
        {"spec", spec_to_json_value(spec)},
        {"columns", table.header},
        {"rows", rows.size()},
        {"error_rows", errors},
        {"determinism_hash", hash},
        {"determinism_hash_excludes", {"runtime_ms"}},
    };
    std::ofstream out((std::filesystem::path(dir) / "results.json").string(), std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write sidecar in " + dir);
    }
    out << sidecar.dump(2) << '\n';
    return hash;
}

CsvTable aggregate(const CsvTable &results, const std::vector<std::string> &group_by) {
    static const std::set<std::string> kNotMetrics = {"realization", "coupling_seed", "input_seed",
                                                      "software_version", "error", "runtime_ms"};
    std::vector<size_t> key_cols;
    for (const auto &g : group_by) {
        key_cols.push_back(results.require_column(g));
    }
    const int error_col = results.column("error");
    std::set<size_t> key_set(key_cols.begin(), key_cols.end());
    std::vector<size_t> metric_cols;
    for (size_t c = 0; c < results.header.size(); ++c) {
        if (!key_set.count(c) && !kNotMetrics.count(results.header[c])) {
            metric_cols.push_back(c);
        }
    }

    struct Group {
        std::vector<std::string> key;
        size_t count = 0;
        size_t errors = 0;
        std::vector<std::vector<double>> values;
    };
    std::vector<Group> groups;
    std::map<std::vector<std::string>, size_t> index;
    for (const auto &row : results.rows) {
        if (row.size() != results.header.size()) {
            throw Error(ErrorCode::SchemaMismatch, "row width differs from header");
        }
        std::vector<std::string> key;
        for (size_t c : key_cols) {
            key.push_back(row[c]);
        }
        auto [it, inserted] = index.emplace(key, groups.size());
        if (inserted) {
            groups.push_back({key, 0, 0, std::vector<std::vector<double>>(metric_cols.size())});
        }
        Group &g = groups[it->second];
        ++g.count;
        if (error_col >= 0 && !row[static_cast<size_t>(error_col)].empty()) {
            ++g.errors;
            continue;
        }
        for (size_t m = 0; m < metric_cols.size(); ++m) {
            double v = parse_double(row[metric_cols[m]]);
            if (!std::isnan(v)) {
                g.values[m].push_back(v);
            }
        }
    }

    CsvTable out;
    out.header = group_by;
    out.header.emplace_back("count");
    out.header.emplace_back("errors");
    for (size_t c : metric_cols) {
        out.header.push_back(results.header[c] + "_mean");
        out.header.push_back(results.header[c] + "_std");
    }
    for (const auto &g : groups) {
        std::vector<std::string> cells = g.key;
        cells.push_back(std::to_string(g.count));
        cells.push_back(std::to_string(g.errors));
        for (const auto &vals : g.values) {
            if (vals.empty()) {
                cells.emplace_back("nan");
                cells.emplace_back("nan");
                continue;
            }
            double mean = 0;
            for (double v : vals) {
                mean += v;
            }
            mean /= static_cast<double>(vals.size());
            double var = 0;
            for (double v : vals) {
                var += (v - mean) * (v - mean);
            }
            double sd = vals.size() > 1 ? std::sqrt(var / static_cast<double>(vals.size() - 1)) : 0.0;
            cells.push_back(format_double(mean));
            cells.push_back(format_double(sd));
        }
        out.rows.push_back(std::move(cells));
    }
    return out;
}

CsvTable aggregate(const std::vector<ResultRow> &rows, int tau_max, const std::vector<std::string> &group_by) {
    return aggregate(rows_to_table(rows, tau_max), group_by);
}

int resolve_workers(int requested, const SweepSpec &spec) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("QRC_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) {
            return w;
        }
    }
    return std::max(1, spec.workers);
}

}  // namespace qrc
