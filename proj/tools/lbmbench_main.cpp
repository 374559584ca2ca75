// lbmbench: validate the layout/kernel paths against the scalar reference,
// benchmark the propagate/collide/step kernels over a layout x vl x workers
// matrix, or dump the model's population table.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "lbm/bench_matrix.hpp"
#include "lbm/config.hpp"
#include "lbm/model.hpp"
#include "lbm/validation.hpp"

namespace {

struct RawOptions {
    lbm::RunConfig cfg;
    std::vector<std::string> layout_names;
    std::string traffic_name;
    std::string schedule_name = "dynamic";
    std::string config_path;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flat key=value config file; keys match the long option names. Values from
// the command line take precedence, unknown keys are rejected.
void apply_config_file(CLI::App* cmd, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        CLI::Option* op = cmd->get_option_no_throw("--" + key);
        if (op == nullptr)
            throw std::invalid_argument("unknown config key '" + key + "' (line " +
                                        std::to_string(lineno) + ")");
        if (op->count() > 0) continue;  // flag overrides the file value
        op->add_result(value);
        op->run_callback();
    }
}

void add_common_flags(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--config", raw.config_path,
                    "flat key=value config file; flags take precedence");
    cmd->add_option("--lx", raw.cfg.lx, "lattice sites in x");
    cmd->add_option("--ly", raw.cfg.ly, "lattice sites in y");
    cmd->add_option("--layouts", raw.layout_names, "layouts to run (aos,soa,csoa,caosoa)")
        ->delimiter(',');
    cmd->add_option("--vl", raw.cfg.vls, "cluster lengths (power of two)")->delimiter(',');
    cmd->add_option("--workers", raw.cfg.workers, "worker counts")->delimiter(',');
    cmd->add_option("--seed", raw.cfg.seed, "random seed");
    cmd->add_option("--omega", raw.cfg.omega, "relaxation rate in (0,2)");
    cmd->add_option("--schedule", raw.schedule_name, "x-slice scheduling (dynamic|static)");
    cmd->add_option("--output,-o", raw.cfg.output, "output file (default stdout)");
}

void finish_parse(RawOptions& raw) {
    if (!raw.layout_names.empty()) {
        raw.cfg.layouts.clear();
        for (const std::string& name : raw.layout_names)
            raw.cfg.layouts.push_back(lbm::layout_from_string(name));
    }
    if (!raw.traffic_name.empty()) raw.cfg.traffic = lbm::traffic_from_string(raw.traffic_name);
    raw.cfg.schedule = lbm::schedule_from_string(raw.schedule_name);
    lbm::validate_config(raw.cfg);
    lbm::echo_config(std::cerr, raw.cfg);
}

std::unique_ptr<std::ofstream> open_output(const std::string& path, std::ostream*& out) {
    if (path.empty()) {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open output file: " + path);
    out = file.get();
    return file;
}

int run_validate(RawOptions& raw, CLI::App* cmd) {
    raw.cfg.mode = lbm::RunMode::Validate;
    // Bare `validate` runs the default suite: both stock geometries and the
    // full vl sweep.
    const bool geom_given = cmd->count("--lx") > 0 || cmd->count("--ly") > 0;
    if (cmd->count("--vl") == 0) raw.cfg.vls = {1, 2, 4, 8};
    finish_parse(raw);
    lbm::ValidationOptions vopts;
    if (geom_given) vopts.geometries = {{raw.cfg.lx, raw.cfg.ly}};
    vopts.vls = raw.cfg.vls;
    vopts.layouts = raw.cfg.layouts;
    vopts.steps = raw.cfg.steps;
    vopts.omega = raw.cfg.omega;
    vopts.seed = raw.cfg.seed;
    vopts.workers = raw.cfg.workers.front();
    vopts.schedule = raw.cfg.schedule;

    std::ostream* out = nullptr;
    const auto file = open_output(raw.cfg.output, out);
    const lbm::ValidationReport report = lbm::run_validation(vopts);
    lbm::print_report(*out, report);
    return report.pass ? 0 : 1;
}

int run_bench(RawOptions& raw) {
    raw.cfg.mode = lbm::RunMode::Bench;
    finish_parse(raw);
    std::ostream* out = nullptr;
    const auto file = open_output(raw.cfg.output, out);
    lbm::PowercapProvider provider;
    const auto reports = lbm::run_bench_matrix(raw.cfg, &provider, *out, std::cerr);
    lbm::write_trend_summary(std::cerr, reports);
    return 0;
}

int run_dump_model(const std::string& output) {
    std::ostream* out = nullptr;
    const auto file = open_output(output, out);
    lbm::write_model_table(*out, lbm::VelocityModel::d2q37());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"D2Q37 lattice Boltzmann layout benchmark"};
    app.require_subcommand(1);

    RawOptions raw;

    CLI::App* validate = app.add_subcommand("validate", "check kernels against the scalar reference");
    add_common_flags(validate, raw);
    validate->add_option("--steps", raw.cfg.steps, "full steps per configuration");

    CLI::App* bench = app.add_subcommand("bench", "run the benchmark matrix, emit CSV");
    add_common_flags(bench, raw);
    bench->add_option("--iterations", raw.cfg.iterations, "timed iterations per kernel");
    bench->add_option("--warmup", raw.cfg.warmup, "untimed warmup iterations");
    bench->add_option("--traffic", raw.traffic_name, "traffic accounting for GB/s (nt|rfo)");
    bench->add_flag("--nt-stores", raw.cfg.nt_stores, "streaming stores on propagate writes");
    bench->add_flag("--energy", raw.cfg.energy, "read energy counters around each kernel phase");
    bench->add_option("--flops-per-site", raw.cfg.flops_per_site,
                      "override the flops/site constant used for GF/s");

    std::string dump_output;
    CLI::App* dump = app.add_subcommand("dump-model", "write the population/weight table");
    dump->add_option("--output,-o", dump_output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (!raw.config_path.empty())
            apply_config_file(validate->parsed() ? validate : bench, raw.config_path);
        if (validate->parsed()) return run_validate(raw, validate);
        if (bench->parsed()) return run_bench(raw);
        return run_dump_model(dump_output);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
