#include "lbm/bench_matrix.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <ostream>

#include "lbm/kernels.hpp"
#include "lbm/lattice.hpp"

namespace lbm {

namespace {

BenchReport make_cell_report(const RunConfig& c, const char* kernel, LayoutKind layout, int vl,
                             int workers) {
    BenchReport r;
    r.kernel = kernel;
    r.layout = layout;
    r.vl = vl;
    r.workers = workers;
    r.lx = c.lx;
    r.ly = c.ly;
    r.iterations = c.iterations;
    r.warmup = c.warmup;
    r.traffic = effective_traffic(c);
    r.flops_per_site = effective_flops_per_site(c);
    return r;
}

}  // namespace

std::vector<BenchReport> run_bench_matrix(const RunConfig& config, EnergyProvider* provider,
                                          std::ostream& csv, std::ostream& log) {
    const VelocityModel& model = VelocityModel::d2q37();
    const bool energy_columns = config.energy && provider != nullptr && provider->available();
    if (config.energy && !energy_columns)
        log << "energy counters unavailable on this host; energy columns omitted\n";

    std::vector<BenchReport> reports;
    write_csv_header(csv, energy_columns);

    KernelOptions kopts;
    kopts.schedule = config.schedule;
    kopts.nt_stores = config.nt_stores;

    for (const LayoutKind layout : config.layouts) {
        for (const int vl : config.vls) {
            std::optional<LatticeState> state;
            OffsetTable offsets;
            std::string setup_error;
            try {
                Geometry g{config.lx, config.ly};
                g.vl = vl;
                state.emplace(Descriptor(layout, g));
                state->load(make_shear_lattice(config.lx, config.ly, model, 0.02, model.t0()));
                offsets = build_offset_table(state->desc(), model);
            } catch (const std::exception& e) {
                setup_error = std::string("error: ") + e.what();
            }

            for (const int workers : config.workers) {
                if (!setup_error.empty()) {
                    // The whole cell group is unusable; record it and move on.
                    for (const char* name : {"propagate", "collide", "step"}) {
                        BenchReport r = make_cell_report(config, name, layout, vl, workers);
                        r.status = setup_error;
                        write_csv_row(csv, r, energy_columns);
                        reports.push_back(std::move(r));
                    }
                    continue;
                }
                ThreadPool pool(workers);
                struct KernelCase {
                    const char* name;
                    std::function<void()> body;
                };
                halo_exchange(state->prv);
                const KernelCase kernels[] = {
                    {"propagate", [&] { propagate(state->prv, state->nxt, offsets, pool, kopts); }},
                    {"collide",
                     [&] { collide(state->nxt, state->prv, model, config.omega, pool, kopts); }},
                    {"step", [&] { step(*state, model, config.omega, pool, kopts); }},
                };
                for (const KernelCase& k : kernels) {
                    BenchReport r = make_cell_report(config, k.name, layout, vl, workers);
                    try {
                        // Warm up before the energy window so the per-iteration
                        // figures cover exactly the timed iterations.
                        for (int w = 0; w < config.warmup; ++w) k.body();
                        std::vector<EnergySample> before, after;
                        if (energy_columns) before = provider->read();
                        const TimingResult timing = time_kernel(k.body, config.iterations, 0);
                        if (energy_columns) after = provider->read();
                        r.t_iter_s = timing.median_s;
                        r.t_min_s = timing.min_s;
                        r.clock_res_ns = timing.clock_res_ns;
                        finalize_metrics(r);
                        if (energy_columns && !before.empty() && before.size() == after.size()) {
                            r.energy = energy_to_solution(before, after, config.iterations);
                            if (r.energy->range_warning)
                                log << "warning: energy window longer than half the counter range\n";
                        }
                    } catch (const std::exception& e) {
                        r.status = std::string("error: ") + e.what();
                    }
                    write_csv_row(csv, r, energy_columns);
                    reports.push_back(std::move(r));
                }
            }
        }
    }
    return reports;
}

void write_trend_summary(std::ostream& os, const std::vector<BenchReport>& reports) {
    std::map<LayoutKind, std::vector<double>> prop_gbps, coll_mlups;
    for (const BenchReport& r : reports) {
        if (r.status != "ok") continue;
        if (r.kernel == "propagate") prop_gbps[r.layout].push_back(r.gbps);
        if (r.kernel == "collide") coll_mlups[r.layout].push_back(r.mlups);
    }
    if (prop_gbps.empty() && coll_mlups.empty()) return;

    auto best = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    os << "host trend summary (best over the matrix):\n";
    for (const auto& [layout, v] : prop_gbps)
        os << "  propagate " << to_string(layout) << ": " << best(v) << " GB/s\n";
    for (const auto& [layout, v] : coll_mlups)
        os << "  collide   " << to_string(layout) << ": " << best(v) << " MLUPS\n";

    auto ratio = [&](std::map<LayoutKind, std::vector<double>>& m, LayoutKind num,
                     LayoutKind den) -> double {
        if (!m.count(num) || !m.count(den)) return 0.0;
        return best(m[num]) / best(m[den]);
    };
    const double p = ratio(prop_gbps, LayoutKind::CSoA, LayoutKind::AoS);
    if (p > 0.0) os << "  propagate csoa/aos bandwidth ratio: " << p << "\n";
    const double c = ratio(coll_mlups, LayoutKind::CAoSoA, LayoutKind::SoA);
    if (c > 0.0) os << "  collide caosoa/soa throughput ratio: " << c << "\n";
}

}  // namespace lbm
