#include "lbm/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lbm {

namespace {

using Clock = std::chrono::steady_clock;

double measure_clock_resolution_ns() {
    double best = 1e9;
    for (int i = 0; i < 64; ++i) {
        const auto a = Clock::now();
        auto b = Clock::now();
        while (b == a) b = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::nano>(b - a).count());
    }
    return best;
}

void check_time(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("iteration time must be positive");
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

const char* to_string(TrafficModel m) {
    return m == TrafficModel::NonTemporal ? "nt" : "rfo";
}

TrafficModel traffic_from_string(std::string_view name) {
    if (name == "nt") return TrafficModel::NonTemporal;
    if (name == "rfo") return TrafficModel::ReadForOwnership;
    throw std::invalid_argument("unknown traffic model: " + std::string(name));
}

int transfers_per_element(TrafficModel m) { return m == TrafficModel::NonTemporal ? 2 : 3; }

double mlups(int lx, int ly, double t_iter_s) {
    check_time(t_iter_s);
    return double(lx) * ly / (t_iter_s * 1e6);
}

double propagate_gbps(int lx, int ly, int npop, double t_iter_s, TrafficModel model) {
    check_time(t_iter_s);
    return double(lx) * ly * npop * 8.0 * transfers_per_element(model) / (t_iter_s * 1e9);
}

double collide_gflops(int lx, int ly, double flops_per_site, double t_iter_s) {
    check_time(t_iter_s);
    return double(lx) * ly * flops_per_site / (t_iter_s * 1e9);
}

double median(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("median of no samples");
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    if (n % 2 == 1) return samples[n / 2];
    return 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

TimingResult time_kernel(const std::function<void()>& body, int iterations, int warmup) {
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    for (int i = 0; i < warmup; ++i) body();
    TimingResult result;
    result.samples_s.reserve(iterations);
    for (int i = 0; i < iterations; ++i) {
        const auto t0 = Clock::now();
        body();
        const auto t1 = Clock::now();
        result.samples_s.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    result.median_s = median(result.samples_s);
    result.min_s = *std::min_element(result.samples_s.begin(), result.samples_s.end());
    result.clock_res_ns = measure_clock_resolution_ns();
    return result;
}

int sweeps_of(const std::string& kernel) { return kernel == "step" ? 2 : 1; }

void finalize_metrics(BenchReport& r) {
    r.mlups = mlups(r.lx, r.ly, r.t_iter_s);
    r.gbps = propagate_gbps(r.lx, r.ly, kNpop, r.t_iter_s, r.traffic) * sweeps_of(r.kernel);
    r.gflops = r.kernel == "propagate"
                   ? 0.0
                   : collide_gflops(r.lx, r.ly, r.flops_per_site, r.t_iter_s);
}

void write_csv_header(std::ostream& os, bool energy_columns) {
    os << "schema_version,kernel,layout,vl,workers,lx,ly,iterations,warmup,traffic_model,"
          "flops_per_site,t_iter_s,t_min_s,mlups,gbps,gflops,clock_res_ns";
    if (energy_columns) os << ",energy_pkg_j,energy_dram_j,energy_total_j,avg_power_w";
    os << ",status\n";
}

void write_csv_row(std::ostream& os, const BenchReport& r, bool energy_columns) {
    os << kCsvSchemaVersion << ',' << r.kernel << ',' << to_string(r.layout) << ',' << r.vl << ','
       << r.workers << ',' << r.lx << ',' << r.ly << ',' << r.iterations << ',' << r.warmup << ','
       << to_string(r.traffic) << ',' << fmt6(r.flops_per_site) << ',' << fmt6(r.t_iter_s) << ','
       << fmt6(r.t_min_s) << ',' << fmt6(r.mlups) << ',' << fmt6(r.gbps) << ',' << fmt6(r.gflops)
       << ',' << fmt6(r.clock_res_ns);
    if (energy_columns) {
        if (r.energy) {
            os << ',' << fmt6(r.energy->joules_package) << ',' << fmt6(r.energy->joules_dram)
               << ',' << fmt6(r.energy->joules_total) << ',' << fmt6(r.energy->avg_power_w);
        } else {
            os << ",,,,";
        }
    }
    os << ',' << r.status << '\n';
}

}  // namespace lbm
