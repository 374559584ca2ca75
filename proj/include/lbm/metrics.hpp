#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbm/energy.hpp"
#include "lbm/layout.hpp"

namespace lbm {

/// Memory transfers per element moved by propagate: streaming (nontemporal)
/// stores move each element twice (read + write); regular stores add the
/// read-for-ownership of the destination line.
enum class TrafficModel { NonTemporal, ReadForOwnership };

const char* to_string(TrafficModel m);
TrafficModel traffic_from_string(std::string_view name);  // throws std::invalid_argument

int transfers_per_element(TrafficModel m);  // 2 or 3

/// Million lattice-site updates per second. Throws std::invalid_argument on
/// non-positive time.
double mlups(int lx, int ly, double t_iter_s);

/// Effective bandwidth of one population sweep: lx*ly*npop*8*k / (t*1e9).
double propagate_gbps(int lx, int ly, int npop, double t_iter_s, TrafficModel model);

/// lx*ly*flops_per_site / (t*1e9).
double collide_gflops(int lx, int ly, double flops_per_site, double t_iter_s);

double median(std::vector<double> samples);  // throws on empty input

struct TimingResult {
    double median_s = 0.0;
    double min_s = 0.0;
    double clock_res_ns = 0.0;
    std::vector<double> samples_s;
};

/// Runs `warmup` untimed iterations, then times `iterations` calls with the
/// monotonic clock. Derived metrics use the median sample.
TimingResult time_kernel(const std::function<void()>& body, int iterations, int warmup);

struct BenchReport {
    std::string kernel;  // propagate | collide | step
    LayoutKind layout = LayoutKind::AoS;
    int vl = 1;
    int workers = 1;
    int lx = 0;
    int ly = 0;
    int iterations = 0;
    int warmup = 0;
    TrafficModel traffic = TrafficModel::ReadForOwnership;
    double flops_per_site = 0.0;
    double t_iter_s = 0.0;  // median
    double t_min_s = 0.0;
    double mlups = 0.0;
    double gbps = 0.0;
    double gflops = 0.0;
    double clock_res_ns = 0.0;
    std::optional<EnergyReport> energy;
    std::string status = "ok";
};

/// Buffer sweeps per kernel invocation (propagate and collide each move every
/// element once; a full step does both).
int sweeps_of(const std::string& kernel);

/// Fills mlups/gbps/gflops from the report's own timing and constants:
///   mlups  = lx*ly / (t*1e6)
///   gbps   = lx*ly*npop*8*k*sweeps / (t*1e9)
///   gflops = lx*ly*flops_per_site / (t*1e9), 0 for propagate.
void finalize_metrics(BenchReport& r);

/// CSV emission: fixed header, floats with 6 significant digits, energy
/// columns only when requested.
void write_csv_header(std::ostream& os, bool energy_columns);
void write_csv_row(std::ostream& os, const BenchReport& r, bool energy_columns);

inline constexpr int kCsvSchemaVersion = 1;

}  // namespace lbm
