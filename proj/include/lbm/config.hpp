#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lbm/metrics.hpp"
#include "lbm/thread_pool.hpp"

namespace lbm {

enum class RunMode { Validate, Bench, DumpModel };

const char* to_string(RunMode m);

struct RunConfig {
    RunMode mode = RunMode::Bench;
    int lx = 256;
    int ly = 1024;
    std::vector<LayoutKind> layouts = {LayoutKind::AoS, LayoutKind::SoA, LayoutKind::CSoA,
                                       LayoutKind::CAoSoA};
    std::vector<int> vls = {8};
    std::vector<int> workers;  // defaulted to hardware concurrency in validate_config
    int iterations = 50;
    int warmup = 5;
    int steps = 10;  // validate mode
    double omega = 1.0;
    std::optional<TrafficModel> traffic;  // defaults to match nt_stores
    bool nt_stores = false;
    bool energy = false;
    std::string output;  // empty = stdout
    std::uint64_t seed = 12345;
    double flops_per_site = 0.0;  // 0 = the model's own collide op count
    Schedule schedule = Schedule::Dynamic;
};

/// Resolved traffic model (explicit choice, else nt when nt_stores is on).
TrafficModel effective_traffic(const RunConfig& c);

double effective_flops_per_site(const RunConfig& c);

/// Normalizes defaults and rejects invalid combinations with a message naming
/// the violated constraint (throws std::invalid_argument).
void validate_config(RunConfig& c);

/// One key=value line per effective setting.
void echo_config(std::ostream& os, const RunConfig& c);

}  // namespace lbm
