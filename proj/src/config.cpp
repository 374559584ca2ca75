#include "lbm/config.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace lbm {

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::Validate: return "validate";
        case RunMode::Bench: return "bench";
        case RunMode::DumpModel: return "dump-model";
    }
    return "?";
}

TrafficModel effective_traffic(const RunConfig& c) {
    if (c.traffic) return *c.traffic;
    return c.nt_stores ? TrafficModel::NonTemporal : TrafficModel::ReadForOwnership;
}

double effective_flops_per_site(const RunConfig& c) {
    return c.flops_per_site > 0.0 ? c.flops_per_site : double(VelocityModel::kCollideFlopsPerSite);
}

void validate_config(RunConfig& c) {
    if (c.workers.empty()) {
        const unsigned hw = std::thread::hardware_concurrency();
        c.workers = {int(hw == 0 ? 1 : hw)};
    }
    if (c.lx < 1 || c.ly < 1) throw std::invalid_argument("lattice extents must be >= 1");
    if (c.layouts.empty()) throw std::invalid_argument("at least one layout required");
    if (c.vls.empty()) throw std::invalid_argument("at least one vl required");
    for (const int vl : c.vls) {
        if (vl < 1 || (vl & (vl - 1)) != 0)
            throw std::invalid_argument("vl must be a positive power of two");
        if (c.ly % vl != 0) throw std::invalid_argument("ly divisible by vl");
        if (c.ly / vl < kHaloExtent)
            throw std::invalid_argument("lane strip shorter than its halo (ly/vl < 3)");
    }
    for (const int w : c.workers)
        if (w < 1) throw std::invalid_argument("worker counts must be >= 1");
    if (c.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (c.warmup < 0) throw std::invalid_argument("warmup must be >= 0");
    if (c.steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (!(c.omega > 0.0 && c.omega < 2.0)) throw std::invalid_argument("omega must be in (0, 2)");
    if (c.flops_per_site < 0.0) throw std::invalid_argument("flops-per-site must be positive");
}

void echo_config(std::ostream& os, const RunConfig& c) {
    os << "mode=" << to_string(c.mode) << "\n";
    os << "lx=" << c.lx << "\nly=" << c.ly << "\n";
    os << "layouts=";
    for (std::size_t i = 0; i < c.layouts.size(); ++i)
        os << (i ? "," : "") << to_string(c.layouts[i]);
    os << "\nvl=";
    for (std::size_t i = 0; i < c.vls.size(); ++i) os << (i ? "," : "") << c.vls[i];
    os << "\nworkers=";
    for (std::size_t i = 0; i < c.workers.size(); ++i) os << (i ? "," : "") << c.workers[i];
    os << "\niterations=" << c.iterations << "\nwarmup=" << c.warmup << "\nsteps=" << c.steps
       << "\nomega=" << c.omega << "\ntraffic=" << to_string(effective_traffic(c))
       << "\nnt_stores=" << (c.nt_stores ? 1 : 0) << "\nenergy=" << (c.energy ? 1 : 0)
       << "\nflops_per_site=" << effective_flops_per_site(c) << "\nseed=" << c.seed
       << "\nschedule=" << to_string(c.schedule)
       << "\noutput=" << (c.output.empty() ? "-" : c.output) << "\n";
}

}  // namespace lbm
