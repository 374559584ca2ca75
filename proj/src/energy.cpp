#include "lbm/energy.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

namespace lbm {

namespace {

std::uint64_t monotonic_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

bool read_u64_file(const std::filesystem::path& p, std::uint64_t& out) {
    std::ifstream is(p);
    if (!is) return false;
    return bool(is >> out);
}

bool read_line_file(const std::filesystem::path& p, std::string& out) {
    std::ifstream is(p);
    if (!is) return false;
    return bool(std::getline(is, out));
}

}  // namespace

std::filesystem::path PowercapProvider::default_root() {
    if (const char* env = std::getenv("LBMBENCH_POWERCAP_ROOT")) return env;
    return "/sys/class/powercap";
}

PowercapProvider::PowercapProvider(std::filesystem::path root) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec)) return;
    for (const auto& entry : std::filesystem::directory_iterator(root, ec)) {
        if (ec) break;
        const std::string dirname = entry.path().filename().string();
        if (dirname.rfind("intel-rapl", 0) != 0) continue;
        std::string name;
        if (!read_line_file(entry.path() / "name", name)) continue;
        EnergyDomain domain;
        if (name.rfind("package", 0) == 0)
            domain = EnergyDomain::Package;
        else if (name == "dram")
            domain = EnergyDomain::Dram;
        else
            continue;
        std::uint64_t range = 0;
        if (!read_u64_file(entry.path() / "max_energy_range_uj", range) || range == 0) continue;
        std::uint64_t probe = 0;
        if (!read_u64_file(entry.path() / "energy_uj", probe)) continue;
        domains_.push_back({domain, entry.path() / "energy_uj", range});
    }
}

std::vector<EnergySample> PowercapProvider::read() {
    std::vector<EnergySample> samples;
    samples.reserve(domains_.size());
    for (const DomainFiles& d : domains_) {
        EnergySample s;
        s.domain = d.domain;
        s.max_range_uj = d.max_range_uj;
        s.timestamp_ns = monotonic_ns();
        if (!read_u64_file(d.energy_file, s.energy_uj)) continue;
        samples.push_back(s);
    }
    return samples;
}

std::vector<EnergySample> ScriptedProvider::read() {
    if (frames_.empty()) return {};
    std::vector<EnergySample> s = std::move(frames_.front());
    frames_.pop_front();
    return s;
}

std::vector<EnergySample> read_counters() {
    PowercapProvider provider;
    return provider.read();
}

EnergyReport energy_to_solution(const std::vector<EnergySample>& before,
                                const std::vector<EnergySample>& after, int iterations) {
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (before.size() != after.size() || before.empty())
        throw std::invalid_argument("mismatched energy sample sets");

    EnergyReport report;
    std::uint64_t t0 = UINT64_MAX, t1 = 0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const EnergySample& b = before[i];
        const EnergySample& a = after[i];
        if (a.domain != b.domain) throw std::invalid_argument("energy domain order mismatch");
        if (a.timestamp_ns <= b.timestamp_ns)
            throw std::invalid_argument("energy samples not time-ordered");
        std::uint64_t delta_uj =
            a.energy_uj >= b.energy_uj ? a.energy_uj - b.energy_uj
                                       : a.energy_uj + (b.max_range_uj - b.energy_uj);
        if (b.max_range_uj > 0 && delta_uj > b.max_range_uj / 2) report.range_warning = true;
        const double joules = double(delta_uj) * 1e-6 / iterations;
        if (b.domain == EnergyDomain::Package)
            report.joules_package += joules;
        else
            report.joules_dram += joules;
        t0 = std::min(t0, b.timestamp_ns);
        t1 = std::max(t1, a.timestamp_ns);
    }
    report.joules_total = report.joules_package + report.joules_dram;
    report.duration_s = double(t1 - t0) * 1e-9;
    report.avg_power_w = report.joules_total * iterations / report.duration_s;
    return report;
}

}  // namespace lbm
