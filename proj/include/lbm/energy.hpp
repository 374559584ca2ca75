#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <vector>

namespace lbm {

enum class EnergyDomain { Package, Dram };

struct EnergySample {
    EnergyDomain domain = EnergyDomain::Package;
    std::uint64_t energy_uj = 0;      // cumulative counter, wraps at max_range_uj
    std::uint64_t max_range_uj = 0;
    std::uint64_t timestamp_ns = 0;   // monotonic, taken just before the read
};

/// Counter source. The OS-backed provider reads the power-capping sysfs
/// hierarchy; the scripted one replays canned samples for tests.
class EnergyProvider {
  public:
    virtual ~EnergyProvider() = default;
    virtual bool available() const = 0;
    /// One sample per available domain; empty when unsupported.
    virtual std::vector<EnergySample> read() = 0;
};

class PowercapProvider : public EnergyProvider {
  public:
    /// Root of the powercap tree; overridable for tests via the
    /// LBMBENCH_POWERCAP_ROOT environment variable.
    static std::filesystem::path default_root();

    explicit PowercapProvider(std::filesystem::path root = default_root());

    bool available() const override { return !domains_.empty(); }
    std::vector<EnergySample> read() override;

  private:
    struct DomainFiles {
        EnergyDomain domain;
        std::filesystem::path energy_file;
        std::uint64_t max_range_uj;
    };
    std::vector<DomainFiles> domains_;
};

class ScriptedProvider : public EnergyProvider {
  public:
    explicit ScriptedProvider(std::deque<std::vector<EnergySample>> frames)
        : frames_(std::move(frames)) {}

    bool available() const override { return !frames_.empty(); }
    std::vector<EnergySample> read() override;

  private:
    std::deque<std::vector<EnergySample>> frames_;
};

/// Reads the default OS-backed provider once; empty on unsupported hosts.
std::vector<EnergySample> read_counters();

struct EnergyReport {
    double joules_package = 0.0;  // per iteration
    double joules_dram = 0.0;
    double joules_total = 0.0;
    double avg_power_w = 0.0;
    double duration_s = 0.0;
    /// Set when a domain's delta exceeds half its wrap range; such a window
    /// is too long for single-wrap correction to be trustworthy.
    bool range_warning = false;
};

/// Per-domain counter deltas with single-wrap correction, divided by the
/// iteration count. Requires after timestamps beyond before's and
/// iterations >= 1; throws std::invalid_argument otherwise.
EnergyReport energy_to_solution(const std::vector<EnergySample>& before,
                                const std::vector<EnergySample>& after, int iterations);

}  // namespace lbm
