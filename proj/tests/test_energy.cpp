#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lbm/energy.hpp"

using namespace lbm;

namespace {

EnergySample sample(EnergyDomain d, std::uint64_t uj, std::uint64_t range, std::uint64_t t_ns) {
    return {d, uj, range, t_ns};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

struct FakeSysfs {
    std::filesystem::path root;

    FakeSysfs() {
        root = std::filesystem::temp_directory_path() / "lbm_powercap_test";
        std::filesystem::remove_all(root);
        std::filesystem::create_directories(root / "intel-rapl:0");
        std::filesystem::create_directories(root / "intel-rapl:0:0");
        write_file(root / "intel-rapl:0" / "name", "package-0\n");
        write_file(root / "intel-rapl:0" / "energy_uj", "1000000\n");
        write_file(root / "intel-rapl:0" / "max_energy_range_uj", "262143328850\n");
        write_file(root / "intel-rapl:0:0" / "name", "dram\n");
        write_file(root / "intel-rapl:0:0" / "energy_uj", "500000\n");
        write_file(root / "intel-rapl:0:0" / "max_energy_range_uj", "65712999613\n");
    }
    ~FakeSysfs() { std::filesystem::remove_all(root); }
};

}  // namespace

TEST_CASE("energy_to_solution: identical samples give zero joules") {
    const std::vector<EnergySample> before = {sample(EnergyDomain::Package, 5000, 100000, 100)};
    const std::vector<EnergySample> after = {sample(EnergyDomain::Package, 5000, 100000, 2100)};
    const EnergyReport r = energy_to_solution(before, after, 10);
    CHECK(r.joules_package == 0.0);
    CHECK(r.joules_total == 0.0);
}

TEST_CASE("energy_to_solution: simple per-iteration arithmetic") {
    // 10 J package + 2 J dram over 100 iterations -> 0.12 J/iter.
    const std::vector<EnergySample> before = {
        sample(EnergyDomain::Package, 1000000, std::uint64_t(1) << 40, 0),
        sample(EnergyDomain::Dram, 2000000, std::uint64_t(1) << 40, 0)};
    const std::vector<EnergySample> after = {
        sample(EnergyDomain::Package, 11000000, std::uint64_t(1) << 40, 1000000000),
        sample(EnergyDomain::Dram, 4000000, std::uint64_t(1) << 40, 1000000000)};
    const EnergyReport r = energy_to_solution(before, after, 100);
    CHECK(r.joules_package == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(r.joules_dram == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(r.joules_total == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("energy_to_solution: wrap correction") {
    const std::uint64_t range = 262143328850;
    const std::vector<EnergySample> before = {sample(EnergyDomain::Package, range - 1, range, 0)};
    const std::vector<EnergySample> after = {sample(EnergyDomain::Package, 1, range, 1000)};
    const EnergyReport r = energy_to_solution(before, after, 1);
    CHECK(r.joules_package == doctest::Approx(2e-6).epsilon(1e-12));
    CHECK(!r.range_warning);
}

TEST_CASE("energy_to_solution: oversized window sets the range warning") {
    const std::uint64_t range = 1000000;
    const std::vector<EnergySample> before = {sample(EnergyDomain::Package, 0, range, 0)};
    const std::vector<EnergySample> after = {sample(EnergyDomain::Package, 600000, range, 1000)};
    CHECK(energy_to_solution(before, after, 1).range_warning);
}

TEST_CASE("energy_to_solution: 50 W constant synthetic source") {
    // 90 J package + 10 J dram over exactly 2 s.
    const std::uint64_t range = std::uint64_t(1) << 40;
    const std::vector<EnergySample> before = {sample(EnergyDomain::Package, 0, range, 0),
                                              sample(EnergyDomain::Dram, 0, range, 0)};
    const std::vector<EnergySample> after = {
        sample(EnergyDomain::Package, 90000000, range, 2000000000),
        sample(EnergyDomain::Dram, 10000000, range, 2000000000)};
    const EnergyReport r = energy_to_solution(before, after, 1);
    CHECK(r.duration_s == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.avg_power_w == doctest::Approx(50.0).epsilon(0.01));
}

TEST_CASE("energy_to_solution: precondition violations") {
    const std::uint64_t range = 1000;
    const std::vector<EnergySample> b = {sample(EnergyDomain::Package, 1, range, 100)};
    const std::vector<EnergySample> a = {sample(EnergyDomain::Package, 2, range, 200)};
    CHECK_THROWS_AS((void)energy_to_solution(b, a, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)energy_to_solution(a, b, 1), std::invalid_argument);  // reversed times
    CHECK_THROWS_AS((void)energy_to_solution({}, {}, 1), std::invalid_argument);
    const std::vector<EnergySample> wrong = {sample(EnergyDomain::Dram, 2, range, 200)};
    CHECK_THROWS_AS((void)energy_to_solution(b, wrong, 1), std::invalid_argument);
}

TEST_CASE("scripted provider replays frames in order") {
    ScriptedProvider p({{sample(EnergyDomain::Package, 10, 100, 1)},
                        {sample(EnergyDomain::Package, 20, 100, 2)}});
    CHECK(p.available());
    CHECK(p.read()[0].energy_uj == 10);
    CHECK(p.read()[0].energy_uj == 20);
    CHECK(p.read().empty());
}

TEST_CASE("powercap provider: reads a sysfs-style tree") {
    FakeSysfs fake;
    PowercapProvider p(fake.root);
    REQUIRE(p.available());
    auto samples = p.read();
    REQUIRE(samples.size() == 2);

    int packages = 0, drams = 0;
    for (const EnergySample& s : samples) {
        if (s.domain == EnergyDomain::Package) {
            ++packages;
            CHECK(s.energy_uj == 1000000);
            CHECK(s.max_range_uj == 262143328850);
        } else {
            ++drams;
            CHECK(s.energy_uj == 500000);
        }
        CHECK(s.timestamp_ns > 0);
    }
    CHECK(packages == 1);
    CHECK(drams == 1);

    // Counters move between reads.
    write_file(fake.root / "intel-rapl:0" / "energy_uj", "1250000\n");
    auto second = p.read();
    const EnergySample* pkg = nullptr;
    for (const EnergySample& s : second)
        if (s.domain == EnergyDomain::Package) pkg = &s;
    REQUIRE(pkg != nullptr);
    CHECK(pkg->energy_uj == 1250000);
}

TEST_CASE("powercap provider: unsupported root degrades gracefully") {
    PowercapProvider p("/nonexistent/powercap/root");
    CHECK(!p.available());
    CHECK(p.read().empty());
}

TEST_CASE("powercap provider: environment variable overrides the root") {
    FakeSysfs fake;
    setenv("LBMBENCH_POWERCAP_ROOT", fake.root.c_str(), 1);
    CHECK(PowercapProvider::default_root() == fake.root);
    unsetenv("LBMBENCH_POWERCAP_ROOT");
}
