#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lbm/dump.hpp"
#include "lbm/kernels.hpp"

namespace lbm {

/// Scalar reference lattice: a plain halo-free [x][y][p] array with explicit
/// modulo arithmetic. Deliberately shares no index helpers with the layout
/// machinery, so a divergence points at a layout or offset bug.
class OracleLattice {
  public:
    OracleLattice(int lx, int ly);

    int lx() const { return lx_; }
    int ly() const { return ly_; }

    double& at(int x, int y, int p) { return v_[(std::size_t(x) * ly_ + y) * kNpop + p]; }
    double at(int x, int y, int p) const { return v_[(std::size_t(x) * ly_ + y) * kNpop + p]; }

  private:
    int lx_;
    int ly_;
    std::vector<double> v_;
};

/// out[x][y][p] = in[(x - cx_p) mod lx][(y - cy_p) mod ly][p].
void oracle_propagate(const OracleLattice& in, OracleLattice& out,
                      std::span<const IVec2> velocities);

/// Independent loop nest applying the same collide_site in canonical order.
void oracle_collide(const OracleLattice& in, OracleLattice& out, const VelocityModel& model,
                    double omega);

CanonicalLattice oracle_to_canonical(const OracleLattice& o);
void oracle_from_canonical(const CanonicalLattice& canon, OracleLattice& o);

struct ValidationOptions {
    std::vector<std::pair<int, int>> geometries = {{16, 32}, {64, 128}};
    std::vector<int> vls = {1, 2, 4, 8};
    std::vector<LayoutKind> layouts = {LayoutKind::AoS, LayoutKind::SoA, LayoutKind::CSoA,
                                       LayoutKind::CAoSoA};
    int steps = 10;
    double omega = 1.0;
    std::uint64_t seed = 12345;
    int workers = 4;
    Schedule schedule = Schedule::Dynamic;
    /// Test hook: populations whose offset-table entry gets corrupted before
    /// the kernel runs (-1 disables). A correct comparison must then fail.
    int corrupt_population = -1;
};

struct Divergence {
    int x = 0;
    int y = 0;
    int p = 0;
    double got = 0.0;
    double want = 0.0;
};

struct CaseResult {
    int lx = 0;
    int ly = 0;
    LayoutKind layout = LayoutKind::AoS;
    int vl = 1;
    bool pass = false;
    std::optional<Divergence> divergence;
};

struct ValidationReport {
    std::vector<CaseResult> cases;
    bool pass = false;
};

/// Seeds a reproducible random state per geometry, advances both the oracle
/// and every (layout, vl) kernel configuration `steps` full steps, and
/// compares final dumps bit for bit.
ValidationReport run_validation(const ValidationOptions& opts);

void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace lbm
