#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>

namespace lbm {

inline constexpr int kNpop = 37;
inline constexpr int kShells = 8;
inline constexpr int kHaloExtent = 3;

struct IVec2 {
    int x = 0;
    int y = 0;
    friend bool operator==(const IVec2&, const IVec2&) = default;
};

/// Per-site macroscopic fields (pressure is rho*temp, derived, never stored).
struct Macros {
    double rho = 0.0;
    double ux = 0.0;
    double uy = 0.0;
    double temp = 0.0;
};

struct NonPhysicalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All integer 2-vectors with squared norm in {0,1,2,4,5,8,9,10}, in canonical
/// order: sorted by squared norm, then x, then y. Exactly 37 of them, none
/// reaching further than 3 lattice hops per component.
std::array<IVec2, kNpop> build_velocity_set();

struct WeightSolution {
    std::array<double, kShells> shell_weights{};  // one per shell, norm-ordered
    double t0 = 0.0;
};

/// Gauss-type quadrature weights on the 37-point stencil: one weight per
/// norm shell plus the lattice temperature t0, chosen so that all velocity
/// moments up to eighth order match those of a 2-D Gaussian with variance t0.
/// Throws std::runtime_error if no all-positive solution exists in
/// t0 in (0.1, 2.0).
WeightSolution derive_weights(const std::array<IVec2, kNpop>& velocities);

class VelocityModel {
  public:
    /// The D2Q37 model singleton (velocity set + moment-matched weights).
    static const VelocityModel& d2q37();

    const std::array<IVec2, kNpop>& velocities() const { return velocities_; }
    const std::array<double, kNpop>& weights() const { return weights_; }
    double t0() const { return t0_; }
    int halo_extent() const { return kHaloExtent; }
    int shell_of(int i) const { return shell_of_[i]; }
    const std::array<double, kShells>& shell_weights() const { return shell_weights_; }

    /// Density, velocity and temperature of one site. Reductions run in
    /// canonical population order so results are reproducible bit for bit.
    /// Throws NonPhysicalError if the density is not positive.
    Macros macros_of(const double* f) const;

    /// Fourth-order thermal Hermite equilibrium. Caller guarantees
    /// m.rho > 0 and m.temp > 0.
    void equilibrium(const Macros& m, double* f_eq) const;

    /// BGK relaxation: out_i = f_i + omega * (f_eq_i - f_i).
    /// Conserves density, momentum and energy up to rounding.
    void collide_site(const double* f, double omega, double* out) const;

    /// Arithmetic operations (add/sub/mul/div) per site in collide_site,
    /// counted from the implementation: 268 in macros_of, 33 + 37*30 in
    /// equilibrium, 111 in the relaxation loop. Default flops/site for GF/s
    /// figures; the bench harness accepts an override.
    static constexpr int kCollideFlopsPerSite = 1522;

    static constexpr int kEqMoments = 14;

  private:
    VelocityModel();

    std::array<IVec2, kNpop> velocities_{};
    std::array<double, kNpop> weights_{};
    std::array<int, kNpop> shell_of_{};
    std::array<double, kShells> shell_weights_{};
    double t0_ = 0.0;

    // Precomputed per-velocity data for the hot loops.
    std::array<double, kNpop> cxd_{};  // velocity components as doubles
    std::array<double, kNpop> cyd_{};
    std::array<double, kNpop> c2d_{};  // cx^2 + cy^2
    // Hermite polynomial values (variance t0) folded with 1/(n! t0^n) and the
    // tensor-symmetry multiplicities, one row per velocity.
    std::array<std::array<double, kEqMoments>, kNpop> eq_table_{};
};

/// Plain-text model table: one "index cx cy weight" row per population,
/// weights with 17 significant digits; '#' lines are comments.
void write_model_table(std::ostream& os, const VelocityModel& model);

struct ModelTable {
    std::array<IVec2, kNpop> velocities{};
    std::array<double, kNpop> weights{};
};

/// Parses a table written by write_model_table. Throws std::runtime_error on
/// malformed input.
ModelTable read_model_table(std::istream& is);

}  // namespace lbm
