#include "lbm/lattice.hpp"

#include <cmath>
#include <random>

namespace lbm {

CanonicalLattice make_random_lattice(int lx, int ly, std::uint64_t seed) {
    CanonicalLattice c = make_canonical(lx, ly);
    const VelocityModel& model = VelocityModel::d2q37();
    std::mt19937_64 rng(seed);
    const auto u01 = [&] { return double(rng() >> 11) * 0x1.0p-53; };  // uniform in [0, 1)
    double f_eq[kNpop];
    for (int x = 0; x < lx; ++x)
        for (int y = 0; y < ly; ++y) {
            const Macros m{0.9 + 0.2 * u01(), -0.05 + 0.1 * u01(), -0.05 + 0.1 * u01(),
                           model.t0() * (0.9 + 0.2 * u01())};
            model.equilibrium(m, f_eq);
            for (int p = 0; p < kNpop; ++p)
                c.at(x, y, p) = f_eq[p] * (1.0 + 2e-3 * (u01() - 0.5));
        }
    return c;
}

CanonicalLattice make_equilibrium_lattice(int lx, int ly, const VelocityModel& model,
                                          const Macros& m) {
    CanonicalLattice c = make_canonical(lx, ly);
    double f_eq[kNpop];
    model.equilibrium(m, f_eq);
    for (int x = 0; x < lx; ++x)
        for (int y = 0; y < ly; ++y)
            for (int p = 0; p < kNpop; ++p) c.at(x, y, p) = f_eq[p];
    return c;
}

CanonicalLattice make_shear_lattice(int lx, int ly, const VelocityModel& model, double amp,
                                    double temp) {
    CanonicalLattice c = make_canonical(lx, ly);
    double f_eq[kNpop];
    for (int y = 0; y < ly; ++y) {
        const double ux = amp * std::sin(2.0 * M_PI * y / ly);
        model.equilibrium({1.0, ux, 0.0, temp}, f_eq);
        for (int x = 0; x < lx; ++x)
            for (int p = 0; p < kNpop; ++p) c.at(x, y, p) = f_eq[p];
    }
    return c;
}

}  // namespace lbm
