#pragma once

#include <cstdint>

#include "lbm/dump.hpp"
#include "lbm/layout.hpp"

namespace lbm {

/// Double-buffered population storage. Within a step, propagate reads prv and
/// writes nxt; collide reads nxt and writes prv, so the state lives in prv
/// between steps. The buffers never alias.
struct LatticeState {
    explicit LatticeState(const Descriptor& desc) : prv(desc), nxt(desc) {}

    const Descriptor& desc() const { return prv.desc(); }

    void load(const CanonicalLattice& canon) { from_canonical(canon, prv); }
    CanonicalLattice dump() const { return to_canonical(prv); }

    Field prv;
    Field nxt;
    long time_step = 0;
};

/// Reproducible random physical state: per-site equilibrium at random
/// macroscopic fields (rho in 0.9..1.1, |u| <= 0.05, temp in 0.9..1.1 t0)
/// with a 0.1% multiplicative population perturbation, filled in x, y, p
/// order. The mapping from raw generator words is spelled out so values do
/// not depend on the standard library's distribution implementation.
CanonicalLattice make_random_lattice(int lx, int ly, std::uint64_t seed);

/// Uniform equilibrium at the given macroscopic state.
CanonicalLattice make_equilibrium_lattice(int lx, int ly, const VelocityModel& model,
                                          const Macros& m);

/// Equilibrium with a sinusoidal shear perturbation ux(y) = amp sin(2 pi y / ly)
/// at unit density and temperature temp.
CanonicalLattice make_shear_lattice(int lx, int ly, const VelocityModel& model, double amp,
                                    double temp);

}  // namespace lbm
