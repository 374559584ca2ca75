#pragma once

#include <array>
#include <cstddef>

#include "lbm/lattice.hpp"
#include "lbm/thread_pool.hpp"

namespace lbm {

/// Pull-scheme address deltas, one per population: reading at off[p] relative
/// to a site's own slot fetches the value at (x - cx_p, y - cy_p). Cluster
/// granularity for the clustered layouts, element granularity for AoS/SoA.
/// off[0] (the rest velocity) is always 0.
struct OffsetTable {
    std::array<std::ptrdiff_t, kNpop> off{};
};

OffsetTable build_offset_table(const Descriptor& desc, const VelocityModel& model);

struct KernelOptions {
    Schedule schedule = Schedule::Dynamic;
    bool nt_stores = false;  // streaming stores on propagate writes (clustered layouts)
};

/// Fills every ghost slot with the periodic image of the physical site it
/// maps to: x ghost columns mirror the opposite edge, and each lane strip's
/// top/bottom halo rows hold the wrapped rows of the neighboring strips.
void halo_exchange(Field& field);

/// nxt[r][p] = prv[r - c_p][p] for every physical site r: pure copies, no
/// arithmetic. Requires halo_exchange(prv) first.
void propagate(const Field& prv, Field& nxt, const OffsetTable& offsets, ThreadPool& pool,
               const KernelOptions& opts = {});

/// Per-site BGK relaxation of src into dst; sites are independent and every
/// path gathers populations in canonical order before calling the shared
/// collide_site, so results are identical bit for bit across layouts,
/// schedules and worker counts.
void collide(const Field& src, Field& dst, const VelocityModel& model, double omega,
             ThreadPool& pool, const KernelOptions& opts = {});

/// One full update: halo_exchange(prv), propagate(prv -> nxt),
/// collide(nxt -> prv), time_step++.
void step(LatticeState& state, const VelocityModel& model, double omega, ThreadPool& pool,
          const KernelOptions& opts = {});

}  // namespace lbm
