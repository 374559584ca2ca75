#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lbm/layout.hpp"

namespace lbm {

/// Layout-independent lattice snapshot over the halo-free domain, in SoA
/// canonical order: population planes, then x columns, then y.
struct CanonicalLattice {
    int lx = 0;
    int ly = 0;
    int npop = 0;
    std::vector<double> values;

    std::size_t index(int x, int y, int p) const {
        return (std::size_t(p) * lx + x) * ly + y;
    }
    double& at(int x, int y, int p) { return values[index(x, y, p)]; }
    double at(int x, int y, int p) const { return values[index(x, y, p)]; }
};

CanonicalLattice make_canonical(int lx, int ly, int npop = kNpop);

CanonicalLattice to_canonical(const Field& field);
void from_canonical(const CanonicalLattice& canon, Field& field);

/// On-disk format: 32-byte header (8-byte magic "LBDUMP01", u64 lx, ly, npop,
/// little-endian) followed by the values as little-endian 64-bit floats.
void save_dump(const std::filesystem::path& path, const CanonicalLattice& canon);
CanonicalLattice load_dump(const std::filesystem::path& path);

}  // namespace lbm
