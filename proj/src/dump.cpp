#include "lbm/dump.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lbm {

static_assert(std::endian::native == std::endian::little,
              "dump I/O assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'L', 'B', 'D', 'U', 'M', 'P', '0', '1'};
}

CanonicalLattice make_canonical(int lx, int ly, int npop) {
    CanonicalLattice c;
    c.lx = lx;
    c.ly = ly;
    c.npop = npop;
    c.values.assign(std::size_t(lx) * ly * npop, 0.0);
    return c;
}

CanonicalLattice to_canonical(const Field& field) {
    const Geometry& g = field.desc().geom();
    CanonicalLattice c = make_canonical(g.lx, g.ly, field.desc().npop());
    for (int p = 0; p < c.npop; ++p)
        for (int x = 0; x < g.lx; ++x)
            for (int y = 0; y < g.ly; ++y) c.at(x, y, p) = field.at(x, y, p);
    return c;
}

void from_canonical(const CanonicalLattice& canon, Field& field) {
    const Geometry& g = field.desc().geom();
    if (canon.lx != g.lx || canon.ly != g.ly || canon.npop != field.desc().npop())
        throw std::invalid_argument("from_canonical: dimension mismatch");
    for (int p = 0; p < canon.npop; ++p)
        for (int x = 0; x < g.lx; ++x)
            for (int y = 0; y < g.ly; ++y) field.at(x, y, p) = canon.at(x, y, p);
}

void save_dump(const std::filesystem::path& path, const CanonicalLattice& canon) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open dump file for writing: " + path.string());
    os.write(kMagic, sizeof kMagic);
    const std::uint64_t dims[3] = {std::uint64_t(canon.lx), std::uint64_t(canon.ly),
                                   std::uint64_t(canon.npop)};
    os.write(reinterpret_cast<const char*>(dims), sizeof dims);
    os.write(reinterpret_cast<const char*>(canon.values.data()),
             std::streamsize(canon.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("short write to dump file: " + path.string());
}

CanonicalLattice load_dump(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open dump file: " + path.string());
    char magic[8];
    std::uint64_t dims[3];
    is.read(magic, sizeof magic);
    is.read(reinterpret_cast<char*>(dims), sizeof dims);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("not a lattice dump: " + path.string());
    CanonicalLattice c = make_canonical(int(dims[0]), int(dims[1]), int(dims[2]));
    is.read(reinterpret_cast<char*>(c.values.data()),
            std::streamsize(c.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated dump file: " + path.string());
    return c;
}

}  // namespace lbm
