#include "lbm/layout.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace lbm {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

void check_geometry(LayoutKind kind, const Geometry& g) {
    if (g.lx < 1 || g.ly < 1) throw std::invalid_argument("lattice extents must be positive");
    if (g.hx < 0 || g.hy < 0) throw std::invalid_argument("halo widths must be non-negative");
    if (kind == LayoutKind::CSoA || kind == LayoutKind::CAoSoA) {
        if (!is_pow2(g.vl)) throw std::invalid_argument("vl must be a power of two");
        if (g.ly % g.vl != 0) throw std::invalid_argument("ly divisible by vl");
        if (g.ly / g.vl < g.hy)
            throw std::invalid_argument("lane strip shorter than its halo (ly/vl < hy)");
    }
}

void check_range(SiteCoord c, const Geometry& g, int npop) {
    if (c.x < 0 || c.x >= g.lx || c.y < 0 || c.y >= g.ly || c.p < 0 || c.p >= npop)
        throw std::out_of_range("site coordinate out of range");
}

}  // namespace

const char* to_string(LayoutKind kind) {
    switch (kind) {
        case LayoutKind::AoS: return "aos";
        case LayoutKind::SoA: return "soa";
        case LayoutKind::CSoA: return "csoa";
        case LayoutKind::CAoSoA: return "caosoa";
    }
    return "?";
}

LayoutKind layout_from_string(std::string_view name) {
    if (name == "aos") return LayoutKind::AoS;
    if (name == "soa") return LayoutKind::SoA;
    if (name == "csoa") return LayoutKind::CSoA;
    if (name == "caosoa") return LayoutKind::CAoSoA;
    throw std::invalid_argument("unknown layout: " + std::string(name));
}

Descriptor::Descriptor(LayoutKind kind, Geometry geom, int npop) : kind_(kind), geom_(geom), npop_(npop) {
    if (npop_ < 1) throw std::invalid_argument("npop must be positive");
    check_geometry(kind, geom);
    evl_ = clustered() ? geom_.vl : 1;
    strip_ = geom_.ly / evl_;
    sy_ = strip_ + 2 * geom_.hy;
    px_ = geom_.lx + 2 * geom_.hx;
    cplane_ = std::size_t(px_) * sy_;
    elems_ = cplane_ * npop_ * evl_;
}

std::size_t addr_aos(SiteCoord c, const Geometry& g, int npop) {
    check_range(c, g, npop);
    return (std::size_t(c.x + g.hx) * (g.ly + 2 * g.hy) + (c.y + g.hy)) * npop + c.p;
}

std::size_t addr_soa(SiteCoord c, const Geometry& g, int npop) {
    check_range(c, g, npop);
    const std::size_t plane = std::size_t(g.lx + 2 * g.hx) * (g.ly + 2 * g.hy);
    return std::size_t(c.p) * plane + std::size_t(c.x + g.hx) * (g.ly + 2 * g.hy) + (c.y + g.hy);
}

ClusterAddr addr_csoa(SiteCoord c, const Geometry& g, int npop) {
    check_range(c, g, npop);
    check_geometry(LayoutKind::CSoA, g);
    const int strip = g.ly / g.vl;
    const int sy = strip + 2 * g.hy;
    const std::size_t cplane = std::size_t(g.lx + 2 * g.hx) * sy;
    const int k = c.y / strip;
    const int j = c.y % strip + g.hy;
    return {std::size_t(c.p) * cplane + std::size_t(c.x + g.hx) * sy + j, k};
}

ClusterAddr addr_caosoa(SiteCoord c, const Geometry& g, int npop) {
    check_range(c, g, npop);
    check_geometry(LayoutKind::CAoSoA, g);
    const int strip = g.ly / g.vl;
    const int sy = strip + 2 * g.hy;
    const int k = c.y / strip;
    const int j = c.y % strip + g.hy;
    return {(std::size_t(c.x + g.hx) * sy + j) * npop + c.p, k};
}

void AlignedBuffer::Free::operator()(double* p) const { std::free(p); }

AlignedBuffer::AlignedBuffer(std::size_t n) : n_(n) {
    if (n == 0) return;
    std::size_t bytes = n * sizeof(double);
    bytes = (bytes + Descriptor::kAlignment - 1) / Descriptor::kAlignment * Descriptor::kAlignment;
    double* p = static_cast<double*>(std::aligned_alloc(Descriptor::kAlignment, bytes));
    if (p == nullptr) throw std::bad_alloc();
    std::memset(p, 0, bytes);
    ptr_.reset(p);
}

Field convert(const Field& src, const Descriptor& to) {
    const Geometry& a = src.desc().geom();
    const Geometry& b = to.geom();
    if (a.lx != b.lx || a.ly != b.ly || a.hx != b.hx || a.hy != b.hy || a.vl != b.vl ||
        src.desc().npop() != to.npop())
        throw std::invalid_argument("convert: geometry mismatch");
    Field dst(to);
    for (int x = 0; x < a.lx; ++x)
        for (int y = 0; y < a.ly; ++y)
            for (int p = 0; p < src.desc().npop(); ++p) dst.at(x, y, p) = src.at(x, y, p);
    return dst;
}

}  // namespace lbm
