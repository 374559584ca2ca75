#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>

#include "lbm/model.hpp"

namespace lbm {

enum class LayoutKind { AoS, SoA, CSoA, CAoSoA };

const char* to_string(LayoutKind kind);
LayoutKind layout_from_string(std::string_view name);  // throws std::invalid_argument

/// Lattice extents and padding. vl is the cluster length for the clustered
/// layouts; AoS and SoA ignore it. strip = ly / vl is the height of the
/// contiguous Y-range owned by one cluster lane.
struct Geometry {
    int lx = 0;
    int ly = 0;
    int hx = kHaloExtent;
    int hy = kHaloExtent;
    int vl = 1;
};

/// Storage coordinates of one physical lattice value.
struct SiteCoord {
    int x = 0;
    int y = 0;
    int p = 0;
};

struct ClusterAddr {
    std::size_t cluster = 0;
    int lane = 0;
};

/// Immutable layout descriptor: index maps for one of the four layouts.
///
/// Storage includes halos. Each lane strip carries its own hy-deep top and
/// bottom halo rows (height sy = strip + 2 hy), and hx ghost columns pad x on
/// both sides, so a y-shift is a single additive constant per population for
/// every lane. For AoS/SoA the single "lane" spans the whole column.
class Descriptor {
  public:
    static constexpr int kAlignment = 64;

    Descriptor(LayoutKind kind, Geometry geom, int npop = kNpop);

    LayoutKind kind() const { return kind_; }
    const Geometry& geom() const { return geom_; }
    int npop() const { return npop_; }

    bool clustered() const { return kind_ == LayoutKind::CSoA || kind_ == LayoutKind::CAoSoA; }
    int evl() const { return evl_; }        // effective cluster length (1 for AoS/SoA)
    int strip() const { return strip_; }    // ly / evl
    int sy() const { return sy_; }          // strip + 2 hy (padded rows per lane)
    int px() const { return px_; }          // lx + 2 hx (padded columns)
    std::size_t elems() const { return elems_; }

    int lane_of(int y) const { return y / strip_; }
    int row_of(int y) const { return y % strip_ + geom_.hy; }

    /// Element index of (population p, padded column X, padded row j, lane k).
    std::size_t elem(int p, int X, int j, int k) const {
        std::size_t cluster;
        switch (kind_) {
            case LayoutKind::AoS:
            case LayoutKind::CAoSoA:
                cluster = (std::size_t(X) * sy_ + j) * npop_ + p;
                break;
            default:  // SoA, CSoA: population-major planes
                cluster = std::size_t(p) * cplane_ + std::size_t(X) * sy_ + j;
                break;
        }
        return cluster * evl_ + k;
    }

    /// Element index of a physical site value (maps through the halo padding).
    std::size_t site_elem(int x, int y, int p) const {
        return elem(p, x + geom_.hx, row_of(y), lane_of(y));
    }

    std::size_t cplane() const { return cplane_; }

  private:
    LayoutKind kind_;
    Geometry geom_;
    int npop_;
    int evl_;
    int strip_;
    int sy_;
    int px_;
    std::size_t cplane_;  // clusters per population plane (SoA/CSoA)
    std::size_t elems_;
};

/// Range-checked address maps, one per layout. The clustered ones return the
/// (cluster, lane) pair; element index = cluster * vl + lane.
std::size_t addr_aos(SiteCoord c, const Geometry& g, int npop = kNpop);
std::size_t addr_soa(SiteCoord c, const Geometry& g, int npop = kNpop);
ClusterAddr addr_csoa(SiteCoord c, const Geometry& g, int npop = kNpop);
ClusterAddr addr_caosoa(SiteCoord c, const Geometry& g, int npop = kNpop);

/// 64-byte aligned, zero-initialized array of doubles.
class AlignedBuffer {
  public:
    AlignedBuffer() = default;
    explicit AlignedBuffer(std::size_t n);

    double* data() { return ptr_.get(); }
    const double* data() const { return ptr_.get(); }
    std::size_t size() const { return n_; }
    double& operator[](std::size_t i) { return ptr_[i]; }
    double operator[](std::size_t i) const { return ptr_[i]; }

  private:
    struct Free {
        void operator()(double* p) const;
    };
    std::unique_ptr<double[], Free> ptr_;
    std::size_t n_ = 0;
};

/// One population field stored in a chosen layout, halos included.
class Field {
  public:
    explicit Field(Descriptor desc) : desc_(desc), data_(desc.elems()) {}

    const Descriptor& desc() const { return desc_; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    double& at(int x, int y, int p) { return data_[desc_.site_elem(x, y, p)]; }
    double at(int x, int y, int p) const { return data_[desc_.site_elem(x, y, p)]; }

  private:
    Descriptor desc_;
    AlignedBuffer data_;
};

/// Re-stores every physical value of src in the layout of `to`. Pure index
/// remapping, bitwise-value preserving. Throws std::invalid_argument if the
/// geometries or population counts differ.
Field convert(const Field& src, const Descriptor& to);

}  // namespace lbm
