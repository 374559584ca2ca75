#include "lbm/kernels.hpp"

#include <stdexcept>

#if defined(__SSE2__)
#include <immintrin.h>
#endif

namespace lbm {

namespace {

// Streaming copy of one cluster (dst aligned to vl*8 bytes by construction).
inline void copy_cluster(double* dst, const double* src, int vl, bool nt) {
#if defined(__AVX__)
    if (nt && vl % 4 == 0) {
        for (int k = 0; k < vl; k += 4) _mm256_stream_pd(dst + k, _mm256_load_pd(src + k));
        return;
    }
#endif
#if defined(__SSE2__)
    if (nt && vl % 2 == 0) {
        for (int k = 0; k < vl; k += 2) _mm_stream_pd(dst + k, _mm_load_pd(src + k));
        return;
    }
#endif
    (void)nt;
    for (int k = 0; k < vl; ++k) dst[k] = src[k];
}

inline void store_fence() {
#if defined(__SSE2__)
    _mm_sfence();
#endif
}

void propagate_aos(const double* in, double* out, const Descriptor& d, const OffsetTable& off,
                   ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        for (int j = g.hy; j < g.hy + g.ly; ++j) {
            const std::size_t base = (std::size_t(X) * sy + j) * kNpop;
            for (int p = 0; p < kNpop; ++p) out[base + p] = in[base + p + off.off[p]];
        }
    });
}

void propagate_soa(const double* in, double* out, const Descriptor& d, const OffsetTable& off,
                   ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    const std::size_t cplane = d.cplane();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        for (int p = 0; p < kNpop; ++p) {
            const std::size_t col = p * cplane + std::size_t(X) * sy;
            const std::ptrdiff_t o = off.off[p];
            for (int j = g.hy; j < g.hy + g.ly; ++j) out[col + j] = in[col + j + o];
        }
    });
}

void propagate_csoa(const double* in, double* out, const Descriptor& d, const OffsetTable& off,
                    ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    const int vl = d.evl();
    const int strip = d.strip();
    const std::size_t cplane = d.cplane();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        for (int p = 0; p < kNpop; ++p) {
            const std::size_t col = p * cplane + std::size_t(X) * sy;
            const std::ptrdiff_t o = off.off[p] * vl;
            for (int j = g.hy; j < g.hy + strip; ++j) {
                double* dst = out + (col + j) * vl;
                const double* src = in + (col + j) * vl + o;
                copy_cluster(dst, src, vl, opts.nt_stores);
            }
        }
        if (opts.nt_stores) store_fence();
    });
}

void propagate_caosoa(const double* in, double* out, const Descriptor& d, const OffsetTable& off,
                      ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    const int vl = d.evl();
    const int strip = d.strip();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        for (int j = g.hy; j < g.hy + strip; ++j) {
            const std::size_t row = (std::size_t(X) * sy + j) * kNpop;
            for (int p = 0; p < kNpop; ++p) {
                double* dst = out + (row + p) * vl;
                const double* src = in + (row + p + off.off[p]) * vl;
                copy_cluster(dst, src, vl, opts.nt_stores);
            }
        }
        if (opts.nt_stores) store_fence();
    });
}

void collide_aos(const double* in, double* out, const Descriptor& d, const VelocityModel& model,
                 double omega, ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        for (int j = g.hy; j < g.hy + g.ly; ++j) {
            const std::size_t base = (std::size_t(X) * sy + j) * kNpop;
            model.collide_site(in + base, omega, out + base);
        }
    });
}

void collide_soa(const double* in, double* out, const Descriptor& d, const VelocityModel& model,
                 double omega, ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    const std::size_t cplane = d.cplane();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        double f[kNpop], fpost[kNpop];
        for (int j = g.hy; j < g.hy + g.ly; ++j) {
            const std::size_t site = std::size_t(X) * sy + j;
            for (int p = 0; p < kNpop; ++p) f[p] = in[p * cplane + site];
            model.collide_site(f, omega, fpost);
            for (int p = 0; p < kNpop; ++p) out[p * cplane + site] = fpost[p];
        }
    });
}

void collide_csoa(const double* in, double* out, const Descriptor& d, const VelocityModel& model,
                  double omega, ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    const int vl = d.evl();
    const int strip = d.strip();
    const std::size_t cplane = d.cplane();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        double f[kNpop], fpost[kNpop];
        for (int j = g.hy; j < g.hy + strip; ++j) {
            const std::size_t site = std::size_t(X) * sy + j;
            for (int k = 0; k < vl; ++k) {
                for (int p = 0; p < kNpop; ++p) f[p] = in[(p * cplane + site) * vl + k];
                model.collide_site(f, omega, fpost);
                for (int p = 0; p < kNpop; ++p) out[(p * cplane + site) * vl + k] = fpost[p];
            }
        }
    });
}

void collide_caosoa(const double* in, double* out, const Descriptor& d, const VelocityModel& model,
                    double omega, ThreadPool& pool, const KernelOptions& opts) {
    const Geometry& g = d.geom();
    const int sy = d.sy();
    const int vl = d.evl();
    const int strip = d.strip();
    pool.parallel_for(0, g.lx, opts.schedule, [&](int x) {
        const int X = x + g.hx;
        double f[kNpop], fpost[kNpop];
        for (int j = g.hy; j < g.hy + strip; ++j) {
            const std::size_t row = (std::size_t(X) * sy + j) * kNpop;
            for (int k = 0; k < vl; ++k) {
                for (int p = 0; p < kNpop; ++p) f[p] = in[(row + p) * vl + k];
                model.collide_site(f, omega, fpost);
                for (int p = 0; p < kNpop; ++p) out[(row + p) * vl + k] = fpost[p];
            }
        }
    });
}

}  // namespace

OffsetTable build_offset_table(const Descriptor& desc, const VelocityModel& model) {
    if (desc.npop() != kNpop) throw std::invalid_argument("offset table needs the full model");
    if (desc.geom().hx < model.halo_extent() || desc.geom().hy < model.halo_extent())
        throw std::invalid_argument("halos narrower than the velocity reach");
    OffsetTable t;
    const int sy = desc.sy();
    for (int p = 0; p < kNpop; ++p) {
        const IVec2 c = model.velocities()[p];
        // Pull: read the value that streams here, i.e. the site at -c.
        std::ptrdiff_t delta = -std::ptrdiff_t(c.x) * sy - c.y;
        if (desc.kind() == LayoutKind::AoS || desc.kind() == LayoutKind::CAoSoA)
            delta *= kNpop;
        t.off[p] = delta;
    }
    return t;
}

void halo_exchange(Field& field) {
    const Descriptor& d = field.desc();
    const Geometry& g = d.geom();
    double* a = field.data();
    const int strip = d.strip();
    const int sy = d.sy();

    // Per-lane periodic y fill over the physical columns.
    for (int x = 0; x < g.lx; ++x) {
        const int X = x + g.hx;
        for (int p = 0; p < d.npop(); ++p) {
            for (int k = 0; k < d.evl(); ++k) {
                for (int h = 0; h < g.hy; ++h) {
                    const int jtop = h;                       // rows above the strip
                    const int ytop = ((k * strip + h - g.hy) % g.ly + g.ly) % g.ly;
                    a[d.elem(p, X, jtop, k)] = a[d.elem(p, X, d.row_of(ytop), d.lane_of(ytop))];
                    const int jbot = strip + g.hy + h;        // rows below the strip
                    const int ybot = ((k + 1) * strip + h) % g.ly;
                    a[d.elem(p, X, jbot, k)] = a[d.elem(p, X, d.row_of(ybot), d.lane_of(ybot))];
                }
            }
        }
    }

    // Ghost x columns copy entire padded columns (y halos included).
    for (int side = 0; side < 2; ++side) {
        for (int h = 0; h < g.hx; ++h) {
            const int X = side == 0 ? h : g.lx + g.hx + h;
            const int x = side == 0 ? h - g.hx : g.lx + h;  // physical x this ghost maps to
            const int xsrc = ((x % g.lx) + g.lx) % g.lx;
            const int Xs = xsrc + g.hx;
            for (int p = 0; p < d.npop(); ++p)
                for (int j = 0; j < sy; ++j)
                    for (int k = 0; k < d.evl(); ++k)
                        a[d.elem(p, X, j, k)] = a[d.elem(p, Xs, j, k)];
        }
    }
}

namespace {

void check_buffer_pair(const Field& src, const Field& dst) {
    if (&src == &dst) throw std::invalid_argument("kernel buffers must not alias");
    if (src.desc().kind() != dst.desc().kind() || src.size() != dst.size())
        throw std::invalid_argument("kernel buffers have mismatched descriptors");
}

}  // namespace

void propagate(const Field& prv, Field& nxt, const OffsetTable& offsets, ThreadPool& pool,
               const KernelOptions& opts) {
    const Descriptor& d = prv.desc();
    check_buffer_pair(prv, nxt);
    switch (d.kind()) {
        case LayoutKind::AoS: propagate_aos(prv.data(), nxt.data(), d, offsets, pool, opts); break;
        case LayoutKind::SoA: propagate_soa(prv.data(), nxt.data(), d, offsets, pool, opts); break;
        case LayoutKind::CSoA: propagate_csoa(prv.data(), nxt.data(), d, offsets, pool, opts); break;
        case LayoutKind::CAoSoA:
            propagate_caosoa(prv.data(), nxt.data(), d, offsets, pool, opts);
            break;
    }
}

void collide(const Field& src, Field& dst, const VelocityModel& model, double omega,
             ThreadPool& pool, const KernelOptions& opts) {
    const Descriptor& d = src.desc();
    check_buffer_pair(src, dst);
    switch (d.kind()) {
        case LayoutKind::AoS: collide_aos(src.data(), dst.data(), d, model, omega, pool, opts); break;
        case LayoutKind::SoA: collide_soa(src.data(), dst.data(), d, model, omega, pool, opts); break;
        case LayoutKind::CSoA:
            collide_csoa(src.data(), dst.data(), d, model, omega, pool, opts);
            break;
        case LayoutKind::CAoSoA:
            collide_caosoa(src.data(), dst.data(), d, model, omega, pool, opts);
            break;
    }
}

void step(LatticeState& state, const VelocityModel& model, double omega, ThreadPool& pool,
          const KernelOptions& opts) {
    const OffsetTable offsets = build_offset_table(state.desc(), model);
    halo_exchange(state.prv);
    propagate(state.prv, state.nxt, offsets, pool, opts);
    collide(state.nxt, state.prv, model, omega, pool, opts);
    ++state.time_step;
}

}  // namespace lbm
