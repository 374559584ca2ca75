#include "lbm/validation.hpp"

#include <bit>
#include <ostream>

#include "lbm/lattice.hpp"

namespace lbm {

OracleLattice::OracleLattice(int lx, int ly)
    : lx_(lx), ly_(ly), v_(std::size_t(lx) * ly * kNpop, 0.0) {}

void oracle_propagate(const OracleLattice& in, OracleLattice& out,
                      std::span<const IVec2> velocities) {
    const int lx = in.lx(), ly = in.ly();
    for (int x = 0; x < lx; ++x) {
        for (int y = 0; y < ly; ++y) {
            for (std::size_t p = 0; p < velocities.size(); ++p) {
                const int xs = ((x - velocities[p].x) % lx + lx) % lx;
                const int ys = ((y - velocities[p].y) % ly + ly) % ly;
                out.at(x, y, int(p)) = in.at(xs, ys, int(p));
            }
        }
    }
}

void oracle_collide(const OracleLattice& in, OracleLattice& out, const VelocityModel& model,
                    double omega) {
    const int lx = in.lx(), ly = in.ly();
    double f[kNpop], fpost[kNpop];
    for (int x = 0; x < lx; ++x) {
        for (int y = 0; y < ly; ++y) {
            for (int p = 0; p < kNpop; ++p) f[p] = in.at(x, y, p);
            model.collide_site(f, omega, fpost);
            for (int p = 0; p < kNpop; ++p) out.at(x, y, p) = fpost[p];
        }
    }
}

CanonicalLattice oracle_to_canonical(const OracleLattice& o) {
    CanonicalLattice c = make_canonical(o.lx(), o.ly());
    for (int p = 0; p < kNpop; ++p)
        for (int x = 0; x < o.lx(); ++x)
            for (int y = 0; y < o.ly(); ++y)
                c.values[(std::size_t(p) * o.lx() + x) * o.ly() + y] = o.at(x, y, p);
    return c;
}

void oracle_from_canonical(const CanonicalLattice& canon, OracleLattice& o) {
    for (int p = 0; p < canon.npop; ++p)
        for (int x = 0; x < canon.lx; ++x)
            for (int y = 0; y < canon.ly; ++y)
                o.at(x, y, p) = canon.values[(std::size_t(p) * canon.lx + x) * canon.ly + y];
}

namespace {

std::optional<Divergence> first_divergence(const CanonicalLattice& got,
                                           const CanonicalLattice& want) {
    for (int x = 0; x < want.lx; ++x)
        for (int y = 0; y < want.ly; ++y)
            for (int p = 0; p < want.npop; ++p) {
                const double a = got.at(x, y, p);
                const double b = want.at(x, y, p);
                if (std::bit_cast<std::uint64_t>(a) != std::bit_cast<std::uint64_t>(b))
                    return Divergence{x, y, p, a, b};
            }
    return std::nullopt;
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& opts) {
    const VelocityModel& model = VelocityModel::d2q37();
    ValidationReport report;
    report.pass = true;
    ThreadPool pool(opts.workers);

    for (const auto& [lx, ly] : opts.geometries) {
        const CanonicalLattice initial =
            make_random_lattice(lx, ly, opts.seed ^ (std::uint64_t(lx) << 32 | std::uint64_t(ly)));

        // Advance the scalar reference.
        OracleLattice cur(lx, ly), tmp(lx, ly);
        oracle_from_canonical(initial, cur);
        for (int s = 0; s < opts.steps; ++s) {
            oracle_propagate(cur, tmp, model.velocities());
            oracle_collide(tmp, cur, model, opts.omega);
        }
        const CanonicalLattice want = oracle_to_canonical(cur);

        for (const LayoutKind layout : opts.layouts) {
            for (const int vl : opts.vls) {
                CaseResult result;
                result.lx = lx;
                result.ly = ly;
                result.layout = layout;
                result.vl = vl;

                Geometry g{lx, ly};
                g.vl = vl;
                LatticeState state{Descriptor(layout, g)};
                state.load(initial);
                OffsetTable offsets = build_offset_table(state.desc(), model);
                if (opts.corrupt_population >= 0)
                    offsets.off[opts.corrupt_population] += 1;
                KernelOptions kopts;
                kopts.schedule = opts.schedule;
                for (int s = 0; s < opts.steps; ++s) {
                    halo_exchange(state.prv);
                    propagate(state.prv, state.nxt, offsets, pool, kopts);
                    collide(state.nxt, state.prv, model, opts.omega, pool, kopts);
                }

                result.divergence = first_divergence(state.dump(), want);
                result.pass = !result.divergence.has_value();
                report.pass = report.pass && result.pass;
                report.cases.push_back(result);
            }
        }
    }
    return report;
}

void print_report(std::ostream& os, const ValidationReport& report) {
    for (const CaseResult& c : report.cases) {
        os << (c.pass ? "pass" : "FAIL") << "  " << c.lx << "x" << c.ly << "  " << to_string(c.layout)
           << "  vl=" << c.vl;
        if (c.divergence) {
            const Divergence& d = *c.divergence;
            os << "  first divergence at (x=" << d.x << ", y=" << d.y << ", p=" << d.p
               << "): got " << d.got << ", want " << d.want;
        }
        os << "\n";
    }
    os << (report.pass ? "validation passed" : "validation FAILED") << " (" << report.cases.size()
       << " cases)\n";
}

}  // namespace lbm
