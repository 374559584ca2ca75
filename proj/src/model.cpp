#include "lbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lbm {

namespace {

constexpr std::array<int, kShells> kShellNorms = {0, 1, 2, 4, 5, 8, 9, 10};

int shell_index(int norm2) {
    for (int s = 0; s < kShells; ++s)
        if (kShellNorms[s] == norm2) return s;
    return -1;
}

// E[x^k] for a zero-mean Gaussian with variance t0: (k-1)!! t0^(k/2), 0 for odd k.
double gauss_moment_1d(int k, double t0) {
    if (k % 2 != 0) return 0.0;
    double df = 1.0;
    for (int j = k - 1; j > 0; j -= 2) df *= j;
    return df * std::pow(t0, k / 2);
}

struct MomentCondition {
    int a;
    int b;
};

// Conditions solved as a linear system in the shell weights. The first eight
// conditions of the full moment set are rank-deficient as an 8x8 system; this
// subset (with the x^4 y^4 condition included) is nonsingular, and the x^8
// condition below closes the system via root finding in t0. At the root all
// nine conditions hold simultaneously.
constexpr std::array<MomentCondition, kShells> kSolveConds = {
    {{0, 0}, {2, 0}, {4, 0}, {2, 2}, {6, 0}, {4, 2}, {6, 2}, {4, 4}}};
constexpr MomentCondition kResidualCond = {8, 0};

using Mat8 = std::array<std::array<double, kShells>, kShells>;
using Vec8 = std::array<double, kShells>;

// Gaussian elimination with partial pivoting.
Vec8 solve_linear8(Mat8 a, Vec8 b) {
    for (int col = 0; col < kShells; ++col) {
        int piv = col;
        for (int r = col + 1; r < kShells; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) throw std::runtime_error("singular moment system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < kShells; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < kShells; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec8 x{};
    for (int r = kShells - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < kShells; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

double ipow(int base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

std::array<IVec2, kNpop> build_velocity_set() {
    std::vector<IVec2> v;
    for (int cx = -kHaloExtent; cx <= kHaloExtent; ++cx) {
        for (int cy = -kHaloExtent; cy <= kHaloExtent; ++cy) {
            if (shell_index(cx * cx + cy * cy) >= 0) v.push_back({cx, cy});
        }
    }
    std::sort(v.begin(), v.end(), [](const IVec2& a, const IVec2& b) {
        const int na = a.x * a.x + a.y * a.y;
        const int nb = b.x * b.x + b.y * b.y;
        if (na != nb) return na < nb;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    if (v.size() != kNpop) throw std::logic_error("velocity set is not 37 vectors");
    std::array<IVec2, kNpop> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

WeightSolution derive_weights(const std::array<IVec2, kNpop>& velocities) {
    // Shell sums S[s](a,b) = sum over shell members of cx^a cy^b.
    auto shell_sum = [&](int s, int a, int b) {
        double acc = 0.0;
        for (const IVec2& c : velocities) {
            if (shell_index(c.x * c.x + c.y * c.y) == s) acc += ipow(c.x, a) * ipow(c.y, b);
        }
        return acc;
    };

    Mat8 a{};
    for (int r = 0; r < kShells; ++r)
        for (int s = 0; s < kShells; ++s) a[r][s] = shell_sum(s, kSolveConds[r].a, kSolveConds[r].b);
    Vec8 res_row{};
    for (int s = 0; s < kShells; ++s) res_row[s] = shell_sum(s, kResidualCond.a, kResidualCond.b);

    auto weights_at = [&](double t0) {
        Vec8 b{};
        for (int r = 0; r < kShells; ++r)
            b[r] = gauss_moment_1d(kSolveConds[r].a, t0) * gauss_moment_1d(kSolveConds[r].b, t0);
        return solve_linear8(a, b);
    };
    auto residual = [&](double t0) {
        const Vec8 w = weights_at(t0);
        double r = -gauss_moment_1d(kResidualCond.a, t0) * gauss_moment_1d(kResidualCond.b, t0);
        for (int s = 0; s < kShells; ++s) r += res_row[s] * w[s];
        return r;
    };

    // Grid scan for a sign change, then bisection.
    constexpr double kLo = 0.1, kHi = 2.0, kStep = 1e-3;
    double prev_t = kLo;
    double prev_r = residual(kLo);
    for (double t = kLo + kStep; t < kHi; t += kStep) {
        const double r = residual(t);
        if (std::signbit(r) != std::signbit(prev_r)) {
            double lo = prev_t, hi = t;
            double rlo = prev_r;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double rm = residual(mid);
                if (std::abs(rm) < 1e-14) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(rm) == std::signbit(rlo)) {
                    lo = mid;
                    rlo = rm;
                } else {
                    hi = mid;
                }
            }
            const double t0 = 0.5 * (lo + hi);
            Vec8 w = weights_at(t0);
            if (std::all_of(w.begin(), w.end(), [](double x) { return x > 0.0; })) {
                // Pin the zeroth moment: rescale, then absorb the remaining
                // rounding dust into the rest-velocity weight, which appears
                // in no other moment condition.
                auto canonical_sum = [&] {
                    double sum = 0.0;
                    for (const IVec2& c : velocities) sum += w[shell_index(c.x * c.x + c.y * c.y)];
                    return sum;
                };
                for (int pass = 0; pass < 4; ++pass) {
                    const double sum = canonical_sum();
                    if (sum == 1.0) break;
                    for (double& x : w) x /= sum;
                }
                for (int pass = 0; pass < 4; ++pass) {
                    const double sum = canonical_sum();
                    if (sum == 1.0) break;
                    w[0] -= sum - 1.0;
                }
                return {w, t0};
            }
        }
        prev_t = t;
        prev_r = r;
    }
    throw std::runtime_error("no all-positive quadrature weights for t0 in (0.1, 2.0)");
}

VelocityModel::VelocityModel() {
    velocities_ = build_velocity_set();
    const WeightSolution sol = derive_weights(velocities_);
    t0_ = sol.t0;
    shell_weights_ = sol.shell_weights;
    for (int i = 0; i < kNpop; ++i) {
        const IVec2 c = velocities_[i];
        shell_of_[i] = shell_index(c.x * c.x + c.y * c.y);
        weights_[i] = sol.shell_weights[shell_of_[i]];
        cxd_[i] = c.x;
        cyd_[i] = c.y;
        c2d_[i] = double(c.x * c.x + c.y * c.y);
    }

    // Hermite polynomial values of variance t0 per velocity, folded with the
    // 1/(n! t0^n) expansion factors and the tensor-symmetry multiplicities.
    const double t0 = t0_;
    for (int i = 0; i < kNpop; ++i) {
        const double cx = cxd_[i], cy = cyd_[i];
        const double cx2 = cx * cx, cy2 = cy * cy;
        const double h_x = cx;
        const double h_y = cy;
        const double h_xx = cx2 - t0;
        const double h_xy = cx * cy;
        const double h_yy = cy2 - t0;
        const double h_xxx = cx * cx2 - 3.0 * t0 * cx;
        const double h_xxy = cx2 * cy - t0 * cy;
        const double h_xyy = cx * cy2 - t0 * cx;
        const double h_yyy = cy * cy2 - 3.0 * t0 * cy;
        const double h_xxxx = cx2 * cx2 - 6.0 * t0 * cx2 + 3.0 * t0 * t0;
        const double h_xxxy = cx * cx2 * cy - 3.0 * t0 * cx * cy;
        const double h_xxyy = cx2 * cy2 - t0 * (cx2 + cy2) + t0 * t0;
        const double h_xyyy = cx * cy * cy2 - 3.0 * t0 * cx * cy;
        const double h_yyyy = cy2 * cy2 - 6.0 * t0 * cy2 + 3.0 * t0 * t0;

        const double t2 = t0 * t0, t3 = t2 * t0, t4 = t2 * t2;
        auto& g = eq_table_[i];
        g[0] = h_x / t0;
        g[1] = h_y / t0;
        g[2] = h_xx / (2.0 * t2);
        g[3] = h_xy / t2;  // multiplicity 2 of 2! t0^2
        g[4] = h_yy / (2.0 * t2);
        g[5] = h_xxx / (6.0 * t3);
        g[6] = h_xxy / (2.0 * t3);  // multiplicity 3 of 3! t0^3
        g[7] = h_xyy / (2.0 * t3);
        g[8] = h_yyy / (6.0 * t3);
        g[9] = h_xxxx / (24.0 * t4);
        g[10] = h_xxxy / (6.0 * t4);  // multiplicity 4 of 4! t0^4
        g[11] = h_xxyy / (4.0 * t4);  // multiplicity 6 of 4! t0^4
        g[12] = h_xyyy / (6.0 * t4);
        g[13] = h_yyyy / (24.0 * t4);
    }
}

const VelocityModel& VelocityModel::d2q37() {
    static const VelocityModel model;
    return model;
}

Macros VelocityModel::macros_of(const double* f) const {
    double rho = 0.0;
    for (int i = 0; i < kNpop; ++i) rho += f[i];
    if (!(rho > 0.0)) throw NonPhysicalError("non-positive density");
    double jx = 0.0;
    for (int i = 0; i < kNpop; ++i) jx += cxd_[i] * f[i];
    double jy = 0.0;
    for (int i = 0; i < kNpop; ++i) jy += cyd_[i] * f[i];
    double e2 = 0.0;
    for (int i = 0; i < kNpop; ++i) e2 += c2d_[i] * f[i];
    const double inv_rho = 1.0 / rho;
    const double ux = jx * inv_rho;
    const double uy = jy * inv_rho;
    const double temp = 0.5 * (e2 * inv_rho - (ux * ux + uy * uy));
    return {rho, ux, uy, temp};
}

void VelocityModel::equilibrium(const Macros& m, double* f_eq) const {
    const double ux = m.ux, uy = m.uy;
    const double dt = m.temp - t0_;  // thermal deviation (theta - 1) t0
    const double ux2 = ux * ux, uy2 = uy * uy, uxuy = ux * uy;
    const double dt3 = 3.0 * dt;
    const double dt6 = 6.0 * dt;
    const double dt2 = dt * dt;
    const double dt2x3 = 3.0 * dt2;

    // Hermite coefficients of the thermal Maxwellian, divided by rho.
    double mom[kEqMoments];
    mom[0] = ux;
    mom[1] = uy;
    mom[2] = ux2 + dt;
    mom[3] = uxuy;
    mom[4] = uy2 + dt;
    mom[5] = ux * (ux2 + dt3);
    mom[6] = uy * (ux2 + dt);
    mom[7] = ux * (uy2 + dt);
    mom[8] = uy * (uy2 + dt3);
    mom[9] = ux2 * (ux2 + dt6) + dt2x3;
    mom[10] = uxuy * (ux2 + dt3);
    mom[11] = uxuy * uxuy + dt * (ux2 + uy2) + dt2;
    mom[12] = uxuy * (uy2 + dt3);
    mom[13] = uy2 * (uy2 + dt6) + dt2x3;

    for (int i = 0; i < kNpop; ++i) {
        const double* g = eq_table_[i].data();
        double s = 1.0;
        for (int k = 0; k < kEqMoments; ++k) s += g[k] * mom[k];
        f_eq[i] = m.rho * weights_[i] * s;
    }
}

void VelocityModel::collide_site(const double* f, double omega, double* out) const {
    const Macros m = macros_of(f);
    double f_eq[kNpop];
    equilibrium(m, f_eq);
    for (int i = 0; i < kNpop; ++i) out[i] = f[i] + omega * (f_eq[i] - f[i]);
}

void write_model_table(std::ostream& os, const VelocityModel& model) {
    char line[128];
    std::snprintf(line, sizeof line, "# D2Q37 populations: index cx cy weight\n");
    os << line;
    std::snprintf(line, sizeof line, "# t0 = %.17g\n", model.t0());
    os << line;
    for (int i = 0; i < kNpop; ++i) {
        const IVec2 c = model.velocities()[i];
        std::snprintf(line, sizeof line, "%d %d %d %.17g\n", i, c.x, c.y, model.weights()[i]);
        os << line;
    }
}

ModelTable read_model_table(std::istream& is) {
    ModelTable table{};
    std::array<bool, kNpop> seen{};
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        int idx = -1, cx = 0, cy = 0;
        double w = 0.0;
        if (!(row >> idx >> cx >> cy >> w)) throw std::runtime_error("malformed model table row: " + line);
        if (idx < 0 || idx >= kNpop) throw std::runtime_error("model table index out of range");
        if (seen[idx]) throw std::runtime_error("duplicate model table index");
        seen[idx] = true;
        table.velocities[idx] = {cx, cy};
        table.weights[idx] = w;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::runtime_error("model table is missing rows");
    return table;
}

}  // namespace lbm
