#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "lbm/bench_matrix.hpp"
#include "lbm/kernels.hpp"
#include "lbm/lattice.hpp"
#include "lbm/metrics.hpp"
#include "lbm/validation.hpp"

namespace py = pybind11;

namespace {

using lbm::kNpop;

py::array_t<double> populations_to_array(const double* src) {
    return py::array_t<double>(std::vector<py::ssize_t>{kNpop}, src);
}

py::array_t<double> canonical_to_array(const lbm::CanonicalLattice& c) {
    py::array_t<double> arr({c.npop, c.lx, c.ly});
    std::copy(c.values.begin(), c.values.end(), arr.mutable_data());
    return arr;
}

lbm::CanonicalLattice array_to_canonical(const py::array_t<double, py::array::c_style>& arr) {
    if (arr.ndim() != 3 || arr.shape(0) != kNpop)
        throw std::invalid_argument("expected an array of shape (37, lx, ly)");
    lbm::CanonicalLattice c = lbm::make_canonical(int(arr.shape(1)), int(arr.shape(2)));
    std::copy(arr.data(), arr.data() + arr.size(), c.values.begin());
    return c;
}

const double* site_populations(const py::array_t<double, py::array::c_style>& f) {
    if (f.ndim() != 1 || f.shape(0) != kNpop)
        throw std::invalid_argument("expected 37 populations");
    return f.data();
}

/// One lattice in a chosen layout plus its worker pool.
class Simulation {
  public:
    Simulation(const std::string& layout, int lx, int ly, int vl, int workers,
               const std::string& schedule)
        : desc_(lbm::layout_from_string(layout), make_geometry(lx, ly, vl)),
          state_(desc_),
          pool_(workers) {
        opts_.schedule = lbm::schedule_from_string(schedule);
        offsets_ = lbm::build_offset_table(desc_, lbm::VelocityModel::d2q37());
    }

    void load(const py::array_t<double, py::array::c_style>& arr) {
        state_.load(array_to_canonical(arr));
    }
    py::array_t<double> dump() const { return canonical_to_array(state_.dump()); }

    void init_random(std::uint64_t seed) {
        state_.load(lbm::make_random_lattice(desc_.geom().lx, desc_.geom().ly, seed));
    }
    void init_equilibrium(double rho, double ux, double uy, double temp) {
        state_.load(lbm::make_equilibrium_lattice(desc_.geom().lx, desc_.geom().ly,
                                                  lbm::VelocityModel::d2q37(),
                                                  {rho, ux, uy, temp}));
    }
    void init_shear(double amp, double temp) {
        state_.load(lbm::make_shear_lattice(desc_.geom().lx, desc_.geom().ly,
                                            lbm::VelocityModel::d2q37(), amp, temp));
    }

    void step(double omega, int n) {
        for (int i = 0; i < n; ++i)
            lbm::step(state_, lbm::VelocityModel::d2q37(), omega, pool_, opts_);
    }

    /// halo exchange + propagate, leaving the result as the current state.
    void propagate() {
        lbm::halo_exchange(state_.prv);
        lbm::propagate(state_.prv, state_.nxt, offsets_, pool_, opts_);
        std::swap(state_.prv, state_.nxt);
    }

    long time_step() const { return state_.time_step; }

  private:
    static lbm::Geometry make_geometry(int lx, int ly, int vl) {
        lbm::Geometry g{lx, ly};
        g.vl = vl;
        return g;
    }

    lbm::Descriptor desc_;
    lbm::LatticeState state_;
    lbm::ThreadPool pool_;
    lbm::KernelOptions opts_;
    lbm::OffsetTable offsets_;
};

py::dict validation_to_dict(const lbm::ValidationReport& report) {
    py::dict out;
    out["pass"] = report.pass;
    py::list cases;
    for (const lbm::CaseResult& c : report.cases) {
        py::dict d;
        d["lx"] = c.lx;
        d["ly"] = c.ly;
        d["layout"] = lbm::to_string(c.layout);
        d["vl"] = c.vl;
        d["pass"] = c.pass;
        if (c.divergence) {
            py::dict div;
            div["x"] = c.divergence->x;
            div["y"] = c.divergence->y;
            div["p"] = c.divergence->p;
            div["got"] = c.divergence->got;
            div["want"] = c.divergence->want;
            d["divergence"] = div;
        }
        cases.append(d);
    }
    out["cases"] = cases;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "D2Q37 lattice Boltzmann layout benchmark core";

    const lbm::VelocityModel& model = lbm::VelocityModel::d2q37();

    py::class_<lbm::VelocityModel, std::unique_ptr<lbm::VelocityModel, py::nodelete>>(m, "Model")
        .def_property_readonly("npop", [](const lbm::VelocityModel&) { return kNpop; })
        .def_property_readonly("t0", &lbm::VelocityModel::t0)
        .def_property_readonly("halo_extent", &lbm::VelocityModel::halo_extent)
        .def_property_readonly("velocities",
                               [](const lbm::VelocityModel& mdl) {
                                   py::array_t<int> arr({kNpop, 2});
                                   auto* p = arr.mutable_data();
                                   for (int i = 0; i < kNpop; ++i) {
                                       p[2 * i] = mdl.velocities()[i].x;
                                       p[2 * i + 1] = mdl.velocities()[i].y;
                                   }
                                   return arr;
                               })
        .def_property_readonly("weights",
                               [](const lbm::VelocityModel& mdl) {
                                   return populations_to_array(mdl.weights().data());
                               })
        .def("macros",
             [](const lbm::VelocityModel& mdl, const py::array_t<double, py::array::c_style>& f) {
                 const lbm::Macros mac = mdl.macros_of(site_populations(f));
                 return py::make_tuple(mac.rho, mac.ux, mac.uy, mac.temp);
             })
        .def("equilibrium",
             [](const lbm::VelocityModel& mdl, double rho, double ux, double uy, double temp) {
                 double buf[kNpop];
                 mdl.equilibrium({rho, ux, uy, temp}, buf);
                 return populations_to_array(buf);
             })
        .def("collide_site",
             [](const lbm::VelocityModel& mdl, const py::array_t<double, py::array::c_style>& f,
                double omega) {
                 double buf[kNpop];
                 mdl.collide_site(site_populations(f), omega, buf);
                 return populations_to_array(buf);
             })
        .def_readonly_static("collide_flops_per_site",
                             &lbm::VelocityModel::kCollideFlopsPerSite);

    m.def("model", []() -> const lbm::VelocityModel& { return lbm::VelocityModel::d2q37(); },
          py::return_value_policy::reference);

    py::class_<Simulation>(m, "Simulation")
        .def(py::init<const std::string&, int, int, int, int, const std::string&>(),
             py::arg("layout"), py::arg("lx"), py::arg("ly"), py::arg("vl") = 1,
             py::arg("workers") = 1, py::arg("schedule") = "dynamic")
        .def("load", &Simulation::load)
        .def("dump", &Simulation::dump)
        .def("init_random", &Simulation::init_random)
        .def("init_equilibrium", &Simulation::init_equilibrium, py::arg("rho") = 1.0,
             py::arg("ux") = 0.0, py::arg("uy") = 0.0, py::arg("temp") = model.t0())
        .def("init_shear", &Simulation::init_shear)
        .def("step", &Simulation::step, py::arg("omega") = 1.0, py::arg("n") = 1)
        .def("propagate", &Simulation::propagate)
        .def_property_readonly("time_step", &Simulation::time_step);

    m.def(
        "run_validation",
        [](const std::vector<std::pair<int, int>>& geometries, const std::vector<int>& vls,
           const std::vector<std::string>& layouts, int steps, double omega, std::uint64_t seed,
           int workers) {
            lbm::ValidationOptions opts;
            if (!geometries.empty()) opts.geometries = geometries;
            if (!vls.empty()) opts.vls = vls;
            if (!layouts.empty()) {
                opts.layouts.clear();
                for (const std::string& name : layouts)
                    opts.layouts.push_back(lbm::layout_from_string(name));
            }
            opts.steps = steps;
            opts.omega = omega;
            opts.seed = seed;
            opts.workers = workers;
            return validation_to_dict(lbm::run_validation(opts));
        },
        py::arg("geometries") = std::vector<std::pair<int, int>>{}, py::arg("vls") = std::vector<int>{},
        py::arg("layouts") = std::vector<std::string>{}, py::arg("steps") = 10,
        py::arg("omega") = 1.0, py::arg("seed") = 12345, py::arg("workers") = 2);

    m.def("mlups", &lbm::mlups, py::arg("lx"), py::arg("ly"), py::arg("t_iter_s"));
    m.def(
        "propagate_gbps",
        [](int lx, int ly, int npop, double t, const std::string& traffic) {
            return lbm::propagate_gbps(lx, ly, npop, t, lbm::traffic_from_string(traffic));
        },
        py::arg("lx"), py::arg("ly"), py::arg("npop"), py::arg("t_iter_s"),
        py::arg("traffic") = "nt");
    m.def("collide_gflops", &lbm::collide_gflops, py::arg("lx"), py::arg("ly"),
          py::arg("flops_per_site"), py::arg("t_iter_s"));

    m.attr("NPOP") = kNpop;
    m.attr("__version__") = "0.1.0";
}
