#include "hyperred/errors.hpp"
#include "hyperred/family.hpp"
#include "hyperred/orbits.hpp"
#include "hyperred/quadspace.hpp"
#include "hyperred/reduction.hpp"
#include "hyperred/roots.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hyperred;

namespace {

py::object pyint(const Int& n) {
    if (n.fits_slong_p()) return py::int_(n.get_si());
    return py::module_::import("builtins").attr("int")(n.get_str());
}

Rat to_rat(const py::handle& h) { return parse_rat(py::str(h)); }

py::list pymat(const ZMat& m) {
    py::list out;
    for (int i = 0; i < m.rows; ++i) {
        py::list row;
        for (int j = 0; j < m.cols; ++j) row.append(pyint(m(i, j)));
        out.append(row);
    }
    return out;
}

py::list pyvec(const ZVec& v) {
    py::list out;
    for (auto& x : v) out.append(pyint(x));
    return out;
}

std::vector<std::vector<double>> mids(const BMat& m) {
    std::vector<std::vector<double>> out(m.rows, std::vector<double>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out[i][j] = m(i, j).mid_d();
    return out;
}

QMat qmat(const std::vector<std::vector<py::object>>& rows) {
    int r = (int)rows.size(), c = r ? (int)rows[0].size() : 0;
    QMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if ((int)rows[i].size() != c) throw Error(ErrorKind::InvalidInput, "ragged matrix");
        for (int j = 0; j < c; ++j) m(i, j) = to_rat(rows[i][j]);
    }
    return m;
}

BMat bmat(const std::vector<std::vector<double>>& rows) {
    int n = (int)rows.size();
    std::vector<double> flat;
    for (auto& r : rows) {
        if ((int)r.size() != n) throw Error(ErrorKind::InvalidInput, "Gram matrix must be square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return BMat::from_doubles(n, n, flat);
}

IntPoly curve(const std::string& f) { return parse_curve(f); }

} // namespace

PYBIND11_MODULE(_hyperred, m) {
    m.doc() = "Integral orbits, reduction covariants and family statistics for odd hyperelliptic curves";

    py::register_exception<Error>(m, "HyperredError", PyExc_ValueError);

    m.def("set_precision", &set_working_prec, py::arg("bits"));
    m.def("precision", &working_prec);

    m.def("discriminant", [](const std::string& f) { return pyint(discriminant(curve(f))); }, py::arg("f"));
    m.def("height", [](const std::string& f) { return height(curve(f)).mid_d(); }, py::arg("f"));
    m.def(
        "count_family",
        [](int g, const py::object& X, bool cross_check) {
            auto c = count_family(g, to_rat(X), cross_check);
            py::dict d;
            d["boxes"] = pyint(c.boxes);
            d["zero_disc"] = pyint(c.zero_disc);
            d["count"] = pyint(c.count);
            return d;
        },
        py::arg("g"), py::arg("X"), py::arg("cross_check") = true);
    m.def(
        "enumerate_family",
        [](int g, const py::object& X) {
            py::list out;
            for_each_family(g, to_rat(X), [&](const IntPoly& f) { out.append(format_family(f)); });
            return out;
        },
        py::arg("g"), py::arg("X"));
    m.def(
        "filter_m_delta1",
        [](const std::string& f, double delta, const py::object& X) {
            return std::string(verdict_name(filter_m_delta1(curve(f), delta, to_rat(X))));
        },
        py::arg("f"), py::arg("delta"), py::arg("X"));

    m.def(
        "orbit_rep",
        [](const std::string& f, const std::string& triple) {
            IntPoly p = curve(f);
            OrbitRep rep = integral_orbit_rep(p, parse_triple(p, triple));
            py::dict d;
            d["T"] = pymat(rep.T);
            d["w"] = pyvec(rep.w);
            d["N"] = pyint(rep.lattice.N);
            d["M"] = pyint(rep.lattice.M);
            d["triple"] = format_triple(rep.lattice.space.t);
            d["verified"] = verify_orbit(to_q(rep.T), p).ok();
            return d;
        },
        py::arg("f"), py::arg("triple"));

    m.def(
        "reduction_covariant",
        [](const std::vector<std::vector<py::object>>& T, long prec) {
            auto cg = reduction_covariant(qmat(T), std::nullopt, prec);
            py::dict d;
            d["H"] = mids(cg.H);
            d["prec"] = cg.prec;
            d["compat_residual"] = cg.compat_residual;
            d["commute_residual"] = cg.commute_residual;
            return d;
        },
        py::arg("T"), py::arg("prec") = 0);
    m.def(
        "covariant_norm_of_U",
        [](const std::string& f, const std::string& U) { return covariant_norm_of_U(curve(f), parse_poly(U)).mid_d(); },
        py::arg("f"), py::arg("U"));

    m.def(
        "shortest_vector",
        [](const std::vector<std::vector<double>>& G) {
            auto sv = shortest_vector(bmat(G));
            return py::make_tuple(pyvec(sv.v), sv.length.mid_d());
        },
        py::arg("gram"));
    m.def(
        "canonical_plot",
        [](const std::vector<std::vector<double>>& G) {
            auto p = canonical_plot(bmat(G));
            py::dict d;
            d["points"] = p.points();
            d["vertices"] = p.vertices;
            py::list filt;
            for (auto& s : p.filtration()) filt.append(pymat(s));
            d["filtration"] = filt;
            return d;
        },
        py::arg("gram"));
    m.def(
        "cusp_t",
        [](const std::vector<std::vector<double>>& H) {
            std::vector<double> t;
            for (auto& b : cusp_coordinates(bmat(H)).t) t.push_back(b.mid_d());
            return t;
        },
        py::arg("H"));

    m.def(
        "h_dagger",
        [](const std::string& f, const std::string& triple) {
            IntPoly p = curve(f);
            return h_dagger(JacobianPoint{p, parse_triple(p, triple)});
        },
        py::arg("f"), py::arg("triple"));
    m.def(
        "doubling_check",
        [](const std::string& f, const std::string& triple) {
            IntPoly p = curve(f);
            auto r = doubling_check(JacobianPoint{p, parse_triple(p, triple)});
            py::dict d;
            d["m"] = r.m;
            d["H_D"] = pyint(r.H_D);
            d["H_2D"] = pyint(r.H_2D);
            d["holds"] = r.holds;
            d["divisor_doubling"] = r.divisor_doubling;
            return d;
        },
        py::arg("f"), py::arg("triple"));

    m.def(
        "height_gap",
        [](int g, const std::vector<py::object>& Xs, double epsilon, double delta, long samples, long search_bound,
           std::uint64_t seed) {
            FamilySpec s;
            s.g = g;
            s.epsilon = epsilon;
            s.delta = delta;
            s.seed = seed;
            std::vector<Rat> xs;
            for (auto& x : Xs) xs.push_back(to_rat(x));
            py::gil_scoped_release release;
            return height_gap_experiment(s, xs, samples, search_bound).csv();
        },
        py::arg("g"), py::arg("Xs"), py::arg("epsilon") = 0.5, py::arg("delta") = 0.5, py::arg("samples") = 1000,
        py::arg("search_bound") = 1000, py::arg("seed") = 1);
    m.def(
        "equidistribution",
        [](int g, long samples, const std::vector<double>& eps, std::uint64_t seed, long entry_bound) {
            FamilySpec s;
            s.g = g;
            s.seed = seed;
            py::gil_scoped_release release;
            auto r = equidistribution_experiment(s, samples, eps, entry_bound);
            std::vector<double> frac;
            for (size_t i = 0; i < eps.size(); ++i) frac.push_back(r.fraction(i));
            return frac;
        },
        py::arg("g"), py::arg("samples"), py::arg("eps"), py::arg("seed") = 1, py::arg("entry_bound") = 10);
}
