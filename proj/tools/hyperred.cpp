// Command-line front end. Tables go out as CSV, records and plots as JSON.

#include "hyperred/errors.hpp"
#include "hyperred/family.hpp"
#include "hyperred/orbits.hpp"
#include "hyperred/quadspace.hpp"
#include "hyperred/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hyperred;
using json = nlohmann::ordered_json;

namespace {

json jint(const Int& n) {
    if (n.fits_slong_p()) return n.get_si();
    return n.get_str();
}

json jrat(const Rat& q) {
    if (q.get_den() == 1) return jint(q.get_num());
    return to_string(q);
}

json jball(const Ball& b) { return {{"mid", b.mid_d()}, {"rad", b.rad_d()}}; }

json jmat(const ZMat& m) {
    json out = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(jint(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json jmat(const QMat& m) {
    json out = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(jrat(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json jmat(const BMat& m) {
    json mid = json::array(), rad = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json a = json::array(), b = json::array();
        for (int j = 0; j < m.cols; ++j) {
            a.push_back(m(i, j).mid_d());
            b.push_back(m(i, j).rad_d());
        }
        mid.push_back(a);
        rad.push_back(b);
    }
    return {{"mid", mid}, {"rad", rad}};
}

json jvec(const ZVec& v) {
    json out = json::array();
    for (auto& x : v) out.push_back(jint(x));
    return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty list");
    return out;
}

void check_delta(double d) {
    if (!(d > 0 && d < 1)) throw Error(ErrorKind::InvalidInput, "delta must lie in (0, 1)");
}

struct Curve {
    std::string f, triple;
};

OrbitRep orbit_of(const Curve& c, IntPoly& f) {
    f = parse_curve(c.f);
    return integral_orbit_rep(f, parse_triple(f, c.triple));
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    os << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral orbits, reduction covariants and family statistics for y^2 = f(x)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "hyperred 0.1.0");

    // enumerate
    auto* en = app.add_subcommand("enumerate", "List the family F(X) as CSV");
    int en_g = 1;
    std::string en_X = "2";
    double en_delta = -1;
    bool en_count = false;
    en->add_option("--g", en_g, "genus")->required();
    en->add_option("--X", en_X, "height bound (rational)")->required();
    en->add_option("--delta", en_delta, "add the root-gap filter verdict");
    en->add_flag("--count", en_count, "print counts as JSON instead of members");

    // orbit / covariant / plot
    Curve cur;
    auto add_curve = [&](CLI::App* s) {
        s->add_option("--f", cur.f, "\"c2,...,c_{2g+1}\" or an expression in x")->required();
        s->add_option("--triple", cur.triple, "Mumford triple \"U;V;R\"")->required();
    };
    auto* orb = app.add_subcommand("orbit", "Integral orbit representative as JSON");
    add_curve(orb);
    auto* cov = app.add_subcommand("covariant", "Reduction covariant of the orbit representative");
    add_curve(cov);
    long cov_prec = 0;
    cov->add_option("--prec", cov_prec, "working precision in bits");
    auto* plt = app.add_subcommand("plot", "Canonical plot of the orbit lattice");
    add_curve(plt);

    // stats
    auto* st = app.add_subcommand("stats", "Family experiments");
    st->require_subcommand(1);
    auto* hg = st->add_subcommand("height-gap", "Small-point fractions per X (CSV)");
    FamilySpec hs;
    std::string hg_X = "5,10,20", hg_records;
    long hg_bound = 1000, hg_samples = 1000;
    hg->add_option("--g", hs.g, "genus")->capture_default_str();
    hg->add_option("--X", hg_X, "comma-separated height bounds")->capture_default_str();
    hg->add_option("--epsilon", hs.epsilon, "gap parameter")->capture_default_str();
    hg->add_option("--delta", hs.delta, "root-gap filter parameter")->capture_default_str();
    hg->add_option("--search-bound", hg_bound, "bound on numerators and denominators")->capture_default_str();
    hg->add_option("--samples", hg_samples, "polynomials per X")->capture_default_str();
    hg->add_option("--seed", hs.seed, "RNG seed")->capture_default_str();
    hg->add_option("--records", hg_records, "also write per-polynomial records (CSV) here");

    auto* eq = st->add_subcommand("equidist", "Short-vector fractions of random operators (CSV)");
    FamilySpec es;
    long eq_samples = 1000, eq_entries = 10;
    std::string eq_grid = "1,0.5,0.25,0.125";
    eq->add_option("--g", es.g, "genus")->capture_default_str();
    eq->add_option("--samples", eq_samples, "accepted samples")->capture_default_str();
    eq->add_option("--eps-grid", eq_grid, "comma-separated eps values")->capture_default_str();
    eq->add_option("--seed", es.seed, "RNG seed")->capture_default_str();
    eq->add_option("--entry-bound", eq_entries, "entries drawn from [-B, B]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (*en) {
            Rat X = parse_rat(en_X);
            if (en_count) {
                auto c = count_family(en_g, X);
                json j = {{"g", en_g}, {"X", jrat(X)}, {"boxes", jint(c.boxes)}, {"zero_disc", jint(c.zero_disc)},
                          {"count", jint(c.count)}};
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            if (en_delta >= 0) check_delta(en_delta);
            std::cout << (en_delta >= 0 ? "f,m_delta1\n" : "f\n");
            for_each_family(en_g, X, [&](const IntPoly& f) {
                std::cout << '"' << format_family(f) << '"';
                if (en_delta >= 0) std::cout << ',' << verdict_name(filter_m_delta1(f, en_delta, X));
                std::cout << '\n';
            });
        } else if (*orb) {
            IntPoly f;
            OrbitRep rep = orbit_of(cur, f);
            auto rpt = verify_orbit(to_q(rep.T), f);
            json primes = json::array();
            for (auto& p : rep.lattice.primes) primes.push_back(jint(p));
            json j = {{"f", format_family(f)},
                      {"triple", format_triple(rep.lattice.space.t)},
                      {"T", jmat(rep.T)},
                      {"w", jvec(rep.w)},
                      {"N", jint(rep.lattice.N)},
                      {"M", jint(rep.lattice.M)},
                      {"primes", primes},
                      {"verified", rpt.ok()},
                      {"distinguished_witness", is_distinguished_witness(to_q(rep.T), transported_isotropic(rep))}};
            std::cout << j.dump(2) << "\n";
        } else if (*cov) {
            IntPoly f;
            OrbitRep rep = orbit_of(cur, f);
            auto cg = reduction_covariant(to_q(rep.T), std::nullopt, cov_prec);
            PrecGuard guard(cg.prec);
            Ball wn = quad(cg.H, rep.w, rep.w);
            Ball formula = Ball(rep.lattice.M) * covariant_norm_of_U(f, rep.lattice.space.t.U);
            json j = {{"f", format_family(f)},
                      {"H", jmat(cg.H)},
                      {"prec", cg.prec},
                      {"compat_residual", cg.compat_residual},
                      {"commute_residual", cg.commute_residual},
                      {"positive_definite", certainly_positive_definite(cg.H)},
                      {"det", jball(det(cg.H))},
                      {"norm_w", jball(wn)},
                      {"norm_formula", jball(formula)}};
            std::cout << j.dump(2) << "\n";
        } else if (*plt) {
            IntPoly f;
            OrbitRep rep = orbit_of(cur, f);
            auto cg = reduction_covariant(to_q(rep.T));
            PrecGuard guard(cg.prec);
            auto plot = canonical_plot(cg.H);
            auto sv = shortest_vector(cg.H);
            json pts = json::array();
            for (auto& [i, y] : plot.points()) pts.push_back({i, y});
            json filt = json::array();
            for (auto& m : plot.filtration()) filt.push_back(jmat(m));
            json j = {{"f", format_family(f)},
                      {"rank", plot.rank},
                      {"points", pts},
                      {"vertices", plot.vertices},
                      {"filtration", filt},
                      {"shortest_vector", jvec(sv.v)},
                      {"shortest_length", jball(sv.length)}};
            std::cout << j.dump(2) << "\n";
        } else if (*hg) {
            check_delta(hs.delta);
            if (!(hs.epsilon > 0)) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
            auto r = height_gap_experiment(hs, parse_rat_list(hg_X), hg_samples, hg_bound);
            std::cout << r.csv();
            if (!hg_records.empty()) write_out(hg_records, r.records_csv());
        } else if (*eq) {
            std::vector<double> grid;
            for (auto& q : parse_rat_list(eq_grid)) grid.push_back(q.get_d());
            auto r = equidistribution_experiment(es, eq_samples, grid, eq_entries);
            std::cout << r.csv();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
