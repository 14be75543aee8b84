// hzn: command-line front end for the library.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hzn/errors.hpp"
#include "hzn/hzn.hpp"
#include "hzn/quadfield.hpp"
#include "hzn/suites.hpp"
#include "hzn/zeta.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace hzn;

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON writer that prints every float with 17 significant digits.
void write_json(std::ostream& os, const json& j, int indent = 0) {
    const std::string pad(indent + 2, ' '), end(indent, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(it.key()).dump() << ": ";
                write_json(os, it.value(), indent + 2);
            }
            os << "\n" << end << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_json(os, j[i], indent + 2);
            }
            os << "\n" << end << "]";
            return;
        }
        case json::value_t::number_float:
            os << num(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

json cval(const std::string& label, const ComplexValue& v) {
    return json{{"label", label}, {"re", v.value.real()}, {"im", v.value.imag()}, {"err", v.err}};
}

cplx parse_complex(const std::string& s) {
    std::stringstream ss(s);
    std::string re, im;
    std::getline(ss, re, ',');
    std::getline(ss, im);
    try {
        std::size_t used = 0;
        double r = std::stod(re, &used);
        if (used != re.size()) throw std::invalid_argument(re);
        double i = 0.0;
        if (!im.empty()) {
            i = std::stod(im, &used);
            if (used != im.size()) throw std::invalid_argument(im);
        }
        return {r, i};
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse complex number '" + s + "'");
    }
}

struct Report {
    std::string command;
    json inputs = json::object();
    json outputs = json::array();
    json extra = json::object();
    bool ok = true;
};

std::vector<std::pair<double, double>> read_twists(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open twist file '" + path + "'");
    std::vector<std::pair<double, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::stringstream ss(line);
        double a, b;
        if (!(ss >> a)) continue;
        if (!(ss >> b)) throw UsageError("twist file line needs 'alpha beta': " + line);
        out.emplace_back(a, b);
    }
    return out;
}

void run_table(std::int64_t D, int k, const std::string& twist_file) {
    const FieldData fd = fundamental_unit(D);
    const std::vector<MinusCycle> classes = narrow_classes(fd);
    std::vector<TableRow> rows;
    if (twist_file.empty() && D == 12 && k == 2) {
        rows = reference_table();
    } else {
        std::vector<std::pair<double, double>> tw;
        if (twist_file.empty())
            for (const TableRow& r : reference_table())
                if (r.class_id == 0) tw.emplace_back(r.alpha, r.beta);
        if (!twist_file.empty()) tw = read_twists(twist_file);
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (auto [a, b] : tw) rows.push_back({c, a, b, {0.0, 0.0}, false});
    }
    const double half = std::pow(static_cast<double>(D), 0.5 * k);
    std::cout << "class_id,alpha,beta,zcal_re,zcal_im,rhs_hklf_re,rhs_hklf_im,abs_diff,"
                 "reference_re,reference_im,reference_abs_diff,narrow_re,narrow_im\n";
    for (const TableRow& r : rows) {
        if (r.class_id >= classes.size()) throw DomainError("table: class index out of range");
        const TwistPair t(r.alpha, r.beta);
        const cplx z = zcal(k, classes[r.class_id], fd, t, ZetaRoute::Direct).value.value;
        const cplx h = zcal(k, classes[r.class_id], fd, t, ZetaRoute::Hzn).value.value;
        std::cout << r.class_id << ',' << num(r.alpha) << ',' << num(r.beta) << ',' << num(z.real()) << ','
                  << num(z.imag()) << ',' << num(h.real()) << ',' << num(h.imag()) << ',' << num(std::abs(z - h)) << ',';
        if (r.has_reference)
            std::cout << num(r.reference.real()) << ',' << num(r.reference.imag()) << ','
                      << num(std::abs(h - r.reference));
        else
            std::cout << ",,";
        std::cout << ',' << num(half * z.real()) << ',' << num(half * z.imag()) << '\n';
    }
}

json reduce_json(std::int64_t D) {
    const FieldData fd = fundamental_unit(D);
    const std::vector<MinusCycle> classes = narrow_classes(fd);
    json j;
    j["discriminant"] = D;
    j["fundamental_unit"] = {{"t", fd.eps_t.str()},
                             {"u", fd.eps_u.str()},
                             {"value", fd.epsilon()},
                             {"norm", fd.norm_eps},
                             {"norm_eps_minus_1", fd.norm_eps_minus_1.str()}};
    json cl = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        json c;
        c["index"] = i;
        c["digits"] = classes[i].digits;
        json red = json::array();
        for (const QuadIrr& w : red_set(classes[i], fd)) red.push_back(w.str());
        c["red"] = red;
        json forms = json::array();
        for (const IndefForm& f : forms_of(red_set(classes[i], fd)))
            forms.push_back({{"w", f.w}, {"wprime", f.wprime}, {"a", f.a()}, {"b", f.b()}, {"c", f.c()}});
        c["forms"] = forms;
        if (fd.norm_eps == 1) {
            const auto [odd, even] = wide_red_sets(fd, classes[i]);
            json wo = json::array(), we = json::array();
            for (const QuadIrr& x : odd) wo.push_back(x.str());
            for (const QuadIrr& x : even) we.push_back(x.str());
            c["wide_red"] = wo;
            c["wide_red_star"] = we;
            c["star_class"] = star_class(fd, classes, i);
        }
        cl.push_back(c);
    }
    j["classes"] = cl;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higher Herglotz-Zagier-Novikov functions and twisted zeta values"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "Report wall_time_ms as 0 for byte-identical output");

    int k = 2;
    std::string xs = "1", route;
    double alpha = 0.0, beta = 0.0;
    auto* eval = app.add_subcommand("eval", "Evaluate F_k(x; alpha, beta)");
    eval->add_option("--k", k)->required();
    eval->add_option("--x", xs, "RE[,IM]")->required();
    eval->add_option("--alpha", alpha)->required();
    eval->add_option("--beta", beta)->required();
    eval->add_option("--route", route)->check(CLI::IsMember({"series", "integral"}));

    double w = 0.0, wp = 0.0;
    auto* zqc = app.add_subcommand("zq", "Twisted zeta value of the form with roots w > w' > 0");
    zqc->add_option("--k", k)->required();
    zqc->add_option("--w", w)->required();
    zqc->add_option("--wp", wp)->required();
    zqc->add_option("--alpha", alpha)->required();
    zqc->add_option("--beta", beta)->required();
    zqc->add_option("--route", route)->check(CLI::IsMember({"direct", "hzn"}));

    std::int64_t D = 12;
    std::string twists;
    auto* table = app.add_subcommand("table", "CSV of class zeta values over twist pairs");
    table->add_option("--discriminant", D);
    table->add_option("--k", k);
    table->add_option("--twists", twists, "File with one 'alpha beta' pair per line");

    auto* reduce = app.add_subcommand("reduce", "Reduction data of a real quadratic field as JSON");
    reduce->add_option("--discriminant", D)->required();

    std::string suite;
    SuiteOptions sopt;
    auto* check = app.add_subcommand("check", "Run a property suite");
    check->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    check->add_option("--samples", sopt.samples)->check(CLI::NonNegativeNumber);
    check->add_option("--tol", sopt.tol)->check(CLI::NonNegativeNumber);
    check->add_option("--seed", sopt.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (check->parsed() && sopt.tol == 0.0) {
        if (const char* t = std::getenv("HZN_TOL")) sopt.tol = std::atof(t);
    }

    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
        if (*table) {
            rep.command = "table";
            run_table(D, k, twists);
            return 0;
        }
        if (*eval) {
            rep.command = "eval";
            const cplx x = parse_complex(xs);
            rep.inputs = {{"k", k}, {"x_re", x.real()}, {"x_im", x.imag()}, {"alpha", alpha}, {"beta", beta},
                          {"route", route.empty() ? "series" : route}};
            HznValue v = hzn_eval(k, x, TwistPair(alpha, beta), route == "integral" ? HznRoute::Integral : HznRoute::Series);
            rep.outputs.push_back(cval("F_k", v.value));
        } else if (*zqc) {
            rep.command = "zq";
            rep.inputs = {{"k", k}, {"w", w}, {"wp", wp}, {"alpha", alpha}, {"beta", beta},
                          {"route", route.empty() ? "hzn" : route}};
            IndefForm f{w, wp, {}};
            ZetaResult z = zq(k, f, TwistPair(alpha, beta), route == "direct" ? ZetaRoute::Direct : ZetaRoute::Hzn);
            rep.outputs.push_back(cval("Z_Q", z.value));
            rep.extra["terms_used"] = z.terms_used;
        } else if (*reduce) {
            rep.command = "reduce";
            rep.inputs = {{"discriminant", D}};
            rep.extra = reduce_json(D);
        } else if (*check) {
            rep.command = "check";
            rep.inputs = {{"suite", suite}, {"samples", sopt.samples}, {"tol", sopt.tol}, {"seed", sopt.seed}};
            const SuiteOutcome s = run_suite(suite, sopt);
            rep.ok = s.pass;
            rep.outputs.push_back(cval("max_residual", {{s.max_residual, 0.0}, 0.0}));
            for (const SuiteDetail& d : s.details) rep.outputs.push_back(cval(d.label, d.value));
            rep.extra["pass"] = s.pass;
            rep.extra["tol"] = s.tol;
            rep.extra["samples"] = s.samples;
            rep.extra["notes"] = s.notes;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        rep.ok = false;
        rep.extra["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    }

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    json out;
    out["command"] = rep.command;
    out["inputs"] = rep.inputs;
    out["outputs"] = rep.outputs;
    for (auto it = rep.extra.begin(); it != rep.extra.end(); ++it) out[it.key()] = it.value();
    out["status"] = rep.ok ? "ok" : "failed";
    out["wall_time_ms"] = no_timing ? 0 : static_cast<std::int64_t>(ms);
    write_json(std::cout, out);
    std::cout << "\n";
    return rep.ok ? 0 : 1;
}
