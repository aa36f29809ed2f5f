// Command-line front end: symbolic algebra, cocycles and the spectral sums.
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "suq2/acceptance.hpp"
#include "suq2/actions.hpp"
#include "suq2/functionals.hpp"
#include "suq2/hochschild.hpp"
#include "suq2/spectral.hpp"

using namespace suq2;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, nonconvergent = 3 };

struct Config {
    std::string q_text = "1/2";
    int lmax = 40;
    double z_from = 3.1, z_to = 4.0;
    int z_steps = 10;
    std::string eps_text = "0.4,0.2,0.1,0.05";
    unsigned seed = 2024;
    std::string out, format;
    bool format_given = false;
};

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

double parse_q(const std::string& s) {
    double q;
    try {
        if (auto slash = s.find('/'); slash != std::string::npos)
            q = std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
        else
            q = std::stod(s);
    } catch (const std::exception&) {
        throw UsageError("cannot read q from '" + s + "'");
    }
    if (!(q > 0.0 && q < 1.0)) throw UsageError("q must lie in (0, 1), got " + s);
    return q;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError("cannot read number '" + tok + "' in list '" + s + "'");
        }
    }
    return out;
}

Element parse(const std::string& text) {
    try {
        return parse_element(text);
    } catch (const std::exception& e) {
        throw UsageError("cannot parse element '" + text + "': " + e.what());
    }
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

// Machine-readable result: a JSON object, optionally with a table for CSV.
struct Result {
    json payload = json::object();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void emit(const Config& cfg, const Result& r) {
    if (cfg.out.empty() && !cfg.format_given) return;
    std::ostringstream os;
    if (cfg.format == "csv") {
        if (!r.header.empty()) {
            for (size_t k = 0; k < r.header.size(); ++k) os << (k ? "," : "") << r.header[k];
            os << "\n";
            for (const auto& row : r.rows) {
                for (size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_quote(row[k]);
                os << "\n";
            }
        } else {
            os << "key,value\n";
            for (const auto& [k, v] : r.payload.items())
                os << csv_quote(k) << "," << csv_quote(v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    } else {
        os << r.payload.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << os.str();
}

Scalar scalar_payload(json& j, const std::string& key, const Scalar& s, const Config& cfg) {
    j[key] = s.to_string();
    j[key + "_at_q"] = eval_at_q(s, parse_q(cfg.q_text));
    return s;
}

Tuple random_tuple(std::mt19937_64& rng, int len) {
    // generators and monomials of degree <= 3
    Tuple t;
    for (int i = 0; i < len; ++i) {
        std::string w;
        int deg = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < deg; ++k) w += "abcd"[rng() % 4];
        t.push_back(word(w));
    }
    return t;
}

Cochain cochain_by_name(const std::string& name) {
    if (name == "phi_res") return phi_res_cochain();
    if (name == "psi132") return psi(PsiVariant::v132);
    if (name == "psi213") return psi(PsiVariant::v213);
    try {
        return cup_cochain(cup_variant_from_string(name));
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown cocycle '" + name + "' (phi, 132, 213, 312, 231, 321, phi_res, psi132, psi213)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum SU(2): symbolic algebra, twisted Hochschild cocycles and spectral sums"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file mirroring the flags; flags win");
    Config cfg;
    app.add_option("--q", cfg.q_text, "deformation parameter, rational or decimal")->capture_default_str();
    app.add_option("--lmax", cfg.lmax, "largest doubled spin 2l kept")->capture_default_str();
    app.add_option("--z-from", cfg.z_from)->capture_default_str();
    app.add_option("--z-to", cfg.z_to)->capture_default_str();
    app.add_option("--z-steps", cfg.z_steps)->capture_default_str();
    app.add_option("--eps", cfg.eps_text, "comma-separated decreasing schedule")->capture_default_str();
    app.add_option("--seed", cfg.seed)->capture_default_str();
    app.add_option("--out", cfg.out, "write machine-readable output here");
    auto* fmt_opt =
        app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->default_val("json");

    std::string expr, op = "e", cocycle = "phi", omega = "deltaL2-e11";
    std::vector<std::string> tuple;
    int random_count = 0, hh_random = 200, lmax_cap = 400;

    auto* c_norm = app.add_subcommand("normalize", "print the normal form of an expression");
    c_norm->add_option("expr", expr)->required();

    auto* c_act = app.add_subcommand("act", "apply a Hopf action or twist to an expression");
    c_act->add_option("expr", expr)->required();
    c_act->add_option("--op", op, "e, f, H, k, k-inv, theta, theta-inv, sigmaL, star")
        ->check(CLI::IsMember({"e", "f", "H", "k", "k-inv", "theta", "theta-inv", "sigmaL", "star"}));

    auto* c_haar = app.add_subcommand("haar", "Haar state and the twisted functional int_1");
    c_haar->add_option("expr", expr)->required();

    auto* c_eval = app.add_subcommand("cocycle-eval", "evaluate a cochain on a tuple or on random tuples");
    c_eval->add_option("--cocycle", cocycle)->capture_default_str();
    c_eval->add_option("tuple", tuple, "four (three for psi) expressions");
    c_eval->add_option("--random", random_count, "evaluate on this many seeded random tuples instead");

    auto* c_pair = app.add_subcommand("pair-dvol", "pair a cocycle with the volume chain");
    c_pair->add_option("--cocycle", cocycle)->capture_default_str();

    auto* c_hh = app.add_subcommand("hochschild-check", "closure of all cocycles on generator and random tuples");
    c_hh->add_option("--random", hh_random, "random 5-tuples")->capture_default_str();

    auto* c_spec = app.add_subcommand("spectrum", "Dirac sector spectra against the closed forms");
    auto* c_scan = app.add_subcommand("upsilon-scan", "truncated trace sums over a z grid");
    c_scan->add_option("--omega", omega)->check(CLI::IsMember(omega_tags()))->capture_default_str();
    auto* c_res = app.add_subcommand("residue", "residue at z = 3 by Richardson extrapolation");
    c_res->add_option("--omega", omega)->check(CLI::IsMember(omega_tags()))->capture_default_str();
    c_res->add_option("--lmax-cap", lmax_cap)->capture_default_str();
    auto* c_all = app.add_subcommand("verify-all", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }
    cfg.format_given = fmt_opt->count() > 0;

    Result res;
    int status = Exit::ok;
    try {
        if (*c_norm) {
            Element x = parse(expr);
            res.payload = {{"command", "normalize"}, {"input", expr}, {"normal_form", x.to_string()},
                           {"element", to_json(x)}};
            std::cout << x.to_string() << "\n";
        } else if (*c_act) {
            Element x = parse(expr), y;
            if (op == "e") y = act_e(x);
            else if (op == "f") y = act_f(x);
            else if (op == "H") y = act_H(x);
            else if (op == "k") y = k_pow(x, 1);
            else if (op == "k-inv") y = k_pow(x, -1);
            else if (op == "theta") y = theta(x, 1);
            else if (op == "theta-inv") y = theta(x, -1);
            else if (op == "sigmaL") y = sigma_L(x, 2);
            else y = star(x);
            res.payload = {{"command", "act"}, {"op", op}, {"input", x.to_string()}, {"result", y.to_string()},
                           {"element", to_json(y)}};
            std::cout << op << " |> (" << x.to_string() << ") = " << y.to_string() << "\n";
        } else if (*c_haar) {
            Element x = parse(expr);
            res.payload = {{"command", "haar"}, {"input", x.to_string()}};
            Scalar h = scalar_payload(res.payload, "haar", haar(x), cfg);
            Scalar i = scalar_payload(res.payload, "int_one", int_one(x), cfg);
            std::cout << "h(x) = " << h.to_string() << "\nint_1(x) = " << i.to_string() << "\n";
        } else if (*c_eval) {
            Cochain c = cochain_by_name(cocycle);
            res.payload = {{"command", "cocycle-eval"}, {"cocycle", c.name}, {"seed", cfg.seed}};
            res.header = {"variant", "tuple", "value"};
            std::vector<Tuple> tuples;
            if (random_count > 0) {
                std::mt19937_64 rng(cfg.seed);
                for (int k = 0; k < random_count; ++k) tuples.push_back(random_tuple(rng, c.degree + 1));
            } else {
                if (static_cast<int>(tuple.size()) != c.degree + 1)
                    throw UsageError(c.name + " takes " + std::to_string(c.degree + 1) + " arguments");
                Tuple t;
                for (const auto& s : tuple) t.push_back(parse(s));
                tuples.push_back(t);
            }
            json vals = json::array();
            for (const auto& t : tuples) {
                Scalar v = c(t);
                std::string joined;
                for (size_t k = 0; k < t.size(); ++k) joined += (k ? " | " : "") + t[k].to_string();
                res.rows.push_back({c.name, joined, v.to_string()});
                vals.push_back({{"tuple", joined}, {"value", v.to_string()}});
                std::cout << c.name << "(" << joined << ") = " << v.to_string() << "\n";
            }
            res.payload["values"] = vals;
        } else if (*c_pair) {
            Cochain c = cochain_by_name(cocycle);
            if (c.degree != 3) throw UsageError("dvol is a 3-chain; " + c.name + " has degree " + std::to_string(c.degree));
            Scalar v = pair(c, dvol());
            res.payload = {{"command", "pair-dvol"}, {"cocycle", c.name}};
            scalar_payload(res.payload, "value", v, cfg);
            std::cout << c.name << "(dvol) = " << v.to_string() << "\n";
        } else if (*c_hh) {
            std::vector<Cochain> cs;
            for (auto v : all_cup_variants) cs.push_back(cup_cochain(v));
            cs.push_back(phi_res_cochain());
            std::mt19937_64 rng(cfg.seed);
            std::vector<Tuple> tuples;
            for (int code = 0; code < 1024; ++code) {
                Tuple t;
                for (int i = 0, c = code; i < 5; ++i, c /= 4) t.push_back(Element::gen(static_cast<Gen>(c % 4)));
                tuples.push_back(t);
            }
            for (int k = 0; k < hh_random; ++k) tuples.push_back(random_tuple(rng, 5));
            res.payload = {{"command", "hochschild-check"}, {"seed", cfg.seed}, {"tuples", tuples.size()}};
            res.header = {"cocycle", "tuples", "nonzero"};
            bool all = true;
            for (const auto& c : cs) {
                Cochain b = twisted_boundary(c);
                int bad = 0;
                for (const auto& t : tuples) bad += !b(t).is_zero();
                all = all && bad == 0;
                res.payload["nonzero"][c.name] = bad;
                res.rows.push_back({c.name, std::to_string(tuples.size()), std::to_string(bad)});
                std::cout << "b(" << c.name << "): " << bad << " nonzero of " << tuples.size() << "\n";
            }
            res.payload["pass"] = all;
            status = all ? Exit::ok : Exit::failed;
        } else if (*c_spec) {
            const double q = parse_q(cfg.q_text);
            res.payload = {{"command", "spectrum"}, {"q", q}, {"lmax", cfg.lmax}};
            res.header = {"l2", "index", "eigenvalue", "expected"};
            double worst = 0.0;
            for (int l2 = 0; l2 <= cfg.lmax; ++l2) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dirac_sector(l2, q));
                auto expect = dirac_expected_spectrum(l2, q);
                for (int k = 0; k < es.eigenvalues().size(); ++k) {
                    res.rows.push_back({std::to_string(l2), std::to_string(k), num(es.eigenvalues()[k]), num(expect[k])});
                    worst = std::max(worst, std::fabs(es.eigenvalues()[k] - expect[k]) / std::max(1.0, std::fabs(expect[k])));
                }
            }
            res.payload["max_relative_error"] = worst;
            std::cout << "sectors 2l <= " << cfg.lmax << ": max relative eigenvalue error " << worst << "\n";
            status = worst <= 1e-9 ? Exit::ok : Exit::failed;
        } else if (*c_scan) {
            const double q = parse_q(cfg.q_text);
            if (cfg.z_steps < 1) throw UsageError("--z-steps must be positive");
            std::vector<double> zs;
            for (int k = 0; k < cfg.z_steps; ++k)
                zs.push_back(cfg.z_steps == 1 ? cfg.z_from : cfg.z_from + (cfg.z_to - cfg.z_from) * k / (cfg.z_steps - 1));
            auto rows = upsilon_scan(omega_from_tag(omega), zs, SpectralGrid(q, cfg.lmax));
            res.header = {"omega_tag", "q", "z", "lmax", "partial_sum", "tail_bound"};
            json arr = json::array();
            for (const auto& r : rows) {
                res.rows.push_back({r.tag, num(r.q), num(r.z), std::to_string(r.lmax), num(r.partial_sum), num(r.tail_bound)});
                arr.push_back({{"omega_tag", r.tag}, {"q", r.q}, {"z", r.z}, {"lmax", r.lmax},
                               {"partial_sum", r.partial_sum}, {"tail_bound", r.tail_bound}});
                std::cout << "z = " << r.z << ": " << std::setprecision(12) << r.partial_sum << " (tail ~ "
                          << std::setprecision(3) << r.tail_bound << ")\n";
            }
            res.payload = {{"command", "upsilon-scan"}, {"rows", arr}};
        } else if (*c_res) {
            const double q = parse_q(cfg.q_text);
            auto rep = residue_extract(omega_from_tag(omega), q, parse_list(cfg.eps_text), lmax_cap);
            res.payload = rep.to_json();
            std::cout << "residue(" << rep.omega << ", q = " << q << ") = " << std::setprecision(10) << rep.estimate
                      << " +- " << std::setprecision(3) << rep.error_bar << "  [least squares "
                      << std::setprecision(10) << rep.least_squares << ", " << rep.method << "]\n";
            if (!rep.converged) {
                std::cout << "extrapolation did not converge: the error bar grew on the last step\n";
                status = Exit::nonconvergent;
            }
        } else if (*c_all) {
            auto results = run_acceptance(cfg.seed);
            json arr = json::array();
            res.header = {"id", "name", "pass", "detail"};
            bool all = true;
            for (const auto& r : results) {
                std::cout << r.line() << "\n";
                arr.push_back(r.to_json());
                res.rows.push_back({std::to_string(r.id), r.name, r.pass ? "true" : "false", r.detail});
                all = all && r.pass;
            }
            res.payload = {{"command", "verify-all"}, {"seed", cfg.seed}, {"criteria", arr}, {"all_pass", all}};
            status = all ? Exit::ok : Exit::failed;
        }
        emit(cfg, res);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return Exit::nonconvergent;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }
    return status;
}
