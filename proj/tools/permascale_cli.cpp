// permascale command-line front end. Talks to the core exclusively through
// the C API in permascale.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permascale.h"

using nlohmann::json;

namespace {

struct CliError {
    int exit_code;
    std::string code;
    std::string detail;
};

[[noreturn]] void fail(int exit_code, const std::string& code, const std::string& detail) {
    throw CliError{exit_code, code, detail};
}

int exit_code_for(ps_status st) {
    switch (st) {
        case PS_OK: return 0;
        case PS_ERR_MAX_ITER: return 2;
        case PS_ERR_CAP_EXCEEDED: return 3;
        default: return 1;
    }
}

void check(ps_status st) {
    if (st != PS_OK) fail(exit_code_for(st), ps_status_name(st), ps_last_error_detail());
}

struct MatrixHandle {
    ps_matrix* p = nullptr;
    ~MatrixHandle() { ps_matrix_free(p); }
};
struct GridHandle {
    ps_grid* p = nullptr;
    ~GridHandle() { ps_grid_free(p); }
};
struct MapHandle {
    ps_map* p = nullptr;
    ~MapHandle() { ps_map_free(p); }
};
struct RngHandle {
    ps_rng* p = nullptr;
    explicit RngHandle(uint64_t seed) { ps_rng_create(seed, &p); }
    ~RngHandle() { ps_rng_free(p); }
    double uniform() { return ps_rng_uniform(p); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(1, "io_error", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MatrixHandle load_matrix(const std::string& path) {
    MatrixHandle m;
    check(ps_matrix_parse(read_file(path).c_str(), &m.p));
    return m;
}

json matrix_to_json(const ps_matrix* m) {
    size_t rows = ps_matrix_rows(m), cols = ps_matrix_cols(m);
    std::vector<double> data(rows * cols);
    ps_matrix_copy_data(m, data.data());
    json out = json::array();
    for (size_t i = 0; i < rows; ++i) {
        json row = json::array();
        for (size_t j = 0; j < cols; ++j) row.push_back(data[i * cols + j]);
        out.push_back(std::move(row));
    }
    return out;
}

struct Output {
    std::string path; // empty = stdout
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file) {
            file = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file) fail(1, "io_error", "cannot open " + path);
        }
        return *file;
    }
    std::unique_ptr<std::ofstream> file;
};

void emit_json(Output& out, const json& j) { out.stream() << j.dump(2) << "\n"; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- function catalog (fixed names; no expression parser) ----

constexpr double kTau = 6.283185307179586476925286766559;

struct Fn2 {
    std::string name;
    double lambda;
    double c0 = 0.0; // parameter for const:c
    double eval(double x, double y) const {
        if (name == "const") return c0;
        if (name == "sep-exp") return std::exp(0.5 * std::sin(kTau * x)) * std::exp(0.5 * std::cos(kTau * y));
        if (name == "two-block") return y < 0.5 ? 1.0 + x : 1.0;
        if (name == "smooth") return std::exp(0.5 * std::sin(kTau * (x + y)));
        fail(1, "invalid_argument", "unknown catalog function " + name);
    }
};

Fn2 parse_fn2(const std::string& spec) {
    if (spec.rfind("const:", 0) == 0) {
        double c = std::stod(spec.substr(6));
        if (!(c > 0.0)) fail(1, "invalid_argument", "const catalog value must be positive");
        return {"const", std::max(c, 1.0 / c), c};
    }
    if (spec == "sep-exp") return {"sep-exp", std::exp(1.0)};
    if (spec == "two-block") return {"two-block", 2.0};
    if (spec == "smooth") return {"smooth", std::exp(0.5)};
    fail(1, "invalid_argument", "unknown catalog function '" + spec + "'");
}

double fn2_thunk(double x, double y, void* ctx) { return static_cast<Fn2*>(ctx)->eval(x, y); }

struct Fn1 {
    std::string name;
    double lambda;
    double a = 0.0, b = 0.0;
    double eval(double x) const {
        if (name == "const") return a;
        if (name == "exp-sin") return std::exp(std::sin(kTau * x));
        if (name == "two-val") return x < 0.5 ? a : b;
        fail(1, "invalid_argument", "unknown catalog function " + name);
    }
};

Fn1 parse_fn1(const std::string& spec) {
    if (spec.rfind("const:", 0) == 0) {
        double c = std::stod(spec.substr(6));
        if (!(c > 0.0)) fail(1, "invalid_argument", "const catalog value must be positive");
        return {"const", std::max(c, 1.0 / c), c};
    }
    if (spec == "exp-sin") return {"exp-sin", std::exp(1.0)};
    if (spec.rfind("two-val:", 0) == 0) {
        auto rest = spec.substr(8);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            fail(1, "invalid_argument", "two-val needs two values: two-val:a,b");
        double a = std::stod(rest.substr(0, comma));
        double b = std::stod(rest.substr(comma + 1));
        if (!(a > 0.0 && b > 0.0)) fail(1, "invalid_argument", "two-val values must be positive");
        double m = std::max({a, 1.0 / a, b, 1.0 / b});
        return {"two-val", m, a, b};
    }
    if (spec == "two-val") return {"two-val", 2.0, 2.0, 1.0};
    fail(1, "invalid_argument", "unknown catalog function '" + spec + "'");
}

MapHandle parse_map(const std::string& spec, double default_alpha) {
    MapHandle m;
    if (spec == "rot") {
        check(ps_map_rotation(default_alpha, &m.p));
    } else if (spec.rfind("rot:", 0) == 0) {
        check(ps_map_rotation(std::stod(spec.substr(4)), &m.p));
    } else if (spec == "doubling") {
        check(ps_map_doubling(&m.p));
    } else if (spec.rfind("cyclic:", 0) == 0) {
        check(ps_map_cyclic(static_cast<size_t>(std::stoul(spec.substr(7))), &m.p));
    } else {
        fail(1, "invalid_argument", "unknown map spec '" + spec + "' (rot[:a]|doubling|cyclic:k)");
    }
    return m;
}

constexpr double kAlphaT = 0.41421356237309515; // sqrt(2) - 1
constexpr double kAlphaS = 0.7320508075688772;  // sqrt(3) - 1

double parse_point(const std::string& spec, RngHandle& rng) {
    if (spec == "random") return rng.uniform();
    double v = std::stod(spec);
    return v;
}

// ---- helpers over the C API ----

double pmean_of(const ps_matrix* m, size_t cap, unsigned threads) {
    double v = 0.0;
    check(ps_permanental_mean(m, cap, threads, &v));
    return v;
}

double smean_of(const ps_matrix* m, double tol, size_t max_iter) {
    double v = 0.0;
    check(ps_scaling_mean(m, tol, max_iter, &v));
    return v;
}

MatrixHandle random_matrix(RngHandle& rng, size_t n, double zero_prob) {
    std::vector<double> data(n * n);
    for (auto& v : data) {
        double u = rng.uniform();
        v = (zero_prob > 0.0 && u < zero_prob) ? 0.0 : rng.uniform();
    }
    MatrixHandle m;
    check(ps_matrix_create(n, n, data.data(), &m.p));
    return m;
}

MatrixHandle random_lambda_bounded(RngHandle& rng, size_t n, double lambda) {
    std::vector<double> data(n * n);
    double ll = std::log(lambda);
    for (auto& v : data) v = std::exp(rng.uniform(-ll, ll));
    MatrixHandle m;
    check(ps_matrix_create(n, n, data.data(), &m.p));
    return m;
}

MatrixHandle all_ones(size_t n) {
    std::vector<double> data(n * n, 1.0);
    MatrixHandle m;
    check(ps_matrix_create(n, n, data.data(), &m.p));
    return m;
}

std::vector<size_t> parse_size_list(const std::string& spec) {
    std::vector<size_t> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(static_cast<size_t>(std::stoul(tok)));
    if (out.empty()) fail(1, "invalid_argument", "empty size list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"permascale: permanents, scaling means, and Sinkhorn decompositions"};
    app.require_subcommand(1);

    double tol = 1e-12;
    size_t max_iter = 100000;
    size_t cap_n = 26;
    uint64_t seed = 0;
    std::string out_path;
    std::string format = "";
    unsigned threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "residual tolerance");
        cmd->add_option("--max-iter", max_iter, "Sinkhorn iteration cap");
        cmd->add_option("--cap-n", cap_n, "permanent size cap");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "json|csv");
        cmd->add_option("--threads", threads, "threads for the permanent kernel");
    };

    std::string matrix_file, fname, map_t_spec = "rot", map_s_spec = "rot";
    std::string x0_spec = "random", y0_spec = "random", n_list_spec = "6,10,14,18,22";
    std::string g_spec = "exp-sin", target;
    size_t m_max = 6, k_grid = 64, trials = 100, fuzz_n = 5, hs_n = 10000;
    double hs_c = 0.5;

    auto* cmd_per = app.add_subcommand("per", "permanent of a matrix file");
    cmd_per->add_option("matrix", matrix_file, "matrix file")->required();
    add_common(cmd_per);
    auto* cmd_pmean = app.add_subcommand("pmean", "permanental mean");
    cmd_pmean->add_option("matrix", matrix_file)->required();
    add_common(cmd_pmean);
    auto* cmd_smean = app.add_subcommand("smean", "scaling mean");
    cmd_smean->add_option("matrix", matrix_file)->required();
    add_common(cmd_smean);
    auto* cmd_sink = app.add_subcommand("sinkhorn", "Sinkhorn decomposition A = DSE");
    cmd_sink->add_option("matrix", matrix_file)->required();
    add_common(cmd_sink);
    auto* cmd_pi = app.add_subcommand("pi", "projection onto positive diagonals");
    cmd_pi->add_option("matrix", matrix_file)->required();
    add_common(cmd_pi);

    auto* cmd_fried = app.add_subcommand("friedland", "pmean(A (x) U_m) vs smean(A)");
    cmd_fried->add_option("--matrix", matrix_file)->required();
    cmd_fried->add_option("--m-max", m_max, "largest blowup factor m");
    add_common(cmd_fried);

    auto* cmd_llp = app.add_subcommand("llp", "law of large permanents experiment");
    cmd_llp->add_option("--fname", fname, "catalog function (const:c|sep-exp|two-block|smooth)")
        ->required();
    cmd_llp->add_option("--map-t", map_t_spec, "T map spec (rot[:a]|doubling|cyclic:k)");
    cmd_llp->add_option("--map-s", map_s_spec, "S map spec");
    cmd_llp->add_option("--x0", x0_spec, "initial x (number or 'random')");
    cmd_llp->add_option("--y0", y0_spec, "initial y (number or 'random')");
    cmd_llp->add_option("--n-list", n_list_spec, "comma-separated matrix sizes");
    cmd_llp->add_option("--k-grid", k_grid, "discretization grid size");
    add_common(cmd_llp);

    auto* cmd_hs = app.add_subcommand("hs", "symmetric-mean ergodic limit experiment");
    cmd_hs->add_option("--g", g_spec, "catalog g (const:c|exp-sin|two-val[:a,b])");
    cmd_hs->add_option("--c", hs_c, "proportion parameter in (0,1)");
    cmd_hs->add_option("--n", hs_n, "orbit length");
    add_common(cmd_hs);

    auto* cmd_fuzz = app.add_subcommand("fuzz", "bound/conjecture fuzzing");
    cmd_fuzz->add_option("--target", target, "vdw|brualdi|conj2")->required();
    cmd_fuzz->add_option("--trials", trials, "number of trials");
    cmd_fuzz->add_option("--n", fuzz_n, "matrix order");
    add_common(cmd_fuzz);

    CLI11_PARSE(app, argc, argv);

    Output out;
    try {
        out.path = out_path;

        if (cmd_per->parsed()) {
            auto m = load_matrix(matrix_file);
            int is_zero = 0;
            double lv = 0.0;
            check(ps_permanent(m.p, cap_n, threads, &is_zero, &lv));
            json j{{"is_zero", is_zero != 0}};
            if (is_zero) {
                j["permanent"] = 0.0;
            } else {
                j["log_permanent"] = lv;
                j["permanent"] = std::exp(lv);
            }
            emit_json(out, j);
        } else if (cmd_pmean->parsed()) {
            auto m = load_matrix(matrix_file);
            emit_json(out, json{{"pmean", pmean_of(m.p, cap_n, threads)}});
        } else if (cmd_smean->parsed()) {
            auto m = load_matrix(matrix_file);
            emit_json(out, json{{"smean", smean_of(m.p, tol, max_iter)}});
        } else if (cmd_sink->parsed()) {
            auto m = load_matrix(matrix_file);
            size_t n = ps_matrix_rows(m.p);
            std::vector<double> d(n), e(n);
            MatrixHandle s;
            size_t iters = 0;
            double residual = 0.0, kappa = -1.0;
            check(ps_sinkhorn(m.p, tol, max_iter, d.data(), e.data(), &s.p, &iters, &residual,
                              &kappa));
            json j{{"d", d},       {"e", e},
                   {"s", matrix_to_json(s.p)}, {"iterations", iters},
                   {"residual", residual}};
            j["certificate"] = kappa >= 0.0 ? json(kappa) : json(nullptr);
            emit_json(out, j);
        } else if (cmd_pi->parsed()) {
            auto m = load_matrix(matrix_file);
            MatrixHandle pi;
            int in_pn = 0;
            check(ps_pi_projection(m.p, &pi.p, &in_pn));
            emit_json(out, json{{"pi", matrix_to_json(pi.p)}, {"in_Pn", in_pn != 0}});
        } else if (cmd_fried->parsed()) {
            auto a = load_matrix(matrix_file);
            size_t n = ps_matrix_rows(a.p);
            if (n * m_max > cap_n)
                fail(3, "cap_exceeded", "n*m_max exceeds the permanent cap");
            double sm = smean_of(a.p, tol, max_iter);
            auto& os = out.stream();
            os << "m,pmean_kron,smean_A,abs_err\n";
            for (size_t m = 1; m <= m_max; ++m) {
                auto u = all_ones(m);
                MatrixHandle k;
                check(ps_matrix_kron(a.p, u.p, &k.p));
                double pm = pmean_of(k.p, cap_n, threads);
                os << m << ',' << format_double(pm) << ',' << format_double(sm) << ','
                   << format_double(std::abs(pm - sm)) << "\n";
            }
        } else if (cmd_llp->parsed()) {
            Fn2 f = parse_fn2(fname);
            RngHandle rng(seed);
            auto mt = parse_map(map_t_spec, kAlphaT);
            auto ms = parse_map(map_s_spec, kAlphaS);
            double x0 = parse_point(x0_spec, rng);
            double y0 = parse_point(y0_spec, rng);
            auto sizes = parse_size_list(n_list_spec);

            GridHandle grid, grid2;
            check(ps_discretize(fn2_thunk, &f, f.lambda, k_grid, 8, &grid.p));
            check(ps_discretize(fn2_thunk, &f, f.lambda, 2 * k_grid, 8, &grid2.p));
            double sm = 0.0, sm2 = 0.0;
            check(ps_functional_scaling_mean(grid.p, tol, &sm));
            check(ps_functional_scaling_mean(grid2.p, tol, &sm2));
            std::cerr << "# grid refinement k=" << k_grid << " -> " << 2 * k_grid
                      << ": smean " << format_double(sm) << " -> " << format_double(sm2)
                      << " (|diff| = " << format_double(std::abs(sm - sm2)) << ")\n";

            auto& os = out.stream();
            os << "n,pmean_Dn,smean_f,abs_err\n";
            for (size_t n : sizes) {
                if (n > cap_n) fail(3, "cap_exceeded", "n exceeds the permanent cap");
                MatrixHandle dm;
                check(ps_dynamical_matrix(fn2_thunk, &f, mt.p, ms.p, x0, y0, n, &dm.p));
                double pm = pmean_of(dm.p, cap_n, threads);
                os << n << ',' << format_double(pm) << ',' << format_double(sm) << ','
                   << format_double(std::abs(pm - sm)) << "\n";
            }
        } else if (cmd_hs->parsed()) {
            Fn1 g = parse_fn1(g_spec);
            if (hs_n > 1000000) fail(1, "invalid_argument", "orbit length capped at 1e6");
            if (!(hs_c > 0.0 && hs_c < 1.0))
                fail(1, "invalid_argument", "c must be in (0,1)");
            RngHandle rng(seed);
            MapHandle rot;
            check(ps_map_rotation(kAlphaT, &rot.p));
            double x0 = rng.uniform();
            std::vector<double> pts(hs_n);
            check(ps_orbit(rot.p, x0, hs_n, pts.data()));
            std::vector<double> vals(hs_n);
            for (size_t i = 0; i < hs_n; ++i) vals[i] = g.eval(pts[i]);

            size_t k = static_cast<size_t>(std::llround(hs_c * static_cast<double>(hs_n)));
            k = std::min(std::max<size_t>(k, 1), hs_n);
            double emp = 0.0;
            check(ps_symmetric_mean(vals.data(), hs_n, k, &emp));

            // formula side: integrate g over [0,1] by midpoint quadrature
            const size_t quad = 65536;
            std::vector<double> gq(quad), wq(quad, 1.0 / static_cast<double>(quad));
            for (size_t i = 0; i < quad; ++i)
                gq[i] = g.eval((static_cast<double>(i) + 0.5) / static_cast<double>(quad));
            double limit = 0.0, r = 0.0;
            check(ps_hs_limit(gq.data(), wq.data(), quad, hs_c, &limit, &r));

            auto& os = out.stream();
            os << "n,sym_k_empirical,hs_formula,rel_err\n";
            os << hs_n << ',' << format_double(emp) << ',' << format_double(limit) << ','
               << format_double(std::abs(emp - limit) / std::max(std::abs(limit), 1e-300))
               << "\n";
        } else if (cmd_fuzz->parsed()) {
            RngHandle rng(seed);
            auto& os = out.stream();
            size_t violations = 0;
            if (target == "vdw") {
                os << "trial,n,slack_lower,slack_upper,violation\n";
                double ratio = static_cast<double>(fuzz_n) *
                               std::exp(-std::lgamma(static_cast<double>(fuzz_n) + 1.0) /
                                        static_cast<double>(fuzz_n));
                for (size_t t = 0; t < trials; ++t) {
                    auto a = random_matrix(rng, fuzz_n, t % 3 == 0 ? 0.25 : 0.0);
                    double pm = pmean_of(a.p, cap_n, threads);
                    double sm = smean_of(a.p, tol, max_iter);
                    double lo = pm - sm;
                    double hi = ratio * sm - pm;
                    bool bad = lo < -1e-10 || hi < -1e-10;
                    violations += bad;
                    os << t << ',' << fuzz_n << ',' << format_double(lo) << ','
                       << format_double(hi) << ',' << (bad ? 1 : 0) << "\n";
                }
            } else if (target == "brualdi") {
                os << "trial,n,slack,violation\n";
                for (size_t t = 0; t < trials; ++t) {
                    auto a = random_matrix(rng, fuzz_n, 0.0);
                    auto b = random_matrix(rng, fuzz_n, 0.0);
                    if (fuzz_n * fuzz_n > cap_n)
                        fail(3, "cap_exceeded", "n^2 exceeds the permanent cap");
                    MatrixHandle k;
                    check(ps_matrix_kron(a.p, b.p, &k.p));
                    double slack = pmean_of(a.p, cap_n, threads) * pmean_of(b.p, cap_n, threads) -
                                   pmean_of(k.p, cap_n, threads);
                    bool bad = slack < 0.0;
                    violations += bad;
                    os << t << ',' << fuzz_n << ',' << format_double(slack) << ','
                       << (bad ? 1 : 0) << "\n";
                }
            } else if (target == "conj2") {
                os << "trial,n,abs_dev\n";
                for (size_t t = 0; t < trials; ++t) {
                    auto a = random_lambda_bounded(rng, fuzz_n, 2.0);
                    // rescale to row/column arithmetic means 1: Sinkhorn, then n*S
                    size_t n = fuzz_n;
                    std::vector<double> d(n), e(n);
                    MatrixHandle s;
                    size_t iters = 0;
                    double residual = 0.0, kappa = -1.0;
                    check(ps_sinkhorn(a.p, tol, max_iter, d.data(), e.data(), &s.p, &iters,
                                      &residual, &kappa));
                    std::vector<double> data(n * n);
                    ps_matrix_copy_data(s.p, data.data());
                    for (auto& v : data) v *= static_cast<double>(n);
                    MatrixHandle ns;
                    check(ps_matrix_create(n, n, data.data(), &ns.p));
                    double pm = pmean_of(ns.p, cap_n, threads);
                    os << t << ',' << n << ',' << format_double(std::abs(pm - 1.0)) << "\n";
                }
            } else {
                fail(1, "invalid_argument", "unknown fuzz target '" + target + "'");
            }
            std::cerr << "# " << target << ": " << trials << " trials, " << violations
                      << " violations\n";
        }
    } catch (const CliError& e) {
        json j{{"error", {{"code", e.code}, {"detail", e.detail}}}};
        std::cout << j.dump(2) << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        json j{{"error", {{"code", "internal_error"}, {"detail", e.what()}}}};
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    return 0;
}
