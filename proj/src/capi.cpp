#include "permascale.h"

#include <cstring>
#include <string>

#include "permascale/dynamics.hpp"
#include "permascale/funcspace.hpp"
#include "permascale/matrix.hpp"
#include "permascale/means.hpp"
#include "permascale/pattern.hpp"
#include "permascale/permanent.hpp"
#include "permascale/rng.hpp"
#include "permascale/scaling.hpp"

using namespace permascale;

struct ps_matrix {
    NonnegMatrix m;
};
struct ps_grid {
    GridFunction g;
};
struct ps_map {
    IntervalMap m;
};
struct ps_rng {
    Rng r;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
ps_status guarded(F&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PS_OK;
    } catch (const DimensionError& e) {
        g_last_error = e.what();
        return PS_ERR_DIMENSION;
    } catch (const IndexError& e) {
        g_last_error = e.what();
        return PS_ERR_INDEX;
    } catch (const CapExceeded& e) {
        g_last_error = e.what();
        return PS_ERR_CAP_EXCEEDED;
    } catch (const NotInPn& e) {
        g_last_error = e.what();
        return PS_ERR_NOT_IN_PN;
    } catch (const MaxIterExceeded& e) {
        g_last_error = e.what();
        return PS_ERR_MAX_ITER;
    } catch (const FunctionalMaxIterExceeded& e) {
        g_last_error = e.what();
        return PS_ERR_MAX_ITER;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return PS_ERR_PARSE;
    } catch (const NonPositiveEntry& e) {
        g_last_error = e.what();
        return PS_ERR_NONPOSITIVE;
    } catch (const NegativeEntry& e) {
        g_last_error = e.what();
        return PS_ERR_NONPOSITIVE;
    } catch (const BoundsViolated& e) {
        g_last_error = e.what();
        return PS_ERR_BOUNDS;
    } catch (const BracketFailure& e) {
        g_last_error = e.what();
        return PS_ERR_BRACKET;
    } catch (const AllZeroAlpha& e) {
        g_last_error = e.what();
        return PS_ERR_DOMAIN;
    } catch (const ZeroMeanExponent& e) {
        g_last_error = e.what();
        return PS_ERR_DOMAIN;
    } catch (const DomainError& e) {
        g_last_error = e.what();
        return PS_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PS_ERR_INTERNAL;
    }
}

ps_status require(bool ok, const char* msg) {
    if (ok) return PS_OK;
    g_last_error = msg;
    return PS_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* ps_status_name(ps_status status) {
    switch (status) {
        case PS_OK: return "ok";
        case PS_ERR_DIMENSION: return "dimension_error";
        case PS_ERR_INDEX: return "index_error";
        case PS_ERR_CAP_EXCEEDED: return "cap_exceeded";
        case PS_ERR_NOT_IN_PN: return "not_in_pn";
        case PS_ERR_MAX_ITER: return "max_iter_exceeded";
        case PS_ERR_DOMAIN: return "domain_error";
        case PS_ERR_PARSE: return "parse_error";
        case PS_ERR_NONPOSITIVE: return "nonpositive_entry";
        case PS_ERR_BOUNDS: return "bounds_violated";
        case PS_ERR_BRACKET: return "bracket_failure";
        case PS_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case PS_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* ps_last_error_detail(void) { return g_last_error.c_str(); }

const char* ps_version(void) { return "0.1.0"; }

ps_status ps_matrix_create(size_t rows, size_t cols, const double* data, ps_matrix** out) {
    if (auto st = require(data && out, "null pointer")) return st;
    return guarded([&] {
        std::vector<double> v(data, data + rows * cols);
        *out = new ps_matrix{NonnegMatrix(rows, cols, std::move(v))};
    });
}

ps_status ps_matrix_parse(const char* text, ps_matrix** out) {
    if (auto st = require(text && out, "null pointer")) return st;
    return guarded([&] { *out = new ps_matrix{NonnegMatrix::parse(text)}; });
}

void ps_matrix_free(ps_matrix* m) { delete m; }

size_t ps_matrix_rows(const ps_matrix* m) { return m ? m->m.rows() : 0; }
size_t ps_matrix_cols(const ps_matrix* m) { return m ? m->m.cols() : 0; }

ps_status ps_matrix_copy_data(const ps_matrix* m, double* buffer) {
    if (auto st = require(m && buffer, "null pointer")) return st;
    std::memcpy(buffer, m->m.data().data(), m->m.data().size() * sizeof(double));
    return PS_OK;
}

ps_status ps_matrix_kron(const ps_matrix* a, const ps_matrix* b, ps_matrix** out) {
    if (auto st = require(a && b && out, "null pointer")) return st;
    return guarded([&] { *out = new ps_matrix{kron(a->m, b->m)}; });
}

ps_status ps_permanent(const ps_matrix* m, size_t cap, unsigned threads, int* is_zero,
                       double* log_value) {
    if (auto st = require(m && is_zero && log_value, "null pointer")) return st;
    return guarded([&] {
        LogPermanent p = permanent(m->m, cap, threads);
        *is_zero = p.is_zero;
        *log_value = p.log_value;
    });
}

ps_status ps_permanent_naive(const ps_matrix* m, int* is_zero, double* log_value) {
    if (auto st = require(m && is_zero && log_value, "null pointer")) return st;
    return guarded([&] {
        LogPermanent p = permanent_naive(m->m);
        *is_zero = p.is_zero;
        *log_value = p.log_value;
    });
}

ps_status ps_permanental_mean(const ps_matrix* m, size_t cap, unsigned threads, double* out) {
    if (auto st = require(m && out, "null pointer")) return st;
    return guarded([&] { *out = permanental_mean(m->m, cap, threads); });
}

ps_status ps_permanent_minor(const ps_matrix* m, size_t i, size_t j, double* out) {
    if (auto st = require(m && out, "null pointer")) return st;
    return guarded([&] { *out = permanent_minor(m->m, i, j); });
}

ps_status ps_scaling_mean(const ps_matrix* m, double tol, size_t max_iter, double* out) {
    if (auto st = require(m && out, "null pointer")) return st;
    return guarded([&] { *out = scaling_mean(m->m, tol, max_iter); });
}

ps_status ps_scaling_mean_2x2(double a, double b, double c, double d, double* out) {
    if (auto st = require(out != nullptr, "null pointer")) return st;
    return guarded([&] { *out = scaling_mean_2x2(a, b, c, d); });
}

ps_status ps_sinkhorn(const ps_matrix* m, double tol, size_t max_iter, double* d, double* e,
                      ps_matrix** s, size_t* iterations, double* residual, double* kappa) {
    if (auto st = require(m && d && e && s && iterations && residual && kappa, "null pointer"))
        return st;
    return guarded([&] {
        SinkhornFactorization f = sinkhorn(m->m, tol, max_iter);
        std::memcpy(d, f.d.data(), f.d.size() * sizeof(double));
        std::memcpy(e, f.e.data(), f.e.size() * sizeof(double));
        *iterations = f.iterations;
        *residual = f.residual;
        *kappa = f.certificate.value_or(-1.0);
        *s = new ps_matrix{std::move(f.s)};
    });
}

ps_status ps_hilbert_distance(const double* u, const double* v, size_t n, double* out) {
    if (auto st = require(u && v && out, "null pointer")) return st;
    return guarded([&] { *out = hilbert_distance({u, n}, {v, n}); });
}

ps_status ps_spectral_radius_cross_check(const ps_matrix* m, double tol, double* lhs,
                                         double* rhs) {
    if (auto st = require(m && lhs && rhs, "null pointer")) return st;
    return guarded([&] {
        auto [l, r] = spectral_radius_cross_check(m->m, tol);
        *lhs = l;
        *rhs = r;
    });
}

ps_status ps_pi_projection(const ps_matrix* m, ps_matrix** projected, int* in_pn) {
    if (auto st = require(m && projected && in_pn, "null pointer")) return st;
    return guarded([&] {
        auto [pi, report] = pi_projection(m->m);
        *in_pn = report.in_pn;
        *projected = new ps_matrix{std::move(pi)};
    });
}

ps_status ps_frobenius_konig_witness(const ps_matrix* m, int* found, size_t* row_set,
                                     size_t* rows_len, size_t* col_set, size_t* cols_len) {
    if (auto st = require(m && found && row_set && rows_len && col_set && cols_len,
                          "null pointer"))
        return st;
    return guarded([&] {
        auto w = frobenius_konig_witness(m->m);
        *found = w.has_value();
        if (w) {
            *rows_len = w->rows.size();
            *cols_len = w->cols.size();
            std::memcpy(row_set, w->rows.data(), w->rows.size() * sizeof(size_t));
            std::memcpy(col_set, w->cols.data(), w->cols.size() * sizeof(size_t));
        }
    });
}

ps_status ps_grid_create(size_t m, size_t n, const double* values, const double* mu,
                         const double* nu, ps_grid** out) {
    if (auto st = require(values && mu && nu && out, "null pointer")) return st;
    return guarded([&] {
        *out = new ps_grid{GridFunction(
            NonnegMatrix(m, n, std::vector<double>(values, values + m * n)),
            std::vector<double>(mu, mu + m), std::vector<double>(nu, nu + n))};
    });
}

ps_status ps_grid_parse_json(const char* text, ps_grid** out) {
    if (auto st = require(text && out, "null pointer")) return st;
    return guarded([&] { *out = new ps_grid{GridFunction::from_json(text)}; });
}

void ps_grid_free(ps_grid* g) { delete g; }

size_t ps_grid_rows(const ps_grid* g) { return g ? g->g.m() : 0; }
size_t ps_grid_cols(const ps_grid* g) { return g ? g->g.n() : 0; }

ps_status ps_functional_sinkhorn(const ps_grid* g, double tol, size_t max_iter, double* phi,
                                 double* psi, ps_grid** core, size_t* iterations,
                                 double* residual, double* kappa) {
    if (auto st =
            require(g && phi && psi && core && iterations && residual && kappa, "null pointer"))
        return st;
    return guarded([&] {
        FunctionalSinkhorn f = functional_sinkhorn(g->g, tol, max_iter);
        std::memcpy(phi, f.phi.data(), f.phi.size() * sizeof(double));
        std::memcpy(psi, f.psi.data(), f.psi.size() * sizeof(double));
        *iterations = f.iterations;
        *residual = f.residual;
        *kappa = f.kappa;
        *core = new ps_grid{std::move(f.g)};
    });
}

ps_status ps_functional_scaling_mean(const ps_grid* g, double tol, double* out) {
    if (auto st = require(g && out, "null pointer")) return st;
    return guarded([&] { *out = functional_scaling_mean(g->g, tol); });
}

ps_status ps_two_block_scaling_mean(const double* f0, const double* f1, const double* mu,
                                    size_t m, double c, double tol, double* smean, double* r) {
    if (auto st = require(f0 && f1 && mu && smean && r, "null pointer")) return st;
    return guarded([&] {
        auto res = two_block_scaling_mean({f0, m}, {f1, m}, {mu, m}, c, tol);
        *smean = res.smean;
        *r = res.r;
    });
}

ps_status ps_discretize(ps_fn2 f, void* ctx, double lambda, size_t k, size_t q,
                        ps_grid** out) {
    if (auto st = require(f && out, "null pointer")) return st;
    return guarded([&] {
        *out = new ps_grid{
            discretize([f, ctx](double x, double y) { return f(x, y, ctx); }, lambda, k, q)};
    });
}

ps_status ps_map_rotation(double alpha, ps_map** out) {
    if (auto st = require(out != nullptr, "null pointer")) return st;
    return guarded([&] { *out = new ps_map{IntervalMap::rotation(alpha)}; });
}

ps_status ps_map_doubling(ps_map** out) {
    if (auto st = require(out != nullptr, "null pointer")) return st;
    return guarded([&] { *out = new ps_map{IntervalMap::doubling()}; });
}

ps_status ps_map_cyclic(size_t k, ps_map** out) {
    if (auto st = require(out != nullptr, "null pointer")) return st;
    return guarded([&] { *out = new ps_map{IntervalMap::cyclic(k)}; });
}

void ps_map_free(ps_map* m) { delete m; }

ps_status ps_orbit(const ps_map* map, double x0, size_t n, double* out) {
    if (auto st = require(map && out, "null pointer")) return st;
    return guarded([&] {
        auto o = orbit(map->m, x0, n);
        std::memcpy(out, o.data(), o.size() * sizeof(double));
    });
}

ps_status ps_birkhoff_average(const ps_map* map, ps_fn1 phi, void* ctx, double x, size_t n,
                              double* out) {
    if (auto st = require(map && phi && out, "null pointer")) return st;
    return guarded([&] {
        *out = birkhoff_average(map->m, [phi, ctx](double p) { return phi(p, ctx); }, x, n);
    });
}

ps_status ps_dynamical_matrix(ps_fn2 f, void* ctx, const ps_map* t, const ps_map* s, double x,
                              double y, size_t n, ps_matrix** out) {
    if (auto st = require(f && t && s && out, "null pointer")) return st;
    return guarded([&] {
        *out = new ps_matrix{dynamical_matrix(
            [f, ctx](double a, double b) { return f(a, b, ctx); }, t->m, s->m, x, y, n)};
    });
}

ps_status ps_symmetric_mean(const double* z, size_t n, size_t k, double* out) {
    if (auto st = require(z && out, "null pointer")) return st;
    return guarded([&] { *out = symmetric_mean({z, n}, k); });
}

ps_status ps_muirhead_mean(const double* z, const double* alpha, size_t n, size_t cap,
                           double* out) {
    if (auto st = require(z && alpha && out, "null pointer")) return st;
    return guarded([&] { *out = muirhead_mean({z, n}, {alpha, n}, cap); });
}

ps_status ps_hs_limit(const double* g, const double* w, size_t n, double c, double* limit,
                      double* r) {
    if (auto st = require(g && w && limit && r, "null pointer")) return st;
    return guarded([&] {
        auto h = hs_limit({g, n}, {w, n}, c);
        *limit = h.limit;
        *r = h.r;
    });
}

ps_status ps_muirhead_limit(const double* g, const double* mu, size_t m, const double* h,
                            const double* nu, size_t n, double tol, double* out) {
    if (auto st = require(g && mu && h && nu && out, "null pointer")) return st;
    return guarded([&] { *out = muirhead_limit({g, m}, {mu, m}, {h, n}, {nu, n}, tol); });
}

ps_status ps_rng_create(uint64_t seed, ps_rng** out) {
    if (auto st = require(out != nullptr, "null pointer")) return st;
    *out = new ps_rng{Rng(seed)};
    return PS_OK;
}

void ps_rng_free(ps_rng* r) { delete r; }

uint64_t ps_rng_next_u64(ps_rng* r) { return r->r.next_u64(); }

double ps_rng_uniform(ps_rng* r) { return r->r.uniform(); }

} // extern "C"
