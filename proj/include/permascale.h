/* permascale C API: opaque handles and error codes over the C++ core.
 *
 * All functions return ps_status; outputs are written through pointers.
 * ps_last_error_detail() returns a thread-local message for the most recent
 * failure on the calling thread.
 */
#ifndef PERMASCALE_H
#define PERMASCALE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PS_API __declspec(dllexport)
#else
#define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ps_matrix ps_matrix;
typedef struct ps_grid ps_grid;
typedef struct ps_map ps_map;
typedef struct ps_rng ps_rng;

typedef enum ps_status {
    PS_OK = 0,
    PS_ERR_DIMENSION = 1,
    PS_ERR_INDEX = 2,
    PS_ERR_CAP_EXCEEDED = 3,
    PS_ERR_NOT_IN_PN = 4,
    PS_ERR_MAX_ITER = 5,
    PS_ERR_DOMAIN = 6,
    PS_ERR_PARSE = 7,
    PS_ERR_NONPOSITIVE = 8,
    PS_ERR_BOUNDS = 9,
    PS_ERR_BRACKET = 10,
    PS_ERR_INVALID_ARGUMENT = 11,
    PS_ERR_INTERNAL = 12
} ps_status;

PS_API const char* ps_status_name(ps_status status);
PS_API const char* ps_last_error_detail(void);
PS_API const char* ps_version(void);

/* ---- matrices (shared text format: rows of comma/space separated values,
 *      '#' comment lines) ---- */
PS_API ps_status ps_matrix_create(size_t rows, size_t cols, const double* data,
                                  ps_matrix** out);
PS_API ps_status ps_matrix_parse(const char* text, ps_matrix** out);
PS_API void ps_matrix_free(ps_matrix* m);
PS_API size_t ps_matrix_rows(const ps_matrix* m);
PS_API size_t ps_matrix_cols(const ps_matrix* m);
/* buffer must hold rows*cols doubles, row-major */
PS_API ps_status ps_matrix_copy_data(const ps_matrix* m, double* buffer);
PS_API ps_status ps_matrix_kron(const ps_matrix* a, const ps_matrix* b, ps_matrix** out);

/* ---- permanents ---- */
PS_API ps_status ps_permanent(const ps_matrix* m, size_t cap, unsigned threads,
                              int* is_zero, double* log_value);
PS_API ps_status ps_permanent_naive(const ps_matrix* m, int* is_zero, double* log_value);
PS_API ps_status ps_permanental_mean(const ps_matrix* m, size_t cap, unsigned threads,
                                     double* out);
PS_API ps_status ps_permanent_minor(const ps_matrix* m, size_t i, size_t j, double* out);

/* ---- scaling ---- */
PS_API ps_status ps_scaling_mean(const ps_matrix* m, double tol, size_t max_iter,
                                 double* out);
PS_API ps_status ps_scaling_mean_2x2(double a, double b, double c, double d, double* out);
/* d and e must hold n doubles; kappa is set to -1 when no certificate applies */
PS_API ps_status ps_sinkhorn(const ps_matrix* m, double tol, size_t max_iter, double* d,
                             double* e, ps_matrix** s, size_t* iterations, double* residual,
                             double* kappa);
PS_API ps_status ps_hilbert_distance(const double* u, const double* v, size_t n,
                                     double* out);
PS_API ps_status ps_spectral_radius_cross_check(const ps_matrix* m, double tol, double* lhs,
                                                double* rhs);

/* ---- zero-pattern structure ---- */
PS_API ps_status ps_pi_projection(const ps_matrix* m, ps_matrix** projected, int* in_pn);
/* found = 0 and the index buffers untouched when per A > 0; row_set/col_set
 * must hold n+1 size_t each; *rows_len + *cols_len = n + 1 on success */
PS_API ps_status ps_frobenius_konig_witness(const ps_matrix* m, int* found, size_t* row_set,
                                            size_t* rows_len, size_t* col_set,
                                            size_t* cols_len);

/* ---- weighted product grids ---- */
PS_API ps_status ps_grid_create(size_t m, size_t n, const double* values, const double* mu,
                                const double* nu, ps_grid** out);
PS_API ps_status ps_grid_parse_json(const char* text, ps_grid** out);
PS_API void ps_grid_free(ps_grid* g);
PS_API size_t ps_grid_rows(const ps_grid* g);
PS_API size_t ps_grid_cols(const ps_grid* g);
PS_API ps_status ps_functional_sinkhorn(const ps_grid* g, double tol, size_t max_iter,
                                        double* phi, double* psi, ps_grid** core,
                                        size_t* iterations, double* residual, double* kappa);
PS_API ps_status ps_functional_scaling_mean(const ps_grid* g, double tol, double* out);
PS_API ps_status ps_two_block_scaling_mean(const double* f0, const double* f1,
                                           const double* mu, size_t m, double c, double tol,
                                           double* smean, double* r);

typedef double (*ps_fn2)(double x, double y, void* ctx);
typedef double (*ps_fn1)(double x, void* ctx);

PS_API ps_status ps_discretize(ps_fn2 f, void* ctx, double lambda, size_t k, size_t q,
                               ps_grid** out);

/* ---- interval maps ---- */
PS_API ps_status ps_map_rotation(double alpha, ps_map** out);
PS_API ps_status ps_map_doubling(ps_map** out);
PS_API ps_status ps_map_cyclic(size_t k, ps_map** out);
PS_API void ps_map_free(ps_map* m);
PS_API ps_status ps_orbit(const ps_map* map, double x0, size_t n, double* out);
PS_API ps_status ps_birkhoff_average(const ps_map* map, ps_fn1 phi, void* ctx, double x,
                                     size_t n, double* out);
PS_API ps_status ps_dynamical_matrix(ps_fn2 f, void* ctx, const ps_map* t, const ps_map* s,
                                     double x, double y, size_t n, ps_matrix** out);

/* ---- symmetric and Muirhead means ---- */
PS_API ps_status ps_symmetric_mean(const double* z, size_t n, size_t k, double* out);
PS_API ps_status ps_muirhead_mean(const double* z, const double* alpha, size_t n, size_t cap,
                                  double* out);
PS_API ps_status ps_hs_limit(const double* g, const double* w, size_t n, double c,
                             double* limit, double* r);
PS_API ps_status ps_muirhead_limit(const double* g, const double* mu, size_t m,
                                   const double* h, const double* nu, size_t n, double tol,
                                   double* out);

/* ---- deterministic RNG (counter-based SplitMix64) ---- */
PS_API ps_status ps_rng_create(uint64_t seed, ps_rng** out);
PS_API void ps_rng_free(ps_rng* r);
PS_API uint64_t ps_rng_next_u64(ps_rng* r);
PS_API double ps_rng_uniform(ps_rng* r);

#ifdef __cplusplus
}
#endif

#endif /* PERMASCALE_H */
