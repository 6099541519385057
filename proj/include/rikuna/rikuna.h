/* C interface to the rikuna library.
 *
 * Every entry point returns an rk_status. On failure rk_last_error() holds
 * a message for the calling thread until its next call into the library.
 * Composite results are returned as rk_report handles carrying JSON text in
 * which integers of arbitrary size are decimal strings.
 */
#ifndef RIKUNA_H
#define RIKUNA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_PARAMETER = 1,
  RK_ERR_DOMAIN = 2,
  RK_ERR_PRECONDITION = 3,
  RK_ERR_IO = 4,
  RK_ERR_INTERNAL = 5,
  RK_ERR_NULL = 6
} rk_status;

typedef struct rk_report rk_report;
typedef struct rk_map rk_map;

RK_API const char* rk_version(void);
RK_API const char* rk_last_error(void);
RK_API const char* rk_status_name(rk_status s);

/* Seed for the randomized splitting step of finite-field factorization.
 * Results never depend on it. */
RK_API void rk_set_factor_seed(uint64_t seed);
RK_API uint64_t rk_factor_seed(void);

RK_API const char* rk_report_json(const rk_report* r);
RK_API void rk_report_free(rk_report* r);

/* r_n(x, t; 3) over Z. Coefficients ascend from the constant term. */
RK_API rk_status rk_poly(int n, const char* t, rk_report** out);

/* r_n(x, t; l) over F_{p^k}. zeta_plus may be NULL (l = 3 uses -1, other l
 * use the canonical zeta and need p^k = 1 mod l). */
RK_API rk_status rk_poly_mod(int n, const char* t, uint32_t ell, uint64_t p, unsigned k,
                             const char* zeta_plus, rk_report** out);

/* Factored discriminant of r_n(x, t; 3) with the field discriminant. */
RK_API rk_status rk_disc(int n, const char* t, rk_report** out);

/* Index valuations of r_n(x, t; 3). p may be NULL for every relevant prime.
 * With check_montes set the closed forms are compared with Newton polygons
 * (n <= 4). */
RK_API rk_status rk_index(int n, const char* t, const char* p, int check_montes,
                          rk_report** out);

/* nu_p(index) of a monic squarefree integer polynomial given as a JSON
 * array of decimal strings or integers, constant term first. */
RK_API rk_status rk_index_poly(const char* coeffs_json, uint64_t p, rk_report** out);

/* Census of phi(x; l) on PF_q, q = 1 mod l. */
RK_API rk_status rk_graph_census(uint64_t q, uint32_t ell, rk_report** out);

/* DOT file for the graph of phi(x; l) on PF_q. */
RK_API rk_status rk_graph_dot(uint64_t q, uint32_t ell, const char* path);

/* Predicted and observed splitting of r_n(x, t; l) modulo a prime of norm
 * p^k given by the residue of zeta^+ (NULL for the default). */
RK_API rk_status rk_decompose(unsigned n, const char* t, uint64_t p, unsigned k,
                              const char* zeta_plus, uint32_t ell, rk_report** out);

/* *out = 1 when t mod the prime is maximally preperiodic. */
RK_API rk_status rk_irreducibility_certificate(const char* t, uint64_t p, unsigned k,
                                               const char* zeta_plus, uint32_t ell,
                                               int* out);

/* phi(x; l) on PF_{p^k}. Vertices are element codes 0..q-1, q is infinity. */
RK_API rk_status rk_map_new(uint64_t p, unsigned k, uint32_t ell, const char* zeta_plus,
                            rk_map** out);
RK_API void rk_map_free(rk_map* m);
RK_API uint64_t rk_map_q(const rk_map* m);
RK_API rk_status rk_map_phi(const rk_map* m, uint64_t vertex, uint64_t* out);
RK_API rk_status rk_map_orbit(const rk_map* m, uint64_t vertex, uint64_t* pper, uint64_t* per);

#ifdef __cplusplus
}
#endif

#endif
