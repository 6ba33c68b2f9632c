/* C interface for the mupi library. Generated by cbindgen; do not edit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a C API call.
typedef enum MupiStatus {
  MUPI_STATUS_OK = 0,
  // invalid argument or unsupported value
  MUPI_STATUS_ARGUMENT = 1,
  // expression syntax error; see mupi_last_error_offset()
  MUPI_STATUS_PARSE = 2,
  // missing or malformed input data
  MUPI_STATUS_DATA = 3,
  // operation outside the supported range
  MUPI_STATUS_CAPABILITY = 4,
  // internal invariant violation (bug)
  MUPI_STATUS_INTERNAL = 5,
  // a required pointer argument was null
  MUPI_STATUS_NULL_POINTER = 6,
  // a string argument was not valid UTF-8
  MUPI_STATUS_UTF8 = 7,
} MupiStatus;

// Parsed representation expression.
typedef struct MupiRep MupiRep;

// Session: eigenvalue registry plus loaded Maass datasets.
typedef struct MupiSession MupiSession;

// Sieved Mobius table.
typedef struct MupiTable MupiTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *mupi_version(void);

// Create a session. Free with mupi_session_free.
struct MupiSession *mupi_session_new(void);

// # Safety
// `s` must be a pointer returned by mupi_session_new, freed at most once.
void mupi_session_free(struct MupiSession *s);

// Set the directory for exact q-expansion cache tables.
//
// # Safety
// `s` must be a live session handle; `dir` a NUL-terminated string.
enum MupiStatus mupi_session_set_cache_dir(struct MupiSession *s, const char *dir);

// Load and validate a Maass dataset file; writes the session id
// (`maass:<file stem>`) into id_out when provided.
//
// # Safety
// `s` must be a live session handle; `path` a NUL-terminated string;
// `id_out` either null or valid for `id_cap` bytes.
enum MupiStatus mupi_session_load_maass(struct MupiSession *s,
                                        const char *path,
                                        char *id_out,
                                        size_t id_cap);

// Parse a representation expression. `s` may be null when the expression
// uses no Maass forms. On success `*out` owns the new handle.
//
// # Safety
// `text` must be NUL-terminated; `out` non-null.
enum MupiStatus mupi_rep_parse(const struct MupiSession *s, const char *text, struct MupiRep **out);

// # Safety
// `r` must be a pointer returned by mupi_rep_parse, freed at most once.
void mupi_rep_free(struct MupiRep *r);

// Degree of the associated L-function (0 on a null handle).
//
// # Safety
// `r` must be a live rep handle or null.
uint64_t mupi_rep_degree(const struct MupiRep *r);

// Canonical string form of the expression; returns the needed buffer
// length including the NUL terminator.
//
// # Safety
// `r` must be a live rep handle; `buf` either null or valid for `cap` bytes.
size_t mupi_rep_format(const struct MupiRep *r, char *buf, size_t cap);

// Compute or load eigenvalue data for every prime p <= limit needed by the
// expression's base forms.
//
// # Safety
// `s` and `r` must be live handles.
enum MupiStatus mupi_session_prepare(struct MupiSession *s,
                                     const struct MupiRep *r,
                                     uint64_t limit);

// Local data at prime p: lambda(p) into *lambda_out, mu(p^0..p^d) into
// mobius_out (up to mobius_cap entries; *mobius_len gets d+1, the full
// count, so callers can size a retry buffer).
//
// # Safety
// Handles must be live; out pointers null or valid as described.
enum MupiStatus mupi_local_data(const struct MupiSession *s,
                                const struct MupiRep *r,
                                uint64_t p,
                                double *lambda_out,
                                double *mobius_out,
                                size_t mobius_cap,
                                size_t *mobius_len);

// Sieve mu(n) for n <= n_max. The session must have been prepared to at
// least n_max for this expression.
//
// # Safety
// Handles must be live; `out` non-null.
enum MupiStatus mupi_mobius_table_new(const struct MupiSession *s,
                                      const struct MupiRep *r,
                                      uint64_t n_max,
                                      struct MupiTable **out);

// # Safety
// `t` must be a pointer returned by mupi_mobius_table_new, freed at most once.
void mupi_table_free(struct MupiTable *t);

// Upper bound N of the table (0 on a null handle).
//
// # Safety
// `t` must be a live table handle or null.
uint64_t mupi_table_n_max(const struct MupiTable *t);

// mu(n) into *out.
//
// # Safety
// `t` must be a live table handle; `out` non-null.
enum MupiStatus mupi_table_value(const struct MupiTable *t, uint64_t n, double *out);

// S(x) = sum_{n<=x} |mu(n)| into *out (linear scan).
//
// # Safety
// `t` must be a live table handle; `out` non-null.
enum MupiStatus mupi_table_abs_sum(const struct MupiTable *t, uint64_t x, double *out);

// Exact check of Sym^m x Sym^{m+r} = (+) Sym^{2i+r}; returns 1 when the
// multisets agree, 0 otherwise.
int32_t mupi_check_decomposition(uint32_t m, uint32_t r);

// Runs the tensor-power identity suite; returns the number of failing
// identities (0 = all pass).
int32_t mupi_power_identity_failures(void);

// Decay exponent eta for the pair Sym^{m1} x Sym^{m2}; fails with
// MUPI_STATUS_ARGUMENT when m1 = m2 = 0.
//
// # Safety
// `out` must be non-null.
enum MupiStatus mupi_eta_exponent(uint32_t m1, uint32_t m2, double *out);

// Copy the last error message on this thread into buf; returns the needed
// length including the NUL terminator.
//
// # Safety
// `buf` either null or valid for `cap` bytes.
size_t mupi_last_error_message(char *buf, size_t cap);

// Byte offset of the last parse error on this thread, or -1.
int64_t mupi_last_error_offset(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
