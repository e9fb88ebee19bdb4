/* C interface to the adiabatic bound lab. All entry points are
 * exception-safe; failures return a status code and leave a message
 * retrievable via abl_last_error() (thread-local). */
#ifndef ABL_ABL_H
#define ABL_ABL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ABL_OK = 0,
  ABL_ERR_CONFIG = 1,  /* malformed config / usage error */
  ABL_ERR_PARSE = 2,   /* input file (DIMACS) parse error */
  ABL_ERR_RUNTIME = 3, /* anything else */
} abl_status;

/* Opaque experiment result: a JSON record plus an optional CSV table. */
typedef struct abl_result abl_result;

/* Runs one experiment described by a JSON config string (see the CLI for the
 * schema). On success stores a new result in *out_result; free with
 * abl_result_free. */
abl_status abl_run_json(const char* config_json, abl_result** out_result);

/* Borrowed pointers, valid until abl_result_free. */
const char* abl_result_json(const abl_result* result);
/* NULL when the experiment produced no CSV table. */
const char* abl_result_csv(const abl_result* result);
/* 1 if any verified bound was violated beyond tolerance. */
int abl_result_bound_violation(const abl_result* result);
void abl_result_free(abl_result* result);

/* Last error message on this thread ("" if none). */
const char* abl_last_error(void);

const char* abl_version(void);

/* Unitary Walsh-Hadamard transform of 2^n_qubits complex amplitudes stored
 * as interleaved (re, im) pairs, in place. */
abl_status abl_fwht(int n_qubits, double* interleaved_reim);

#ifdef __cplusplus
}
#endif

#endif /* ABL_ABL_H */
