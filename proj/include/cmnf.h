/* cmnf — exact normal forms for Levi-nondegenerate quadric perturbations.
 *
 * C interface to the cmnf engine. All handles are opaque; strings returned by
 * accessor functions are owned by the handle they were obtained from and stay
 * valid until that handle is freed. Handles are not thread safe; distinct
 * handles may be used from distinct threads.
 */
#ifndef CMNF_H
#define CMNF_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmnf_status {
    CMNF_OK = 0,
    CMNF_ERR_PARSE = 1,      /* malformed input file or text */
    CMNF_ERR_VALIDATE = 2,   /* structured validation failure */
    CMNF_ERR_INTERNAL = 3,   /* internal consistency failure */
    CMNF_ERR_CRITERION = 4,  /* a requested criterion does not hold */
    CMNF_ERR_USAGE = 5       /* bad arguments */
} cmnf_status;

typedef struct cmnf_spec cmnf_spec;
typedef struct cmnf_result cmnf_result;

const char* cmnf_version(void);

/* Parses a manifold spec from JSON text. On failure returns a status code and,
 * when errbuf is non-NULL, a NUL-terminated message truncated to errcap. */
cmnf_status cmnf_spec_parse(const char* json_text, cmnf_spec** out, char* errbuf, size_t errcap);
void cmnf_spec_free(cmnf_spec* spec);

/* Runs full validation; *report_json receives a JSON report owned by the spec. */
cmnf_status cmnf_spec_validate(cmnf_spec* spec, const char** report_json);

/* mode is "full", "weak" or "cm"; degree 0 keeps the spec cap, otherwise the run
 * is truncated at the given quasidegree. f0_series_text (holo series text) is
 * required by none of the modes and only consulted for "weak". */
cmnf_status cmnf_normalize(cmnf_spec* spec, const char* mode, int degree, const char* f0_series_text,
                           cmnf_result** out, char* errbuf, size_t errcap);
void cmnf_result_free(cmnf_result* result);

const char* cmnf_result_phi(const cmnf_result* result);        /* canonical series text */
const char* cmnf_result_transform(const cmnf_result* result);  /* canonical transform text */
const char* cmnf_result_report(const cmnf_result* result);     /* JSON */

/* Re-checks the conjugacy identity for given artifacts; *exact_zero is 1 iff the
 * residual vanishes identically. */
cmnf_status cmnf_verify(cmnf_spec* spec, const char* transform_text, const char* phi_text, int* exact_zero,
                        char* errbuf, size_t errcap);

/* space is "full", "weak" or "cm"; *pass reports exact membership, *report_json a
 * per-condition report owned by the spec. */
cmnf_status cmnf_check_nf(cmnf_spec* spec, const char* phi_text, const char* space, int* pass,
                          const char** report_json, char* errbuf, size_t errcap);

/* Convergence criterion on a normal form; *holds is 1 iff the residual vanishes. */
cmnf_status cmnf_diagnose_crucial(cmnf_spec* spec, const char* phi_text, int* holds, const char** report_json,
                                  char* errbuf, size_t errcap);

/* Fischer-norm growth profile of artifacts (transform optional). */
cmnf_status cmnf_diagnose_growth(cmnf_spec* spec, const char* phi_text, const char* transform_text,
                                 const char** report_json, char* errbuf, size_t errcap);

/* op is "delta-cubed" or "L1-tilde". Emits both a JSON report and an aligned
 * text table, owned by the spec. */
cmnf_status cmnf_diagnose_bigdenom(cmnf_spec* spec, const char* op, int i_min, int i_max, int q,
                                   const char** report_json, const char** table_text, char* errbuf,
                                   size_t errcap);

/* Regularity probe of the spec's diagonal-row system along sampled jets. */
cmnf_status cmnf_diagnose_regularity(cmnf_spec* spec, unsigned seed, const char** report_json, char* errbuf,
                                     size_t errcap);

#ifdef __cplusplus
}
#endif

#endif /* CMNF_H */
