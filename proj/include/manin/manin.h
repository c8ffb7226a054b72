#ifndef MANIN_MANIN_H
#define MANIN_MANIN_H

/* C interface to the pair library.  Every call that produces text returns a
   JSON document through `out_json`; release it with manin_string_free.  On
   MANIN_INPUT_ERROR the document is {"error": {...}}. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct manin_pair manin_pair;

typedef enum {
  MANIN_OK = 0,
  MANIN_PROPERTY_FAILED = 1,
  MANIN_INPUT_ERROR = 2,
  MANIN_INTERNAL_ERROR = 3
} manin_status;

const char* manin_version(void);

void manin_string_free(char* s);
void manin_pair_free(manin_pair* p);

/* Validation of both sides without building the pair.  MANIN_OK when both
   sides are Lie algebroids, MANIN_INPUT_ERROR otherwise. */
manin_status manin_validate(const char* spec_json, char** out_json);

manin_status manin_pair_load(const char* spec_json, manin_pair** out, char** out_json);
manin_status manin_pair_export(const manin_pair* p, char** out_json);

/* Dirac square decision together with the direct Leibniz check. */
manin_status manin_check(const manin_pair* p, unsigned probe_degree, char** out_json);

/* suite: "theorem-c", "corollaries", "courant" or "generator". */
manin_status manin_identities(const manin_pair* p, const char* suite, unsigned probe_degree,
                              char** out_json);

manin_status manin_modular(const manin_pair* p, char** out_json);

/* Builders.  The report contains the constructed pair under "pair". */
manin_status manin_example_a_plus_b(const char* a, const char* b, const char* c, const char* d,
                                    unsigned probe_degree, char** out_json);
/* pi_json: {"i,j": poly} with i < j over coordinates x1..x_dim. */
manin_status manin_example_poisson(unsigned dim, const char* pi_json, unsigned probe_degree,
                                   char** out_json);
/* The A side of spec_json with the dual induced by lambda_json. */
manin_status manin_example_exact(const char* spec_json, const char* lambda_json,
                                 unsigned probe_degree, char** out_json);
/* n_json: [[poly, ...], ...] with N[i][j] = <eps^i, N e_j>. */
manin_status manin_example_pn(const char* spec_json, const char* n_json, const char* lambda_json,
                              unsigned k, unsigned l, unsigned probe_degree, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
