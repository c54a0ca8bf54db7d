/* fab.h — C interface to the forest-algebra toolkit.
 *
 * All functions return a status code: FAB_OK for a positive outcome,
 * FAB_NO for a negative one (refuted / violated), FAB_EXHAUSTED when a
 * bounded search ran out of budget, and FAB_ERR_* for failures. String
 * outputs are heap-allocated; release them with fab_string_free. Handles
 * are opaque; release them with the matching *_free function.
 */

#ifndef FAB_H
#define FAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define FAB_OK 0
#define FAB_NO 1
#define FAB_EXHAUSTED 2
#define FAB_ERR_USAGE 3
#define FAB_ERR_PARSE 4
#define FAB_ERR_EVAL 5

typedef struct fab_term fab_term;
typedef struct fab_algebra fab_algebra;

const char* fab_version(void);
void fab_string_free(char* s);

/* Terms. alphabet is a space-separated letter list, or NULL to infer the
 * letters from the text. */
int fab_term_parse(const char* text, const char* alphabet, fab_term** out,
                   char** err);
int fab_term_format(const fab_term* t, char** out, char** err);
int fab_term_canonical(const fab_term* t, fab_term** out, char** err);
void fab_term_free(fab_term* t);

/* Algebra definitions (the .fa format), or bundled ones by name. */
int fab_algebra_parse(const char* text, fab_algebra** out, char** err);
int fab_algebra_load(const char* path, fab_algebra** out, char** err);
int fab_algebra_fixture(const char* name, fab_algebra** out, char** err);
int fab_algebra_format(const fab_algebra* a, char** out, char** err);
int fab_algebra_validate(const fab_algebra* a, char** report, char** err);
void fab_algebra_free(fab_algebra* a);

/* Operations. Every call writes a key:value report block to *report. */
int fab_eval(const fab_algebra* a, const char* term_text, char** report,
             char** err);
int fab_equiv(const char* s, const char* t, int n, int tau, int pi,
              char** report, char** err);
int fab_falsify(const fab_algebra* a, int n, int tau, int pi, int size_budget,
                char** report, char** err);
int fab_syntactic(const fab_algebra* a, char** algebra_text, char** report,
                  char** err);
int fab_scc(const fab_algebra* a, char** report, char** err);
int fab_divides(const fab_algebra* g, const fab_algebra* h, long long budget,
                char** report, char** err);
int fab_multivertical(const fab_algebra* a, char** report, char** err);
int fab_extended(const fab_algebra* a, const char* context_term,
                 const char* port_subsets, char** report, char** err);
int fab_rc_verify(const fab_algebra* a, const char* circuit_text,
                  const char* seeds_text, int n, int tau, int pi,
                  char** report, char** err);
int fab_witnesses(const fab_algebra* a, const char* circuit_text,
                  const char* seeds_text, int n, int tau, int pi,
                  char** report, char** err);
int fab_search_copy(const fab_algebra* a, const char* set_csv, int tau, int pi,
                    int node_budget, int width_budget, char** circuit_text,
                    char** report, char** err);
int fab_pump_subcircuit(const fab_algebra* a, const char* tuples_text,
                        const char* z_label, int chi, int tau, char** report,
                        char** err);

/* Golden checks of the bundled algebras; name may be "all". */
int fab_fixture_check(const char* name, char** report, char** err);
int fab_fixture_export(const char* name, char** algebra_text, char** err);

#ifdef __cplusplus
}
#endif

#endif /* FAB_H */
