/* rimax — fixed points of the centered Hardy-Littlewood maximal operator in
 * rearrangement invariant spaces: decision engine, rearrangements, Riesz
 * potentials, ball averages and the verification harness behind them.
 *
 * C interface of the shared library. All functions return RIMAX_OK on
 * success; on failure rimax_last_error() carries a thread-local message.
 * Strings returned through char** are heap-allocated; release them with
 * rimax_string_free(). Handles are opaque; release with the matching
 * *_free().
 */
#ifndef RIMAX_H
#define RIMAX_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rimax_status {
    RIMAX_OK = 0,
    RIMAX_ERR_INVALID_ARGUMENT = 1,
    RIMAX_ERR_PARSE = 2,
    RIMAX_ERR_DOMAIN = 3,
    RIMAX_ERR_UNSUPPORTED = 4,
    RIMAX_ERR_INTERNAL = 5
} rimax_status;

typedef struct rimax_space rimax_space;     /* r.i. space descriptor */
typedef struct rimax_profile rimax_profile; /* piecewise power-log profile + dimension tag */

const char* rimax_version(void);

/* Message for the most recent failure on this thread. */
const char* rimax_last_error(void);

void rimax_string_free(char* s);

/* --- descriptors ---------------------------------------------------------
 * text is raw JSON ({"kind":"lorentz","p":3,"q":"inf"} ...), @file.json, or
 * an inline shorthand such as lorentz:p=3,q=inf | lambda:p=1,w=one |
 * prop:a=0.2,b=0.6 | minimal:n=3 | marcinkiewicz_weak:W,n=3 | x0:n=3.
 */
rimax_status rimax_space_parse(const char* text, rimax_space** out);
void rimax_space_free(rimax_space* s);
rimax_status rimax_space_to_json(const rimax_space* s, char** json_out);

/* Profiles: JSON {"n":3,"pieces":[{t_lo,t_hi,c,alpha,beta},...]} or
 * shorthand h:n=3 | F:n=3 | chi:s=1 | ball:v=1,n=3 | const:c=1 |
 * twostep:h1=1,t1=1,h2=0.5,t2=4 | powerdecay:alpha=-2.
 * The dimension tag may be 0 (unspecified); commands that need one take an
 * explicit n which overrides a zero tag.
 */
rimax_status rimax_profile_parse(const char* text, rimax_profile** out);
void rimax_profile_free(rimax_profile* p);
rimax_status rimax_profile_dimension(const rimax_profile* p, int* n_out);
rimax_status rimax_profile_eval(const rimax_profile* p, double t, double* out);
rimax_status rimax_profile_to_json(const rimax_profile* p, char** json_out);

/* --- decision engine ------------------------------------------------------
 * fixed_point_exists receives 1/0. decision_json (optional, may be NULL)
 * receives {verdict, method, witnesses:{norm_h, beta_lower, beta_upper,
 * threshold}, notes}.
 */
rimax_status rimax_decide(int n, const rimax_space* X, int* fixed_point_exists,
                          char** decision_json);

/* ||profile||_X on (0, inf); +inf signals membership failure, not an error. */
rimax_status rimax_norm(const rimax_space* X, const rimax_profile* p, double* out);

rimax_status rimax_fundamental_function(const rimax_space* X, double s, double* out);
rimax_status rimax_dilation(const rimax_space* X, double s, double* out);
rimax_status rimax_indices(const rimax_space* X, double* beta_lower, double* beta_upper,
                           char** diagnostics_json);

/* --- operators ------------------------------------------------------------ */
typedef struct rimax_grid {
    double lo;
    double hi;
    int per_decade;
} rimax_grid;

rimax_status rimax_ball_average(const rimax_profile* p, int n, double rho, double r,
                                double* out);
rimax_status rimax_maximal_value(const rimax_profile* p, int n, double rho,
                                 rimax_grid r_grid, double* value, double* r_at_max);
rimax_status rimax_riesz_value(const rimax_profile* p, int n, double rho, double* out);

/* CSV tables (header row; 17 significant digits; byte-deterministic). */
rimax_status rimax_rearrange_csv(const rimax_profile* p, int n, rimax_grid t_grid,
                                 char** csv_out);
rimax_status rimax_maximal_csv(const rimax_profile* p, int n, rimax_grid rho_grid,
                               rimax_grid r_grid, char** csv_out);
rimax_status rimax_riesz_csv(const rimax_profile* p, int n, rimax_grid rho_grid,
                             char** csv_out);

/* --- verification ----------------------------------------------------------
 * check: superharmonic | oneil | lemma-phi | embedding | all.
 * space_text: optional (NULL) override of the default space set for
 * lemma-phi / embedding. tol > 0 overrides the check's headline tolerance
 * (mean-value tolerance, ratio ceiling, or embedding slack); pass 0 for the
 * defaults. passed receives 1 iff every selected check passed. report_json
 * receives an array of report summaries; table_csv (optional) the
 * concatenated per-point tables.
 */
rimax_status rimax_verify(int n, const char* check, const char* space_text, double tol,
                          int* passed, char** report_json, char** table_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RIMAX_H */
