/* mfbwn: multi-frequency-band white-noise tests.
 *
 * All functions return MFBWN_OK (0) on success or a negative error code.
 * Objects are opaque handles created and destroyed through this interface.
 * Returned strings are heap-allocated; release them with mfbwn_string_free.
 * mfbwn_last_error() describes the most recent failure on this thread.
 */
#ifndef MFBWN_H
#define MFBWN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MFBWN_OK 0
#define MFBWN_EINVAL -1
#define MFBWN_EWAVELET -2
#define MFBWN_EBUDGET -3
#define MFBWN_EEMPTY -4
#define MFBWN_EZERO -5
#define MFBWN_EBAND -6
#define MFBWN_ELENGTH -7
#define MFBWN_ESHORT -8
#define MFBWN_EVARIANCE -9
#define MFBWN_ESINGULAR -10
#define MFBWN_EPARSE -11
#define MFBWN_ECONFIG -12
#define MFBWN_ENOMEM -13
#define MFBWN_EUNKNOWN -14

const char* mfbwn_version(void);
const char* mfbwn_strerror(int code);
const char* mfbwn_last_error(void);
void mfbwn_string_free(char* s);

/* ---- series ---- */
typedef struct mfbwn_series mfbwn_series;

int mfbwn_series_from_data(const double* data, int64_t n, mfbwn_series** out);
/* format: "csv_single_column" | "csv_date_value"; transform: "none" |
 * "log_return_100" | "diff"; date_start/date_end: ISO dates or NULL. */
int mfbwn_series_from_csv(const char* path, const char* format,
                          const char* transform, const char* date_start,
                          const char* date_end, int demean, mfbwn_series** out);
int mfbwn_series_length(const mfbwn_series* s, int64_t* out);
int mfbwn_series_values(const mfbwn_series* s, double* out, int64_t cap);
int mfbwn_series_demean(mfbwn_series* s);
void mfbwn_series_free(mfbwn_series* s);

/* ---- filter banks ---- */
typedef struct mfbwn_bank mfbwn_bank;

int mfbwn_bank_create(const char* wavelet, int m, mfbwn_bank** out);
int mfbwn_bank_rows(const mfbwn_bank* b, int* out);
int mfbwn_bank_filter_length(const mfbwn_bank* b, int* out);
int mfbwn_bank_row(const mfbwn_bank* b, int n, double* out, int64_t cap);
/* one CSV row per band: wavelet,m,n,c0,c1,... */
int mfbwn_bank_csv(const mfbwn_bank* b, char** out);
void mfbwn_bank_free(mfbwn_bank* b);

/* ---- single tests and batteries ---- */
typedef struct mfbwn_reports mfbwn_reports;

/* test: "MFB" | "GSM" | "LB" | "AQ"; variant: "g" | "triangle" | "e"
 * (ignored for LB/AQ); m_or_K: scale m or lag K (ignored for AQ);
 * nw_bandwidth < 0 selects the automatic rule; nw_center: 0/1. */
int mfbwn_run_test(const mfbwn_series* y, const char* test, const char* variant,
                   const char* wavelet, int m_or_K, int nw_bandwidth,
                   int nw_center, mfbwn_reports** out);

/* config: JSON object {wavelets:[...], m_values:[...], variants:[...],
 * gsm:bool, ljung_box:bool, lb_lags:[...], aq:bool,
 * nw_bandwidth:int|"auto", nw_center:bool}; pass NULL for defaults. */
int mfbwn_run_battery(const mfbwn_series* y, const char* config_json,
                      mfbwn_reports** out);

int mfbwn_reports_count(const mfbwn_reports* r, int* out);
int mfbwn_reports_stat(const mfbwn_reports* r, int i, double* statistic, int* df,
                       double* p_value);
int mfbwn_reports_json(const mfbwn_reports* r, char** out);
void mfbwn_reports_free(mfbwn_reports* r);

/* Text table from the battery JSON; a pure function of its input. */
int mfbwn_render_table(const char* battery_json, char** out);

/* ---- simulation studies ---- */
typedef struct mfbwn_study mfbwn_study;

/* config: JSON object. Common keys: study:"size"|"power"|"sweep", T, reps,
 * seed, workers, demean, nw_bandwidth, nw_center, tests:[{test, variant,
 * wavelet, m} | {test:"LB", K} | {test:"AQ"}].
 * size: models:["N1",...]. power: alt:"A1".."A4", beta1:[...], beta2:[...],
 * null_reps. sweep: k, beta:[...], m_min, m_max, wavelet, null_reps. */
int mfbwn_study_run(const char* config_json, mfbwn_study** out);
/* name: "main" (size/power/sweep table) or "relative" (power only) */
int mfbwn_study_csv(const mfbwn_study* s, const char* name, char** out);
int mfbwn_study_manifest(const mfbwn_study* s, char** out);
void mfbwn_study_free(mfbwn_study* s);

#ifdef __cplusplus
}
#endif

#endif /* MFBWN_H */
