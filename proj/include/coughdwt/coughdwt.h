/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 The coughdwt Authors
 *
 * C interface to the coughdwt pipeline: wavelet decomposition, the 54-value
 * feature vector, SVM models, metrics, and the batch commands used by the
 * command-line tool. Objects are opaque handles released with the matching
 * *_free function. Every call returns a cdwt_status; on failure the message
 * and originating stage are available from cdwt_last_error_message() and
 * cdwt_last_error_stage() on the calling thread until the next failing call.
 */

#ifndef COUGHDWT_COUGHDWT_H
#define COUGHDWT_COUGHDWT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(COUGHDWT_BUILDING)
#    define CDWT_API __declspec(dllexport)
#  else
#    define CDWT_API __declspec(dllimport)
#  endif
#else
#  define CDWT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdwt_status {
    CDWT_OK = 0,
    CDWT_ERR_INVALID_ARGUMENT = 1,
    CDWT_ERR_IO = 2,
    CDWT_ERR_FORMAT = 3,
    CDWT_ERR_NUMERIC = 4,
    CDWT_ERR_STATE = 5,
    CDWT_ERR_INTERNAL = 6
} cdwt_status;

typedef struct cdwt_config cdwt_config;
typedef struct cdwt_decomposition cdwt_decomposition;
typedef struct cdwt_model cdwt_model;

CDWT_API const char* cdwt_version(void);
CDWT_API const char* cdwt_status_name(cdwt_status status);
CDWT_API const char* cdwt_last_error_message(void);
/* "dataset_io", "wavelet", "features", "normalize", "svm", "eval",
 * "pipeline_cli", or "" when the last failure had no stage. */
CDWT_API const char* cdwt_last_error_stage(void);

/* Strings returned through char** out-parameters are owned by the caller. */
CDWT_API void cdwt_string_free(char* text);

/* ---- configuration ---------------------------------------------------- */

/* Resolves defaults <- file_json <- overrides_json. Either JSON text may be
 * NULL. Keys: manifest, wavelet, levels, boundary, duration_ms,
 * prenorm_signal, norm, paper_mode, kernel, gamma, c, folds, split, seed,
 * out, model, tolerance, max_passes, positive_weight, negative_weight. */
CDWT_API cdwt_status cdwt_config_resolve(const char* file_json, const char* overrides_json, cdwt_config** out);
CDWT_API cdwt_status cdwt_config_to_json(const cdwt_config* config, char** out_json);
CDWT_API void cdwt_config_free(cdwt_config* config);

/* ---- batch commands --------------------------------------------------- */

/* command: "extract", "train", "evaluate", "cross-validate", "dump-coeffs".
 * out_paths_json (nullable) receives a JSON array of written files. */
CDWT_API cdwt_status cdwt_execute(const cdwt_config* config, const char* command, char** out_paths_json);

/* Cross-validation report as JSON text, without the timestamp field. */
CDWT_API cdwt_status cdwt_cross_validate(const cdwt_config* config, char** out_report_json);

/* ---- metrics ---------------------------------------------------------- */

typedef struct cdwt_confusion {
    uint64_t tp;
    uint64_t fp;
    uint64_t tn;
    uint64_t fn;
} cdwt_confusion;

typedef struct cdwt_metric {
    uint64_t numerator;
    uint64_t denominator;
    int defined;        /* 0 when the denominator is zero */
    double value;       /* NaN when undefined */
    char percent[16];   /* "99.2" (half-up, 1 decimal) or "undefined" */
} cdwt_metric;

typedef struct cdwt_metrics {
    cdwt_metric acc;
    cdwt_metric rec;
    cdwt_metric spe;
    cdwt_metric pre;
    cdwt_metric f1;
} cdwt_metrics;

CDWT_API cdwt_status cdwt_compute_metrics(const cdwt_confusion* confusion, cdwt_metrics* out);
/* Writes "Rec=.. Spe=.. Acc=.. F1=.." (NUL-terminated) into buffer. */
CDWT_API cdwt_status cdwt_format_summary(const cdwt_confusion* confusion, char* buffer, size_t capacity);

/* ---- wavelet + features ----------------------------------------------- */

/* wavelet: "haar", "db1".."db10"; boundary: "symmetric" or "periodic". */
CDWT_API cdwt_status cdwt_dwt_decompose(const double* signal, size_t length, const char* wavelet, int levels,
                                        const char* boundary, cdwt_decomposition** out);
CDWT_API size_t cdwt_decomposition_band_count(const cdwt_decomposition* decomposition);
/* Band order D1..Dn, An. The data pointer lives as long as the handle. */
CDWT_API cdwt_status cdwt_decomposition_band(const cdwt_decomposition* decomposition, size_t band,
                                             const double** data, size_t* length);
CDWT_API cdwt_status cdwt_idwt_reconstruct(const cdwt_decomposition* decomposition, double* out, size_t capacity,
                                           size_t* written);
CDWT_API void cdwt_decomposition_free(cdwt_decomposition* decomposition);

CDWT_API size_t cdwt_feature_count(void);
/* NULL when index is out of range. */
CDWT_API const char* cdwt_feature_name(size_t index);
/* Requires a 5-level decomposition; capacity must be >= cdwt_feature_count(). */
CDWT_API cdwt_status cdwt_extract_features(const cdwt_decomposition* decomposition, double* out, size_t capacity);

/* ---- trained models --------------------------------------------------- */

/* Loads model JSON plus the normalization params file it references. */
CDWT_API cdwt_status cdwt_model_load(const char* model_path, cdwt_model** out);
/* features: raw (unnormalized) feature vector; normalization is applied. */
CDWT_API cdwt_status cdwt_model_predict(const cdwt_model* model, const double* features, size_t length,
                                        int* is_positive, double* decision);
CDWT_API void cdwt_model_free(cdwt_model* model);

#ifdef __cplusplus
}
#endif

#endif /* COUGHDWT_COUGHDWT_H */
