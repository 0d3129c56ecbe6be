// Copyright 2026 The Highlights Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HIGHLIGHTS_HIGHLIGHTS_H_
#define HIGHLIGHTS_HIGHLIGHTS_H_

/* C interface to the highlight extraction library. Every function returns
 * an hl_status; on failure hl_last_error() describes the problem. Strings
 * returned through char** are owned by the caller and released with
 * hl_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#if defined(HL_BUILDING_LIBRARY)
#define HL_API __declspec(dllexport)
#else
#define HL_API __declspec(dllimport)
#endif
#else
#define HL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
  HL_OK = 0,
  HL_ERR_ARGUMENT = 1,
  HL_ERR_CONFIG = 2,
  HL_ERR_DATA = 3,
  HL_ERR_QUERY = 4,
  HL_ERR_INTERNAL = 5
} hl_status;

typedef enum hl_format { HL_FORMAT_TEXT = 0, HL_FORMAT_MARKDOWN = 1 } hl_format;

typedef struct hl_config hl_config;
typedef struct hl_dataset hl_dataset;
typedef struct hl_query hl_query;
typedef struct hl_result hl_result;

HL_API const char* hl_version(void);
/* Message of the last failure on the calling thread; never NULL. */
HL_API const char* hl_last_error(void);
HL_API void hl_string_free(char* s);

HL_API hl_status hl_config_load(const char* path, hl_config** out);
/* Numeric detector settings: "k", "megaContributorThreshold", "alpha",
 * "partialDominanceFloor", "seasonalityThreshold". */
HL_API hl_status hl_config_set_number(hl_config* config, const char* key, double value);
/* Boolean detector settings: "emitNegative". */
HL_API hl_status hl_config_set_bool(hl_config* config, const char* key, int value);
HL_API hl_status hl_config_set_enabled(hl_config* config, const char* detector, int enabled);
HL_API void hl_config_free(hl_config* config);

/* Per-column statistics and suggested roles of the fact table, as text. */
HL_API hl_status hl_profile(const hl_config* config, char** out);

HL_API hl_status hl_dataset_load(const hl_config* config, hl_dataset** out);
HL_API size_t hl_dataset_warning_count(const hl_dataset* dataset);
HL_API const char* hl_dataset_warning(const hl_dataset* dataset, size_t index);
HL_API void hl_dataset_free(hl_dataset* dataset);

HL_API hl_status hl_query_load(const char* path, hl_query** out);
HL_API hl_status hl_query_parse(const char* json, hl_query** out);
HL_API void hl_query_free(hl_query* query);

/* Runs the query and every enabled detector. `timestamp` may be NULL. */
HL_API hl_status hl_extract(const hl_config* config, const hl_dataset* dataset, const hl_query* query,
                            const char* timestamp, hl_result** out);
HL_API size_t hl_result_highlight_count(const hl_result* result);
HL_API size_t hl_result_diagnostic_count(const hl_result* result);
/* Borrowed strings, valid until hl_result_free. */
HL_API hl_status hl_result_diagnostic(const hl_result* result, size_t index, const char** detector,
                                      const char** target, const char** message);
/* The versioned JSON document. */
HL_API hl_status hl_result_to_json(const hl_result* result, char** out);
HL_API hl_status hl_result_narrate(const hl_result* result, const hl_config* config, hl_format format,
                                   char** out);
HL_API void hl_result_free(hl_result* result);

#ifdef __cplusplus
}
#endif

#endif /* HIGHLIGHTS_HIGHLIGHTS_H_ */
