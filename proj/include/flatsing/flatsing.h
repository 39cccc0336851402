/* Copyright 2026 The flatsing Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FLATSING_FLATSING_H_
#define FLATSING_FLATSING_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FLATSING_BUILDING_LIBRARY)
#define FLATSING_API __attribute__((visibility("default")))
#else
#define FLATSING_API
#endif

typedef enum flatsing_status {
  FLATSING_OK = 0,
  FLATSING_E_INVALID_ARGUMENT = 1,
  FLATSING_E_MALFORMED_GEOMETRY = 2,
  FLATSING_E_LOCATOR_RANGE_EXCEEDED = 3,
  FLATSING_E_DANGLING_EDGE = 4,
  FLATSING_E_UNRESOLVED_IDENTIFICATION = 5,
  FLATSING_E_DIRECTION_NOT_REALIZED = 6,
  FLATSING_E_AMBIGUOUS_WEDGE = 7,
  FLATSING_E_NOT_SHORT = 8,
  FLATSING_E_INCOMPARABLE = 9,
  FLATSING_E_INCOMPLETE = 10,
  FLATSING_E_OUTSIDE_SWEEP = 11,
  FLATSING_E_INCONCLUSIVE = 12,
  FLATSING_E_CORRESPONDENCE_GAP = 13,
  FLATSING_E_ORIENTATION_REVERSED = 14,
  FLATSING_E_NOT_AREA_PRESERVING = 15,
  FLATSING_E_PARALLEL_SEGMENT = 16,
  FLATSING_E_NOT_FULL = 17,
  FLATSING_E_NO_COMPARABLE_SAMPLES = 18,
  FLATSING_E_ISOLATION_VIOLATED = 19,
  FLATSING_E_INTERNAL = 100
} flatsing_status;

/* Immutable surface; safe to share between threads. */
typedef struct flatsing_surface flatsing_surface;

FLATSING_API const char* flatsing_version(void);
FLATSING_API const char* flatsing_status_name(flatsing_status status);
/* Message of the last failure on the calling thread. */
FLATSING_API const char* flatsing_last_error(void);
/* Releases strings returned through char** out parameters. */
FLATSING_API void flatsing_string_free(char* s);

/* params_json is a JSON object such as {"alpha":"1/2"}; may be NULL. */
FLATSING_API flatsing_status flatsing_surface_build(const char* name, const char* params_json,
                                                    flatsing_surface** out);
FLATSING_API flatsing_status flatsing_surface_load(const char* document, flatsing_surface** out);
FLATSING_API void flatsing_surface_free(flatsing_surface* s);
FLATSING_API flatsing_status flatsing_surface_json(const flatsing_surface* s, char** out);
FLATSING_API flatsing_status flatsing_surface_digest(const flatsing_surface* s, char** out);
/* Anchor labels as a JSON array. */
FLATSING_API flatsing_status flatsing_surface_anchors(const flatsing_surface* s, char** out);

/* *ok is set to 1 when every check passes. */
FLATSING_API flatsing_status flatsing_validate(const flatsing_surface* s, int sample_budget, char** result_json,
                                               int* ok);

/*
 * Analyses take an options object and return a JSON result. Results carry
 * "partial": true when a budget or window cut the computation short. svg
 * may be NULL; otherwise it receives a rendering.
 *
 * Start of a trace or sweep: {"seed": name} for a named fixture seed,
 * {"anchor": label, "dir": ["p/q","p/q"]}, {"corner": [cell, side, index],
 * "dir": ...}, or {"point": {"cell": c, "position": [...]}, "dir": ...}.
 */
FLATSING_API flatsing_status flatsing_trace(const flatsing_surface* s, const char* options_json,
                                            char** result_json, char** svg);
FLATSING_API flatsing_status flatsing_sweep(const flatsing_surface* s, const char* options_json,
                                            char** result_json, char** svg);
/* {"anchor", "epsilon", "angle_budget", "radius_floor"}; angle budgets count
 * multiples of pi. */
FLATSING_API flatsing_status flatsing_classify(const flatsing_surface* s, const char* options_json,
                                               char** result_json);
/* {"anchor", "max_length"} */
FLATSING_API flatsing_status flatsing_saddles(const flatsing_surface* s, const char* options_json,
                                              char** result_json);
/* {"anchor_a", "anchor_b", "epsilon", "tolerance"} */
FLATSING_API flatsing_status flatsing_equivalence(const flatsing_surface* a, const flatsing_surface* b,
                                                  const char* options_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* FLATSING_FLATSING_H_ */
