#ifndef HYPERALG_H
#define HYPERALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. `HA_STATUS_OK` is zero; everything else is an error.
typedef enum HaStatus {
  HA_STATUS_OK = 0,
  HA_STATUS_NULL_ARGUMENT = 1,
  HA_STATUS_INVALID_UTF8 = 2,
  HA_STATUS_PARSE = 3,
  HA_STATUS_UNKNOWN_STRUCTURE = 4,
  HA_STATUS_UNSUPPORTED = 5,
  HA_STATUS_DOMAIN = 6,
  HA_STATUS_CLOSURE = 7,
  HA_STATUS_INDETERMINATE = 8,
  HA_STATUS_STRUCTURAL = 9,
  HA_STATUS_IO = 10,
  HA_STATUS_PANIC = 11,
} HaStatus;

// Opaque structure handle.
typedef struct HaStructure HaStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. Valid until the next
// failing call on the same thread; never null.
const char *ha_last_error(void);

// Library version as a static string.
const char *ha_version(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ha_string_free(char *s);

// Look up a structure by name (`"TC"`, `"K"`, `"padic:5:8"`, ...).
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum HaStatus ha_structure_new(const char *name, struct HaStructure **out);

// Release a handle. Null is ignored.
//
// # Safety
// `s` must come from [`ha_structure_new`] and not have been freed.
void ha_structure_free(struct HaStructure *s);

// Canonical name of the structure.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum HaStatus ha_structure_name(const struct HaStructure *s, char **out);

// Whether the structure carries a multiplication.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum HaStatus ha_structure_has_mul(const struct HaStructure *s, bool *out);

// The value set of `a + b`, as text.
//
// # Safety
// `s` must be a live handle, `a` and `b` nul-terminated, `out` writable.
enum HaStatus ha_add(const struct HaStructure *s, const char *a, const char *b, char **out);

// The product `a * b`, as text.
//
// # Safety
// `s` must be a live handle, `a` and `b` nul-terminated, `out` writable.
enum HaStatus ha_mul(const struct HaStructure *s, const char *a, const char *b, char **out);

// Whether element `x` lies in the set written as `set`.
//
// # Safety
// `s` must be a live handle, `x` and `set` nul-terminated, `out` writable.
enum HaStatus ha_member(const struct HaStructure *s, const char *x, const char *set, bool *out);

// Run an axiom check. `level` is one of `multigroup`, `minimal`,
// `multiring`, `hyperring`, `hyperfield`, `dd`. `report` may be null;
// otherwise it receives the per-axiom text report.
//
// # Safety
// `s` must be a live handle, `level` nul-terminated, `passed` writable and
// `report` null or writable.
enum HaStatus ha_verify(const struct HaStructure *s,
                        const char *level,
                        size_t budget,
                        uint64_t seed,
                        bool *passed,
                        char **report);

// Characteristic and C-characteristic, summing at most `cap` terms. A zero
// result means none was found within the cap.
//
// # Safety
// `s` must be a live handle; `chr` and `cchr` writable.
enum HaStatus ha_characteristics(const struct HaStructure *s,
                                 size_t cap,
                                 size_t *chr,
                                 size_t *cchr);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HYPERALG_H */
