#ifndef GRAMLOGIC_H
#define GRAMLOGIC_H

/* Generated by cbindgen from the gramlogic-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GlStatus {
  GL_STATUS_OK = 0,
  GL_STATUS_NO_MODEL = 1,
  GL_STATUS_PARSE = 2,
  GL_STATUS_SHAPE = 3,
  GL_STATUS_RESOURCE_CAP = 4,
  GL_STATUS_NULL_POINTER = 5,
  GL_STATUS_INVALID_UTF8 = 6,
  GL_STATUS_INTERNAL = 7,
} GlStatus;

/**
 * Opaque handle to a loaded logic.
 */
typedef struct GlLogic GlLogic;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a built-in logic by name (case-insensitive).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_logic_preset(const char *name, struct GlLogic **out);

/**
 * Loads a logic from grammar-file text.
 *
 * # Safety
 * `grammar` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_logic_from_grammar(const char *grammar, struct GlLogic **out);

/**
 * # Safety
 * `logic` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void gl_logic_free(struct GlLogic *logic);

/**
 * Translates a modal formula; writes one TPTP statement to `out`.
 *
 * # Safety
 * Pointers must be valid; `formula` NUL-terminated.
 */
enum GlStatus gl_translate(const struct GlLogic *logic,
                           const char *formula,
                           bool hoisted,
                           bool nominals,
                           char **out);

/**
 * Bounded model search for a modal formula. Returns `GL_STATUS_OK` with
 * the extracted Kripke model in `out`, `GL_STATUS_NO_MODEL` when there is
 * none up to `max_domain`, or `GL_STATUS_RESOURCE_CAP` when the conflict
 * budget runs out.
 *
 * # Safety
 * Pointers must be valid; `formula` NUL-terminated.
 */
enum GlStatus gl_check(const struct GlLogic *logic,
                       const char *formula,
                       size_t max_domain,
                       uint64_t conflict_cap,
                       char **out);

/**
 * Translates an intuitionistic formula into one TPTP statement.
 *
 * # Safety
 * Pointers must be valid; `formula` NUL-terminated.
 */
enum GlStatus gl_ipl_translate(const char *formula, char **out);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *gl_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void gl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAMLOGIC_H */
