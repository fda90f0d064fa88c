/* Minimal consumer of the antipode C API.
 *
 * Build (from the repository root):
 *   cargo build -p antipode-capi --release
 *   cc -std=c99 -Icrates/antipode-capi/include \
 *      crates/antipode-capi/examples/demo.c \
 *      target/release/libantipode_capi.a -lpthread -ldl -lm -o demo
 *   ./demo
 */
#include <inttypes.h>
#include <stdio.h>

#include "antipode.h"

static int show(const char *label, AntipodeResultKind kind, uint64_t value) {
  switch (kind) {
  case ANTIPODE_RESULT_KIND_FINITE:
    printf("%s = %" PRIu64 "\n", label, value);
    return 0;
  case ANTIPODE_RESULT_KIND_INFINITE_CERTIFIED:
    printf("%s = infinite (certified)\n", label);
    return 0;
  default:
    printf("%s = unknown beyond %" PRIu64 "\n", label, value);
    return 0;
  }
}

int main(void) {
  AntipodeHopf *hopf = NULL;
  AntipodeResultKind kind;
  uint64_t value;

  if (antipode_hopf_builtin("uq-borel", 5, &hopf) != ANTIPODE_STATUS_OK) {
    fprintf(stderr, "build failed: %s\n", antipode_last_error());
    return 1;
  }
  if (antipode_hopf_verify(hopf) != ANTIPODE_STATUS_OK) {
    fprintf(stderr, "axioms failed: %s\n", antipode_last_error());
    antipode_hopf_free(hopf);
    return 1;
  }
  puts("axioms verified");

  if (antipode_hopf_m_invariant(hopf, 0, 0, &kind, &value) != ANTIPODE_STATUS_OK ||
      show("m_H", kind, value) != 0) {
    fprintf(stderr, "m_H failed: %s\n", antipode_last_error());
    antipode_hopf_free(hopf);
    return 1;
  }
  if (antipode_hopf_antipode_order(hopf, 0, &kind, &value) != ANTIPODE_STATUS_OK ||
      show("|S|", kind, value) != 0) {
    fprintf(stderr, "order failed: %s\n", antipode_last_error());
    antipode_hopf_free(hopf);
    return 1;
  }

  antipode_hopf_free(hopf);
  return 0;
}
