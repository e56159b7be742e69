#include <stdio.h>
#include <string.h>

#include "brieskorn.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,      \
              bk_last_error_message());                                    \
      return 1;                                                            \
    }                                                                      \
  } while (0)

static int expect_string(BkStatus status, char *s, const char *want) {
  int ok = status == BK_STATUS_OK && s != NULL && strcmp(s, want) == 0;
  if (!ok) fprintf(stderr, "got %s, want %s\n", s ? s : "(null)", want);
  bk_string_free(s);
  return ok;
}

int main(void) {
  const int64_t exps[] = {6, 3, 2, 2, 2};
  BkLink *link = NULL;
  CHECK(bk_link_new(exps, 5, &link) == BK_STATUS_OK);

  int64_t dim = 0;
  CHECK(bk_link_dimension(link, &dim) == BK_STATUS_OK && dim == 7);

  char *s = NULL;
  BkStatus st = bk_link_signature(link, &s);
  CHECK(expect_string(st, s, "8"));
  st = bk_link_homology(link, &s);
  CHECK(expect_string(st, s, "Z^2"));
  st = bk_bp_order(3, &s);
  CHECK(expect_string(st, s, "992"));
  st = bk_tau(48, &s);
  CHECK(expect_string(st, s, "1176"));

  const int64_t bad[] = {1, 2};
  BkLink *none = NULL;
  st = bk_link_new(bad, 2, &none);
  CHECK(st == BK_STATUS_INVALID_EXPONENT && none == NULL);
  CHECK(strcmp(bk_status_name(st), "InvalidExponent") == 0);
  CHECK(strlen(bk_last_error_message()) > 0);

  bk_link_free(link);
  puts("ok");
  return 0;
}
