/* The shared library driven from C only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "augsos/augsos.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s failed (%s)\n", __FILE__, __LINE__, \
              #cond, augsos_last_error());                         \
      ++failures;                                                  \
    }                                                              \
  } while (0)

int main(void) {
  augsos_options opts;
  augsos_options_init(&opts);
  augsos_context* ctx = NULL;
  EXPECT(augsos_context_new(&opts, &ctx) == AUGSOS_OK);

  augsos_group* s3 = NULL;
  EXPECT(augsos_group_load(ctx, AUGSOS_DATA_DIR "/groups/s3.json", &s3) == AUGSOS_OK);

  augsos_certificate* cert = NULL;
  EXPECT(augsos_cert_build_lemma21(s3, "(12)", "(13)", "(123)", -1, &cert) == AUGSOS_OK);
  char* report = NULL;
  EXPECT(augsos_certificate_verify(cert, &report) == AUGSOS_OK);
  EXPECT(report && strstr(report, "VERIFIED"));
  augsos_string_free(report);

  char* text = NULL;
  EXPECT(augsos_certificate_json(cert, &text) == AUGSOS_OK);
  augsos_certificate* again = NULL;
  EXPECT(augsos_certificate_parse(ctx, text, ".", NULL, &again) == AUGSOS_OK);
  augsos_string_free(text);
  EXPECT(augsos_certificate_verify(again, NULL) == AUGSOS_OK);
  augsos_certificate_free(again);
  augsos_certificate_free(cert);

  /* -e is not a sum of squares, and the oracle says so. */
  augsos_element* minus_e = NULL;
  EXPECT(augsos_element_parse(ctx, "{\"terms\":[{\"g\":\"e\",\"c\":\"-1\"}]}", ".", s3, &minus_e) == AUGSOS_OK);
  EXPECT(augsos_oracle_psd(minus_e, NULL) == AUGSOS_NEGATIVE);
  EXPECT(augsos_cert_build_delta(minus_e, &cert) == AUGSOS_E_NOT_IN_AUGMENTATION_IDEAL);
  EXPECT(strlen(augsos_last_error()) > 0);
  augsos_element_free(minus_e);

  double gap = 0;
  EXPECT(augsos_oracle_eigen_gap(s3, &gap) == AUGSOS_OK);
  EXPECT(gap > 5.999 && gap < 6.001);

  /* Error paths. */
  augsos_group* missing = NULL;
  EXPECT(augsos_group_load(ctx, "/nonexistent/group.json", &missing) == AUGSOS_E_IO);
  EXPECT(missing == NULL);
  EXPECT(augsos_group_parse(ctx, "{not json", ".", &missing) == AUGSOS_E_PARSE);
  EXPECT(augsos_cert_build_lemma21(s3, "(12)", "(12) (13)", "e", 1, &cert) != AUGSOS_OK);
  EXPECT(augsos_cert_build_lemma21(NULL, "(12)", "(13)", "e", 1, &cert) == AUGSOS_E_INVALID_ARGUMENT);
  EXPECT(strcmp(augsos_status_name(AUGSOS_E_NOT_PSD), "") != 0);

  char* box = NULL;
  char* closed = NULL;
  EXPECT(augsos_family_box(s3, 2, 0, &box) == AUGSOS_OK);
  EXPECT(augsos_family_box(s3, 2, 1, &closed) == AUGSOS_OK);
  EXPECT(box && closed && strcmp(box, closed) == 0);
  augsos_string_free(box);
  augsos_string_free(closed);

  augsos_group_free(s3);
  augsos_context_free(ctx);
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("capi ok\n");
  return 0;
}
