/* Compiled as C to keep gclone.h usable from plain C. */
#include <stdio.h>

#include "gclone.h"

int main(void) {
  double delta = 0.0;
  int m0 = -1;
  gclone_diag* vac = NULL;
  if (gclone_delta_clon(0.5, &delta) != GCLONE_OK || delta != 0.625) return 1;
  if (gclone_crossing_index(0.99, 2.0, &m0) != GCLONE_OK || m0 != 137) return 1;
  if (gclone_delta_clon(1.0, &delta) != GCLONE_ERR_PARAMETER) return 1;
  if (gclone_diag_thermal(0.0, 4, &vac) != GCLONE_OK) return 1;
  if (gclone_diag_size(vac) != 5 || gclone_diag_probs(vac)[0] != 1.0) return 1;
  gclone_diag_free(vac);
  printf("%s\n", gclone_version());
  return 0;
}
