/* Minimal consumer of the mollow C interface: prints the corrected
 * sideband prediction for the 1S-2P_1/2 transition at h = 1000 and a
 * detuning of 50 linewidths.
 *
 * Build (from the workspace root, after `cargo build -p mollow-capi`):
 *   cc crates/mollow-capi/examples/demo.c \
 *      -Icrates/mollow-capi/include -Ltarget/debug -lmollow_capi -lm -o demo
 *   LD_LIBRARY_PATH=target/debug ./demo
 */
#include <stdio.h>

#include "mollow.h"

int main(void) {
  MollowContext *ctx = mollow_context_default();
  if (!ctx) {
    return 1;
  }

  MollowPrediction pred;
  MollowStatus status = mollow_prediction(ctx, 1, 1000.0, 50.0, &pred);
  if (status != MollowStatus_Ok) {
    fprintf(stderr, "prediction failed: %d\n", (int)status);
    mollow_context_free(ctx);
    return (int)status;
  }

  printf("version           %s\n", mollow_version());
  printf("omega_C           %.6e +- %.1e Hz\n", pred.omega_c_hz.value,
         pred.omega_c_hz.sigma);
  printf("bare              %.6e Hz\n", pred.bare_hz);
  printf("headline shift    %.6e Hz\n", pred.headline_hz.value);
  printf("ionization ratio  %.3e\n", pred.ionization_ratio);

  double shift, sigma;
  status = mollow_table_shift(ctx, MollowChannel_BareLamb, 1, 1000.0, 50.0,
                              &shift, &sigma);
  if (status == MollowStatus_Ok) {
    printf("Lamb channel      %.6e +- %.1e Hz\n", shift, sigma);
  }

  mollow_context_free(ctx);
  return 0;
}
