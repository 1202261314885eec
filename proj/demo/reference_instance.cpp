// Five-asset reference instance: oracle summary, scaling factors and a
// statevector schedule for every mixer up to p = 7.

#include "qaoa/qaoa.hpp"

#include <cstdio>

int main() {
  using namespace qaoa;
  const auto inst = make_instance(reference_dax5(), kReferenceBudget, kReferenceRisk);
  const auto pen = calibrate_penalty(inst);
  const auto summary = brute_force_summary(inst, pen);

  std::printf("assets:");
  for (const auto &id : inst.stats.asset_ids) std::printf(" %s", id.c_str());
  std::printf("\nA = %.6f  F_min = %.6f  F_max = %.6f  optimum = %s\n", pen.A, summary.f_min, summary.f_max,
              to_bitstring(summary.argmin, inst.size()).c_str());

  std::printf("\n%-9s %9s %4s %10s %10s %8s\n", "mixer", "lambda", "p", "r", "P", "strategy");
  for (MixerKind kind : kAllMixers) {
    const auto model = encode(inst, pen, spectral_scaling(inst, pen, summary, kind));
    StatevectorEvaluator ev;
    ScheduleOptions opt;
    opt.p_max = 7;
    const auto res = run_schedule(inst, summary, model, make_mixer(kind, inst.size(), inst.budget), ev, opt);
    for (const auto &d : res.history)
      std::printf("%-9s %9.4f %4d %10.6f %10.6f %8s\n", std::string(to_string(kind)).c_str(), model.lambda, d.p, d.r,
                  d.P, std::string(to_string(d.strategy_chosen)).c_str());
  }
  return 0;
}
