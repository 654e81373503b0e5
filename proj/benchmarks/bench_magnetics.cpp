#include <benchmark/benchmark.h>

#include "owpt/circuit.hpp"
#include "owpt/geometry.hpp"
#include "owpt/magnetics.hpp"
#include "owpt/polarity.hpp"
#include "owpt/scenario.hpp"
#include "owpt/units.hpp"

namespace {

using namespace owpt;

void BM_LoopMutualCoaxial(benchmark::State& state) {
  const FilamentLoop a(Pose(Vec3::Zero(), Vec3::UnitZ()), 0.15);
  const FilamentLoop b(Pose(Vec3(0, 0, 0.05), Vec3::UnitZ()), 0.13);
  const QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(loop_mutual(a, b, spec));
}
BENCHMARK(BM_LoopMutualCoaxial);

void BM_LoopMutualTilted(benchmark::State& state) {
  const SystemLayout layout = paper_layout(deg_to_rad(20.0), 0.2);
  const QuadratureSpec spec;
  const auto& a = layout.rp[1].loops().front();
  const auto& b = layout.rx.loops().front();
  for (auto _ : state) benchmark::DoNotOptimize(loop_mutual(a, b, spec));
}
BENCHMARK(BM_LoopMutualTilted);

void BM_CoilMutualTxRp(benchmark::State& state) {
  const SystemLayout layout = paper_layout(0.0, 0.2);
  const QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(coil_mutual(layout.tx[0], layout.rp[0], spec));
}
BENCHMARK(BM_CoilMutualTxRp)->Unit(benchmark::kMillisecond);

void BM_CouplingSet(benchmark::State& state) {
  const SystemLayout base = paper_layout(0.0, 0.2);
  const QuadratureSpec spec;
  const ClusterCouplings cluster = cluster_couplings(base, spec);
  const SystemLayout layout = rotate_rx(base, deg_to_rad(35.0));
  for (auto _ : state) benchmark::DoNotOptimize(coupling_set(layout, cluster, spec, false));
}
BENCHMARK(BM_CouplingSet)->Unit(benchmark::kMillisecond);

SystemConfig sample_config() {
  SystemConfig cfg;
  cfg.omega0 = angular_frequency(592.6e3);
  cfg.v_s = source_rms_from_dc(10.0);
  cfg.r_tx = {0.049, 0.047, 0.039};
  cfg.r_rp = {0.055, 0.055, 0.037};
  cfg.r_rx = 0.469;
  cfg.r_load = 20.0;
  cfg.couplings = CouplingSet::uniform(3.178e-6, {1.05e-6, -1.48e-6, 1.05e-6}, 0.72);
  cfg.x_t = tune_xt(0.72, 3.178e-6, cfg.omega0);
  cfg.polarity = Polarity({1, -1, 1});
  return cfg;
}

void BM_SolveFull(benchmark::State& state) {
  const SystemConfig cfg = sample_config();
  for (auto _ : state) benchmark::DoNotOptimize(solve_full(cfg));
}
BENCHMARK(BM_SolveFull);

void BM_Controller(benchmark::State& state) {
  SystemConfig cfg = sample_config();
  cfg.polarity = Polarity();
  const ControllerSettings settings;
  for (auto _ : state) benchmark::DoNotOptimize(run_controller(cfg, settings));
}
BENCHMARK(BM_Controller);

}  // namespace

BENCHMARK_MAIN();
