// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "tinv/aggregate.hpp"
#include "tinv/estimators.hpp"
#include "tinv/synthgen.hpp"

namespace {

tinv::GeneratorConfig config(benchmark::State& state) {
  tinv::GeneratorConfig c;
  c.n_stocks = static_cast<std::size_t>(state.range(0));
  c.n_days = 200;
  return c;
}

struct Inputs {
  std::vector<tinv::StockDayPanel> panels;
  std::vector<double> sigmas;
};

Inputs inputs(benchmark::State& state) {
  const auto p = tinv::generate_panel(config(state));
  Inputs in{tinv::join_panels(p.metaorders, p.bars).panels, {}};
  for (const auto& panel : in.panels) in.sigmas.push_back(tinv::vol_high_low(panel.bar).sigma);
  return in;
}

void BM_GeneratePanel(benchmark::State& state) {
  const auto c = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(tinv::generate_panel(c));
}

void BM_GeneratePanelSerial(benchmark::State& state) {
  const auto c = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(tinv::generate_panel_serial(c));
}

void BM_ComputeRecords(benchmark::State& state) {
  const Inputs in = inputs(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(tinv::compute_records(in.panels, in.sigmas, tinv::PriceProxy::VwapWeighted));
}

void BM_ComputeRecordsSerial(benchmark::State& state) {
  const Inputs in = inputs(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(tinv::compute_records_serial(in.panels, in.sigmas, tinv::PriceProxy::VwapWeighted));
}

}  // namespace

BENCHMARK(BM_GeneratePanel)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeneratePanelSerial)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeRecords)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeRecordsSerial)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
