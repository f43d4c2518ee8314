#include <benchmark/benchmark.h>

#include "qstruct/axiomatizer.hpp"
#include "qstruct/closure.hpp"
#include "qstruct/enumerate.hpp"
#include "qstruct/io.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/semantics.hpp"
#include "qstruct/syntax.hpp"

using namespace qstruct;

namespace {

ClassSpec corpus(const std::string& name) {
  return load_class_spec(std::string(QSTRUCT_SOURCE_DIR) + "/corpus/" + name + ".class");
}

Caps caps_at(std::size_t size) {
  Caps c;
  c.max_size = size;
  return c;
}

void BM_ModelCheckLinearOrders(benchmark::State& state) {
  ClassSpec spec = corpus("linear_orders");
  const Theory& t = spec.defined()->theory();
  auto structures = enumerate_structures(t.vocab, static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) {
    std::size_t models = 0;
    for (const auto& s : structures) models += Evaluator(s).models(t);
    benchmark::DoNotOptimize(models);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(structures.size()));
}
BENCHMARK(BM_ModelCheckLinearOrders)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  auto structures = enumerate_structures(share(Vocabulary{}.add_relation("E", 2)), 4, false);
  structures.resize(std::min<std::size_t>(structures.size(), 4096));
  for (auto _ : state)
    for (const auto& s : structures) benchmark::DoNotOptimize(canonical_key(s));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(structures.size()));
}
BENCHMARK(BM_CanonicalForm)->Unit(benchmark::kMillisecond);

void BM_VerifyIntersections(benchmark::State& state) {
  ClassSpec spec = corpus("triangle_free");
  for (auto _ : state) benchmark::DoNotOptimize(verify_intersections(*spec.model_class, caps_at(state.range(0))));
}
BENCHMARK(BM_VerifyIntersections)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EnumerateDK(benchmark::State& state) {
  ClassSpec spec = corpus("linear_orders");
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_dk(*spec.model_class, static_cast<std::size_t>(state.range(0)), caps_at(4)));
}
BENCHMARK(BM_EnumerateDK)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EmitPresentation(benchmark::State& state) {
  ClassSpec spec = corpus("linear_orders");
  const auto pair_cap = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto x = functorial_expansion(spec.model_class, pair_cap + 1, caps_at(pair_cap));
    benchmark::DoNotOptimize(emit_aq_theory(x, pair_cap, caps_at(pair_cap)));
  }
}
BENCHMARK(BM_EmitPresentation)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
