#include <benchmark/benchmark.h>

#include <string>

#include "ctrs/format.hpp"
#include "ctrs/rewrite.hpp"
#include "ctrs/soundness.hpp"
#include "ctrs/sr.hpp"
#include "ctrs/system.hpp"
#include "ctrs/unravel.hpp"

using namespace ctrs;

namespace {

RewriteSystem corpus(const std::string& name) {
    return load_system(std::string(CTRS_CORPUS_DIR) + "/" + name + ".ctrs");
}

void BM_ParseCorpusSystem(benchmark::State& st) {
    const std::string text = render_system(corpus("R7"));
    for (auto _ : st) benchmark::DoNotOptimize(parse_system(text));
}
BENCHMARK(BM_ParseCorpusSystem);

void BM_Classify(benchmark::State& st) {
    auto r = corpus("R2");
    for (auto _ : st) benchmark::DoNotOptimize(classify(r));
}
BENCHMARK(BM_Classify);

void BM_UnravelUopt(benchmark::State& st) {
    auto r = corpus("R7");
    for (auto _ : st) benchmark::DoNotOptimize(unravel_Uopt(r));
}
BENCHMARK(BM_UnravelUopt);

void BM_SrTransform(benchmark::State& st) {
    auto r = corpus("R7");
    for (auto _ : st) benchmark::DoNotOptimize(sr_transform(r));
}
BENCHMARK(BM_SrTransform);

std::string numeral(int n) {
    std::string t = "0";
    for (int i = 0; i < n; ++i) t = "s(" + t + ")";
    return t;
}

// closure of odd(s^n(0)) with n as the argument
void BM_ClosureR12p(benchmark::State& st) {
    auto r = corpus("R12p");
    Term s = parse_term("odd(" + numeral(static_cast<int>(st.range(0))) + ")", r);
    std::size_t n = 0;
    for (auto _ : st) {
        Engine e(r, Bounds{});
        n = e.reach(s).terms.size();
    }
    st.counters["terms"] = static_cast<double>(n);
}
BENCHMARK(BM_ClosureR12p)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_ClosureUoptR12p(benchmark::State& st) {
    auto u = unravel_Uopt(corpus("R12p"));
    Term s = parse_term("odd(" + numeral(static_cast<int>(st.range(0))) + ")", u);
    std::size_t n = 0;
    for (auto _ : st) {
        Engine e(u, Bounds{});
        n = e.reach(s).terms.size();
    }
    st.counters["terms"] = static_cast<double>(n);
}
BENCHMARK(BM_ClosureUoptR12p)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_SearchR3(benchmark::State& st) {
    auto r = corpus("R3");
    auto h = make_transformation("Uopt", r);
    Term s = parse_term("h(f(a),f(b))", r);
    for (auto _ : st) benchmark::DoNotOptimize(search_unsoundness(h, {s}, SearchOptions{}));
}
BENCHMARK(BM_SearchR3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
