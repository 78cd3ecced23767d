#include "seventerm/cohomology.hpp"
#include "seventerm/fixtures.hpp"
#include "seventerm/seven_term.hpp"
#include "seventerm/smith.hpp"
#include "seventerm/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace seventerm;

namespace {

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-9, 9);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

void bm_smith_normal_form(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntMatrix m = random_matrix(n, n, 0x5eedu + n);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(bm_smith_normal_form)->Arg(8)->Arg(16)->Arg(32);

void bm_h2_dihedral(benchmark::State& state) {
    const GModule mod = GModule::trivial(dihedral_group_8(), FgAbGroup::cyclic(2));
    for (auto _ : state) benchmark::DoNotOptimize(cohomology(mod, 2));
}
BENCHMARK(bm_h2_dihedral);

void bm_seven_term_sequence(benchmark::State& state) {
    const Fixture f = fixture_by_name("fix-a").value();
    const GroupExtension ext = make_extension(f.g, f.n_elems);
    for (auto _ : state) benchmark::DoNotOptimize(seven_term(ext, f.mod));
}
BENCHMARK(bm_seven_term_sequence);

void bm_second_page(benchmark::State& state) {
    const Fixture f = fixture_by_name("fix-b").value();
    const Pipeline pl = build_pipeline(make_extension(f.g, f.n_elems), f.mod);
    for (auto _ : state) {
        SpectralOracle so(pl);
        benchmark::DoNotOptimize(so.page(1, 1));
    }
}
BENCHMARK(bm_second_page);

} // namespace

BENCHMARK_MAIN();
