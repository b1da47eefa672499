// Serial dense reference rank against the sparse OpenMP kernels, on
// instantiated degree pieces of delta_3 and of random nabla maps.

#include "alexinv/alex_module.hpp"
#include "alexinv/elimination.hpp"
#include "alexinv/quad_lie.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

using namespace alexinv;

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LiePresentation random_presentation(std::mt19937& rng, std::size_t n, std::size_t r) {
    std::uniform_int_distribution<int> c(-3, 3);
    std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(wedge2_dim(n)));
    for (auto& row : rows)
        for (auto& x : row)
            x = c(rng);
    return LiePresentation(n, SparseMatrix<Rational>::from_dense(rows, wedge2_dim(n)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank benchmark"};
    std::size_t max_n = 6, degree = 4, repeats = 3;
    app.add_option("--max-n", max_n, "Largest dim V")->check(CLI::Range(3, 7));
    app.add_option("--degree", degree, "Sym degree to instantiate")->check(CLI::Range(1, 5));
    app.add_option("--repeats", repeats, "Timing repeats")->check(CLI::Range(1, 20));
    CLI11_PARSE(app, argc, argv);

    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-14s %8s %8s %6s %12s %12s %8s\n", "map", "rows", "cols", "rank", "serial_s", "parallel_s", "agree");
    std::mt19937 rng(11);
    for (std::size_t n = 3; n <= max_n; ++n) {
        const std::vector<std::pair<std::string, GradedMap>> maps = {
            {"delta3 n=" + std::to_string(n), delta3(n)},
            {"nabla n=" + std::to_string(n), nabla(random_presentation(rng, n, 2))},
        };
        for (const auto& [name, map] : maps) {
            const auto m = map.instantiate(degree);
            std::size_t rs = 0, rp = 0;
            double ts = 0, tp = 0;
            for (std::size_t k = 0; k < repeats; ++k) {
                ts += seconds([&] { rs = reference::rank(m); });
                tp += seconds([&] { rp = rank(m); });
            }
            std::printf("%-14s %8zu %8zu %6zu %12.4f %12.4f %8s\n", name.c_str(), m.rows(), m.cols(), rp,
                        ts / repeats, tp / repeats, rs == rp ? "yes" : "NO");
        }
    }
}
