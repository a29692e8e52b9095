// Benchmark of the OpenMP kernels against their serial reference paths.
// Outputs one line per kernel with both timings and verifies the results are
// identical (exact rational arithmetic, so equality is bitwise).

#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mapspace/cohomology.hpp"
#include "mapspace/free_model.hpp"
#include "mapspace/linalg.hpp"

using namespace mapspace;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<SparseVec> random_rows(int rows, int cols, int percent, std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> pick(0, 99);
    std::vector<SparseVec> out;
    out.reserve(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        SparseVec r;
        for (int j = 0; j < cols; ++j)
            if (pick(rng) < percent) {
                Rational c = frac(num(rng), den(rng));
                if (!rat_zero(c)) r.entries.emplace_back(j, c);
            }
        out.push_back(std::move(r));
    }
    return out;
}

void bench_rref(int rows, int cols, int percent)
{
    std::mt19937 rng(1234);
    std::vector<SparseVec> m = random_rows(rows, cols, percent, rng);

    auto t0 = Clock::now();
    auto serial = rref(m, false);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    auto parallel = rref(m, true);
    double t_parallel = ms_since(t0);

    bool same = (serial == parallel);
    std::cout << "rref " << rows << "x" << cols << " (" << percent << "% fill):  serial " << t_serial
              << " ms,  openmp " << t_parallel << " ms,  identical: " << (same ? "yes" : "NO")
              << "\n";
    if (!same) std::exit(1);
}

void bench_cohomology(int N)
{
    // a free model big enough to give the per-degree tasks some weight
    GenCtx ctx({GenSym{"a2", 2}, GenSym{"b3", 3}, GenSym{"c3", 3}, GenSym{"d4", 4}, GenSym{"e4", 4}});
    Elem de = mul(ctx, Elem::gen(ctx, 0), Elem::gen(ctx, 1));
    FreeModel m = validate_free("bench", ctx,
                                {Elem::zero(), Elem::zero(), Elem::zero(), Elem::zero(), de});

    FreeView view(m, N);
    auto t0 = Clock::now();
    CohomReport serial = cohomology(view, N, false);
    double t_serial = ms_since(t0);

    t0 = Clock::now();
    CohomReport parallel = cohomology(view, N, true);
    double t_parallel = ms_since(t0);

    bool same = serial.betti() == parallel.betti();
    for (std::size_t n = 0; same && n < serial.degs.size(); ++n) {
        same = serial.degs[n].decomp_dim == parallel.degs[n].decomp_dim &&
               serial.degs[n].reps.size() == parallel.degs[n].reps.size();
        for (std::size_t i = 0; same && i < serial.degs[n].reps.size(); ++i)
            same = serial.degs[n].reps[i] == parallel.degs[n].reps[i];
    }
    std::cout << "cohomology through degree " << N << ":  serial " << t_serial << " ms,  openmp "
              << t_parallel << " ms,  identical: " << (same ? "yes" : "NO") << "\n";
    if (!same) std::exit(1);
}

}  // namespace

int main(int argc, char** argv)
{
    bool quick = (argc > 1 && std::string(argv[1]) == "--quick");
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not enabled; both paths run serially\n";
#endif
    if (quick) {
        bench_rref(80, 60, 12);
        bench_cohomology(12);
    } else {
        bench_rref(150, 120, 8);
        bench_rref(80, 300, 15);
        bench_cohomology(17);
    }
    return 0;
}
