// Benchmark: serial reference kernels vs the OpenMP variants.
#include <chrono>
#include <cstdio>
#include <random>

#include "starcat/linalg.hpp"
#include "starcat/parallel.hpp"
#include "starcat/star.hpp"

using namespace starcat;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QMat random_matrix(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> d(-9, 9);
    QMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Rational(d(rng), 1 + (d(rng) & 3));
    return m;
}

}  // namespace

int main() {
    init_threads_from_env();
    std::printf("threads: %d\n", effective_threads());

    std::mt19937 rng(424242);
    for (int n : {40, 80, 120}) {
        QMat m = random_matrix(rng, n);
        auto t0 = std::chrono::steady_clock::now();
        auto serial = rref(m);
        double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = rref_parallel(m);
        double tp = seconds(t0);
        bool same = serial.first == parallel.first && serial.second == parallel.second;
        std::printf("rref %3dx%-3d  serial %.3fs  openmp %.3fs  speedup %.2fx  identical %s\n", n,
                    n, ts, tp, tp > 0 ? ts / tp : 0.0, same ? "yes" : "NO");
    }

    // hom tables of the zigzag side: per-pair fanout
    for (int n : {3, 4}) {
        auto t0 = std::chrono::steady_clock::now();
        StarBicategory bc(n, true);
        const int nl = bc.nlabels();
        std::vector<int> dims(nl * nl);
        int saved = thread_count_ref();
        set_thread_count(1);
        for (long idx = 0; idx < nl * nl; ++idx)
            dims[idx] = bc.hom(static_cast<int>(idx / nl), static_cast<int>(idx % nl)).dim();
        double ts = seconds(t0);
        set_thread_count(saved);
        t0 = std::chrono::steady_clock::now();
        StarBicategory bc2(n, true);
        std::vector<int> dims2(nl * nl);
        parallel_for(nl * nl, [&](long idx) {
            dims2[idx] = bc2.hom(static_cast<int>(idx / nl), static_cast<int>(idx % nl)).dim();
        });
        double tp = seconds(t0);
        std::printf("homtable zigzag n=%d  serial %.3fs  fanout %.3fs  identical %s\n", n, ts, tp,
                    dims == dims2 ? "yes" : "NO");
    }
    return 0;
}
