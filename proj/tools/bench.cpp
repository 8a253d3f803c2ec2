// Benchmark of the parallel kernels against their single-threaded reference
// implementations: functor classification (per-arrow lifting checks) and the
// cup-length search (parallel over the first factor). Results are verified to
// agree before timings are reported.
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "bw/cup.hpp"
#include "bw/fibration.hpp"
#include "bw/instances.hpp"

using namespace bw;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_classify() {
    std::printf("classify (Cartesian/op-Cartesian checks, all arrows)\n");
    std::printf("%-28s %10s %10s %8s\n", "instance", "serial ms", "openmp ms", "speedup");
    for (unsigned long long seed : {3ull, 7ull, 11ull, 19ull}) {
        inst::RandomParams p;
        p.max_objects = 6;
        p.with_covering = true;
        p.fibers = 3;
        auto i = inst::generate_random(seed, p);
        auto a = fib::classify_serial(*i.p);
        auto b = fib::classify(*i.p);
        if (!(a.is_covering == b.is_covering && a.cartesian_lifts == b.cartesian_lifts)) {
            std::printf("  RESULT MISMATCH at seed %llu\n", seed);
            continue;
        }
        int reps = 3;
        double ts = time_ms([&] { fib::classify_serial(*i.p); }, reps);
        double tp = time_ms([&] { fib::classify(*i.p); }, reps);
        char label[64];
        std::snprintf(label, sizeof label, "covering seed %llu (%ld mor)", seed,
                      i.total->num_morphisms());
        std::printf("%-28s %10.2f %10.2f %7.2fx\n", label, ts, tp, ts / tp);
    }
}

void bench_cup_length() {
    std::printf("\ncup-length (tuple search over ring generators)\n");
    std::printf("%-28s %10s %10s %8s\n", "instance", "serial ms", "openmp ms", "speedup");
    for (long m : {5L, 6L, 7L}) {
        inst::RandomParams p;
        p.max_objects = m;
        auto gen = inst::generate_random(17 + (unsigned long long)m, p);
        auto rp = fact::ring_pairing(*gen.base, 2);
        auto cx = coh::build_complex(*gen.base, rp.system);
        auto ring = cup::build_ring(cx, rp.pairing, std::min<long>(cx.top(), 4));
        auto a = cup::cup_length_serial(ring);
        auto b = cup::cup_length(ring);
        if (a.value != b.value) {
            std::printf("  RESULT MISMATCH at size %ld\n", m);
            continue;
        }
        int reps = 3;
        double ts = time_ms([&] { cup::cup_length_serial(ring); }, reps);
        double tp = time_ms([&] { cup::cup_length(ring); }, reps);
        char label[64];
        std::snprintf(label, sizeof label, "random base %ld obj, cpl=%ld", m, a.value);
        std::printf("%-28s %10.2f %10.2f %7.2fx\n", label, ts, tp, ts / tp);
    }
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    bench_classify();
    bench_cup_length();
    return 0;
}
