// Compares the OpenMP kernels against their serial reference
// implementations: same numbers expected, wall time reported.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include "kfree/closed_form.hpp"
#include "kfree/forest.hpp"
#include "kfree/interval.hpp"
#include "kfree/parallel.hpp"

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

template <typename F>
double timed(F&& f) {
    double t0 = now_ms();
    f();
    return now_ms() - t0;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t tilde_n = 5'000'000;
    std::uint64_t scan_hi = 100'000;
    if (argc > 1) tilde_n = std::stoull(argv[1]);
    if (argc > 2) scan_hi = std::stoull(argv[2]);

    std::printf("threads=%d\n", kfree::max_threads());
    std::printf("%-28s %14s %12s %12s %8s %6s\n", "kernel", "size",
                "serial_ms", "parallel_ms", "speedup", "equal");

    {
        std::uint64_t a = 0, b = 0;
        double ts = timed([&] { a = kfree::tilde_rk_serial(2, tilde_n); });
        double tp = timed([&] { b = kfree::tilde_rk(2, tilde_n); });
        std::printf("%-28s %14llu %12.2f %12.2f %8.2f %6s\n",
                    "interval_orbit_sum(k=2)",
                    static_cast<unsigned long long>(tilde_n), ts, tp, ts / tp,
                    a == b ? "yes" : "NO");
    }
    {
        std::uint64_t a = 0, b = 0;
        double ts = timed([&] { a = kfree::tilde_rk_serial(3, tilde_n); });
        double tp = timed([&] { b = kfree::tilde_rk(3, tilde_n); });
        std::printf("%-28s %14llu %12.2f %12.2f %8.2f %6s\n",
                    "interval_orbit_sum(k=3)",
                    static_cast<unsigned long long>(tilde_n), ts, tp, ts / tp,
                    a == b ? "yes" : "NO");
    }
    {
        kfree::DeficitScan a{}, b{};
        double ts = timed(
            [&] { a = kfree::scan_coprime_deficit_serial(2, 3, scan_hi); });
        double tp =
            timed([&] { b = kfree::scan_coprime_deficit(2, 3, scan_hi); });
        bool equal = a.max_ratio == b.max_ratio && a.argmax == b.argmax;
        std::printf("%-28s %14llu %12.2f %12.2f %8.2f %6s\n",
                    "coprime_deficit_scan(k=2)",
                    static_cast<unsigned long long>(scan_hi), ts, tp, ts / tp,
                    equal ? "yes" : "NO");
        std::printf("  deficit max ratio %.6f at n=%llu\n", a.max_ratio,
                    static_cast<unsigned long long>(a.argmax));
    }
    return 0;
}
