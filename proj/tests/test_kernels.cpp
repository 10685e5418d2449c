#include <doctest.h>

#include <cmath>
#include <vector>

#include "fopid/kernels.hpp"
#include "support.hpp"

using namespace fopid;
using kernels::Backend;

namespace {

struct Reference {
    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        long double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
        return static_cast<double>(s);
    }
    static double ramp_abs(const std::vector<double>& x) {
        long double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long double>(i) * std::fabs(x[i]);
        return static_cast<double>(s);
    }
    static double ramp_sq(const std::vector<double>& x) {
        long double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long double>(i) * x[i] * x[i];
        return static_cast<double>(s);
    }
};

void check_close(double got, double want, double scale) {
    CHECK(std::fabs(got - want) <= 1e-13 * std::max(1.0, scale));
}

class BackendGuard {
public:
    BackendGuard() : saved_(kernels::active_backend()) {}
    ~BackendGuard() { kernels::select_backend(saved_); }

private:
    Backend saved_;
};

}  // namespace

TEST_CASE("scalar backend is always available") {
    CHECK(kernels::backend_available(Backend::Scalar));
    CHECK(kernels::table_for(Backend::Scalar) != nullptr);
    CHECK(kernels::backend_name(Backend::Scalar) == "scalar");
    CHECK(kernels::backend_available(kernels::active_backend()));
}

TEST_CASE("unavailable backends are refused") {
    BackendGuard guard;
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        if (!kernels::backend_available(b)) {
            CHECK(kernels::table_for(b) == nullptr);
            const Backend before = kernels::active_backend();
            CHECK_FALSE(kernels::select_backend(b));
            CHECK(kernels::active_backend() == before);
        }
    }
}

TEST_CASE("every backend agrees with an extended-precision reference") {
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
        const kernels::KernelTable* t = kernels::table_for(b);
        if (t == nullptr) continue;
        CAPTURE(kernels::backend_name(b));
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 33u, 100u, 1001u,
                              4099u}) {
            CAPTURE(n);
            const auto a = test::random_signal(n, 11 + n, -3.0, 3.0);
            const auto x = test::random_signal(n, 97 + n, -3.0, 3.0);
            double abs_scale = 0, sq_scale = 0, dot_scale = 0;
            for (std::size_t i = 0; i < n; ++i) {
                abs_scale += std::fabs(x[i]);
                sq_scale += x[i] * x[i];
                dot_scale += std::fabs(a[i] * x[i]);
            }
            check_close(t->dot(a.data(), x.data(), n), Reference::dot(a, x), dot_scale);
            check_close(t->sum_abs(x.data(), n), abs_scale, abs_scale);
            check_close(t->sum_sq(x.data(), n), sq_scale, sq_scale);
            check_close(t->ramp_sum_abs(x.data(), n), Reference::ramp_abs(x),
                        static_cast<double>(n) * abs_scale);
            check_close(t->ramp_sum_sq(x.data(), n), Reference::ramp_sq(x),
                        static_cast<double>(n) * sq_scale);
        }
    }
}

TEST_CASE("vector backends match scalar on exactly representable data bitwise") {
    // Small integers: every partial sum is exact, so summation order cannot matter.
    const kernels::KernelTable* scalar = kernels::table_for(Backend::Scalar);
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        const kernels::KernelTable* t = kernels::table_for(b);
        if (t == nullptr) continue;
        for (std::size_t n = 0; n < 70; ++n) {
            std::vector<double> a(n), x(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = static_cast<double>(static_cast<int>(i % 7) - 3);
                x[i] = static_cast<double>(static_cast<int>((i * 5) % 11) - 5);
            }
            CHECK(t->dot(a.data(), x.data(), n) == scalar->dot(a.data(), x.data(), n));
            CHECK(t->sum_abs(x.data(), n) == scalar->sum_abs(x.data(), n));
            CHECK(t->sum_sq(x.data(), n) == scalar->sum_sq(x.data(), n));
            CHECK(t->ramp_sum_abs(x.data(), n) == scalar->ramp_sum_abs(x.data(), n));
            CHECK(t->ramp_sum_sq(x.data(), n) == scalar->ramp_sum_sq(x.data(), n));
        }
    }
}

TEST_CASE("free functions route through the selected backend") {
    BackendGuard guard;
    const auto a = test::random_signal(257, 3);
    const auto x = test::random_signal(257, 4);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
        if (!kernels::backend_available(b)) continue;
        REQUIRE(kernels::select_backend(b));
        CHECK(kernels::active_backend() == b);
        const kernels::KernelTable* t = kernels::table_for(b);
        CHECK(kernels::dot(a, x) == t->dot(a.data(), x.data(), a.size()));
        CHECK(kernels::sum_abs(x) == t->sum_abs(x.data(), x.size()));
        CHECK(kernels::sum_sq(x) == t->sum_sq(x.data(), x.size()));
        CHECK(kernels::ramp_sum_abs(x) == t->ramp_sum_abs(x.data(), x.size()));
        CHECK(kernels::ramp_sum_sq(x) == t->ramp_sum_sq(x.data(), x.size()));
    }
}
