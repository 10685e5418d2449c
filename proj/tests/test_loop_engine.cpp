#include <doctest.h>

#include <cmath>

#include "fopid/criteria.hpp"
#include "fopid/error.hpp"
#include "fopid/loop_engine.hpp"
#include "support.hpp"

using namespace fopid;

namespace {

const FractionalTransferFunction kUnitGain({{1.0, 0.0}}, {{1.0, 0.0}});
const FractionalTransferFunction kIntegrator({{1.0, 0.0}}, {{1.0, 1.0}});

SimConfig config(double step, double horizon, FeedbackMode mode = FeedbackMode::Algebraic) {
    SimConfig c;
    c.step = step;
    c.horizon = horizon;
    c.feedback = mode;
    return c;
}

void check_residuals(const SimulationTrace& t) {
    REQUIRE(t.reference.size() == t.size());
    REQUIRE(t.error.size() == t.size());
    REQUIRE(t.control.size() == t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t.feedback == FeedbackMode::Algebraic) {
            CHECK(std::fabs(t.error[k] - (t.reference[k] - t.output[k])) <=
                  1e-9 * std::max(1.0, std::fabs(t.reference[k])));
        } else {
            CHECK(t.error[k] == t.reference[k] - (k ? t.output[k - 1] : 0.0));
        }
    }
}

}  // namespace

TEST_CASE("step reference") {
    const auto a = step_reference(1.0, config(0.01, 10.0));
    CHECK(a.size() == 1001);
    for (double v : a.samples) CHECK(v == 1.0);
    const auto b = step_reference(2.5, config(0.5, 2.0));
    CHECK(b.samples == std::vector<double>(5, 2.5));
    CHECK(b.step == 0.5);
    for (double v : step_reference(0.0, config(0.1, 1.0)).samples) CHECK(v == 0.0);
}

TEST_CASE("config guard") {
    CHECK_NOTHROW(config(0.01, 10).validate());
    CHECK_THROWS_AS(config(0.0, 10).validate(), Error);
    CHECK_THROWS_AS(config(-0.01, 10).validate(), Error);
    CHECK_THROWS_AS(config(0.1, 0.05).validate(), Error);
    CHECK_THROWS_AS(config(1e-7, 1.0).validate(), Error);
    CHECK_NOTHROW(config(1e-6, 1.0).validate());
    SimConfig bad_order = config(0.01, 1);
    bad_order.cfe_order = 4;
    CHECK_THROWS_AS(bad_order.validate(), Error);
    const auto c = config(0.01, 1);
    const auto ref = step_reference(1.0, c);
    CHECK_THROWS_AS(simulate_closed_loop(kUnitGain, {}, Realization::Cfe, ref, config(0.0, 1.0)), Error);
    CHECK(parse_feedback_mode("delayed") == FeedbackMode::Delayed);
    CHECK_THROWS_AS(parse_feedback_mode("causal"), Error);
}

TEST_CASE("static loop") {
    const auto c = config(0.01, 1.0);
    for (Realization real : {Realization::Cfe, Realization::Gl}) {
        const auto t = simulate_closed_loop(kUnitGain, {4, 0, 0, 1, 1}, real, step_reference(1.0, c), c);
        CHECK(t.size() == 101);
        for (double v : t.output) CHECK(v == doctest::Approx(0.8).epsilon(1e-15));
        check_residuals(t);
    }
}

TEST_CASE("integrator under proportional control") {
    const auto c = config(1e-3, 5.0);
    for (Realization real : {Realization::Cfe, Realization::Gl}) {
        const auto t = simulate_closed_loop(kIntegrator, {1, 0, 0, 1, 1}, real, step_reference(1.0, c), c);
        REQUIRE(t.size() == 5001);
        double worst = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            worst = std::max(worst, std::fabs(t.output[k] - (1.0 - std::exp(-static_cast<double>(k) * 1e-3))));
        }
        CHECK(worst < 5e-3);
        check_residuals(t);
    }
}

TEST_CASE("zero reference keeps the loop at rest") {
    const auto c = config(0.01, 10.0);
    const ControllerParams p{325.9739, 303.3286, 389.4627, 0.6022, 1.6188};
    for (Realization real : {Realization::Cfe, Realization::Gl}) {
        const auto t = simulate_closed_loop(FractionalTransferFunction::benchmark_plant(), p, real,
                                            step_reference(0.0, c), c);
        CHECK(t.size() == 1001);
        CHECK_FALSE(t.diverged);
        for (std::size_t k = 0; k < t.size(); ++k) {
            CHECK(t.output[k] == 0.0);
            CHECK(t.control[k] == 0.0);
            CHECK(t.error[k] == 0.0);
        }
    }
}

TEST_CASE("algebraic and delayed loops agree for a stable PID loop") {
    const ControllerParams p = ControllerParams::pid(1, 0.2, 0.5);
    const auto plant = FractionalTransferFunction::benchmark_plant();
    double itae[2], final[2];
    for (int m = 0; m < 2; ++m) {
        const auto c = config(0.01, 10.0, m ? FeedbackMode::Delayed : FeedbackMode::Algebraic);
        const auto t = simulate_closed_loop(plant, p, Realization::Cfe, step_reference(1.0, c), c);
        REQUIRE_FALSE(t.diverged);
        check_residuals(t);
        itae[m] = evaluate_index(IndexKind::Itae, t);
        final[m] = t.output.back();
    }
    CHECK(std::fabs(itae[0] - itae[1]) / itae[0] < 0.05);
    CHECK(std::fabs(final[0] - final[1]) / std::fabs(final[0]) < 0.05);
}

TEST_CASE("mode gap shrinks with the step") {
    // kp = 10, ti = 1 destabilizes this plant; the two causalities still
    // approach each other as h -> 0.
    const ControllerParams p = ControllerParams::pid(10, 1, 0);
    const auto plant = FractionalTransferFunction::benchmark_plant();
    auto gap = [&](double h) {
        double itae[2];
        for (int m = 0; m < 2; ++m) {
            const auto c = config(h, 10.0, m ? FeedbackMode::Delayed : FeedbackMode::Algebraic);
            itae[m] = evaluate_index(IndexKind::Itae,
                                     simulate_closed_loop(plant, p, Realization::Gl, step_reference(1.0, c), c));
        }
        return std::fabs(itae[0] - itae[1]) / itae[0];
    };
    const double coarse = gap(0.01), fine = gap(0.001);
    CHECK(fine < coarse / 5.0);
    CHECK(fine < 0.05);
}

TEST_CASE("trace matches the open-loop primitives") {
    const auto plant = FractionalTransferFunction::benchmark_plant();
    const ControllerParams p{20, 5, 2, 0.8, 1.2};
    const auto c = config(0.01, 5.0);
    const auto t = simulate_closed_loop(plant, p, Realization::Cfe, step_reference(1.0, c), c);
    REQUIRE_FALSE(t.diverged);
    const auto u = fopid_apply_cfe(p, SampledSignal(0.01, t.error), c.cfe_order).samples;
    CHECK(test::max_rel_diff(t.control, u) < 1e-9);
    const auto y = simulate_response(plant, SampledSignal(0.01, t.control)).samples;
    CHECK(test::max_rel_diff(t.output, y) < 1e-9);

    const auto tg = simulate_closed_loop(plant, p, Realization::Gl, step_reference(1.0, c), c);
    const auto ug = fopid_apply_gl(p, SampledSignal(0.01, tg.error)).samples;
    CHECK(test::max_rel_diff(tg.control, ug) < 1e-9);
}

TEST_CASE("delayed loop keeps the one-sample lag") {
    const auto c = config(0.01, 3.0, FeedbackMode::Delayed);
    const auto t = simulate_closed_loop(FractionalTransferFunction::benchmark_plant(), ControllerParams::pid(5, 2, 0.1),
                                        Realization::Gl, step_reference(1.0, c), c);
    CHECK(t.feedback == FeedbackMode::Delayed);
    check_residuals(t);
}

TEST_CASE("divergence truncates and flags the trace") {
    // delayed positive-feedback-like recurrence: c_k = 2 (1 - c_{k-1})
    const auto c = config(0.01, 10.0, FeedbackMode::Delayed);
    const auto t = simulate_closed_loop(kUnitGain, {2, 0, 0, 1, 1}, Realization::Cfe, step_reference(1.0, c), c);
    CHECK(t.diverged);
    CHECK(t.size() < 1001);
    for (double v : t.output) CHECK(std::fabs(v) <= kDivergenceLimit);
    CHECK_THROWS_AS(evaluate_index(IndexKind::Itae, t), Error);
}

TEST_CASE("singular algebraic loop falls back to delayed feedback") {
    const FractionalTransferFunction negative({{-1.0, 0.0}}, {{1.0, 0.0}});
    const auto c = config(0.1, 1.0);
    const auto t = simulate_closed_loop(negative, {1, 0, 0, 1, 1}, Realization::Cfe, step_reference(1.0, c), c);
    CHECK(t.loop_fallback);
    CHECK(t.feedback == FeedbackMode::Delayed);
    check_residuals(t);
}
