#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rydgrover/errorbudget.hpp"

using namespace rydgrover;

TEST_CASE("Shenvi threshold values and display") {
    CHECK(shenvi_threshold(512) == doctest::Approx(0.21).epsilon(0.005));
    CHECK(shenvi_threshold(65536) == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(shenvi_threshold(16777216) == doctest::Approx(0.015625).epsilon(1e-12));

    CHECK(format_two_sig(shenvi_threshold(256)) == ".25");
    CHECK(format_two_sig(shenvi_threshold(512)) == ".21");
    CHECK(format_two_sig(shenvi_threshold(32768)) == ".074");
    CHECK(format_two_sig(shenvi_threshold(65536)) == ".063");
    CHECK(format_two_sig(shenvi_threshold(16777216)) == ".016");

    // exact scaling: threshold(16 N) = threshold(N) / 2
    for (const double n : {256.0, 1024.0, 65536.0})
        CHECK(shenvi_threshold(16.0 * n) == doctest::Approx(shenvi_threshold(n) / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS((void)shenvi_threshold(1.0), std::invalid_argument);
}

TEST_CASE("sub-register composition") {
    auto flat = [](int) { return 0.08; };
    CHECK(subregister_error(1, 8, flat, 0.5) == doctest::Approx(0.08).epsilon(1e-14));
    CHECK(subregister_error(2, 8, flat, 0.0) == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(subregister_error(3, 8, flat, 0.0) == doctest::Approx(0.24).epsilon(1e-14));

    // linear in E_a with slope exactly n_s - 1
    for (const int n_s : {1, 2, 3, 5}) {
        const double base = subregister_error(n_s, 8, flat, 0.0);
        const double bumped = subregister_error(n_s, 8, flat, 0.01);
        CHECK(bumped - base == doctest::Approx((n_s - 1) * 0.01).epsilon(1e-12));
    }

    // E_a = 0.01 shifts the published cells by at most 0.02
    CHECK(subregister_error(2, 8, flat, 0.01) - 0.16 <= 0.02 + 1e-15);
    CHECK(subregister_error(3, 8, flat, 0.01) - 0.24 <= 0.02 + 1e-15);

    CHECK_THROWS_AS((void)subregister_error(0, 8, flat, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)subregister_error(2, 8, flat, -1.0), std::invalid_argument);
}

TEST_CASE("pulse accounting") {
    CHECK(pulse_count(Architecture::Sequential, 9) == 36.0);
    CHECK(pulse_count(Architecture::Sequential, 1) == 4.0);
    for (const int k : {1, 4, 16})
        CHECK(pulse_count(Architecture::Simultaneous, k) == 8.0);
    CHECK(pulse_count(Architecture::Subregister, 16, 2) == 52.0);
    CHECK(pulse_count(Architecture::Subregister, 24, 3) == 84.0);
    CHECK_THROWS_AS((void)pulse_count(Architecture::Subregister, 16), std::invalid_argument);

    // instrumented executions match the closed-form counts, k in [1, 10]
    for (int k = 1; k <= 10; ++k) {
        ProtocolConfig config;
        config.architecture = Architecture::Sequential;
        config.k = k;
        config.marked = BasisLabel(static_cast<std::size_t>(k), 1);
        const GroverTrace trace = grover_search(config, 2);
        CHECK(trace.cumulative_pulses.back() ==
              doctest::Approx(2.0 * pulse_count(Architecture::Sequential, k)).epsilon(1e-14));
    }
}

TEST_CASE("speedup verdicts") {
    CHECK(speedup_verdict(0.015, 65536) == Verdict::FullQuadratic);
    CHECK(speedup_verdict(0.20, 32768) == Verdict::Degraded);
    // boundary inclusive
    CHECK(speedup_verdict(shenvi_threshold(4096), 4096) == Verdict::FullQuadratic);
}

TEST_CASE("table report recomputes the derived columns") {
    const TableReport report = table_report(cs_like(), cs_two_species(), 5.0, 0.0);
    REQUIRE(report.rows.size() == 5);

    const char* want_display[5] = {".25", ".21", ".074", ".063", ".016"};
    for (int i = 0; i < 5; ++i) CHECK(report.rows[static_cast<std::size_t>(i)].threshold_display == want_display[i]);

    // sub-register compositions from the printed simultaneous column
    const TableRow& r65536 = report.rows[3];
    REQUIRE(r65536.subregister.has_value());
    CHECK(r65536.subregister->model.has_value());
    CHECK(*r65536.subregister->model == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(r65536.subregister->agree);

    const TableRow& r16m = report.rows[4];
    REQUIRE(r16m.subregister.has_value());
    CHECK(*r16m.subregister->model == doctest::Approx(0.24).epsilon(1e-12));
    CHECK(r16m.subregister->agree);

    // sequential k=9 model estimate flagged inside the order-of-magnitude band
    const TableRow& r512 = report.rows[1];
    REQUIRE(r512.sequential.has_value());
    REQUIRE(r512.sequential->model.has_value());
    CHECK(*r512.sequential->model >= kAgreementBandLow * 0.004);
    CHECK(*r512.sequential->model <= kAgreementBandHigh * 0.004);
    CHECK(r512.sequential->agree);

    // populated simultaneous cells also land in band with the shipped preset
    for (const std::size_t i : {0u, 2u, 4u}) {
        REQUIRE(report.rows[i].simultaneous.has_value());
        CHECK(report.rows[i].simultaneous->agree);
    }

    CHECK(!report.text().empty());
    CHECK(report.budgets.size() >= 5);
}

TEST_CASE("table report with nonzero ancilla error reports both values") {
    const TableReport report = table_report(cs_like(), cs_two_species(), 5.0, 0.01);
    const TableRow& r65536 = report.rows[3];
    CHECK(*r65536.subregister->model == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(r65536.subregister_with_ea == doctest::Approx(0.17).epsilon(1e-12));
    const TableRow& r16m = report.rows[4];
    CHECK(r16m.subregister_with_ea == doctest::Approx(0.26).epsilon(1e-12));
}

TEST_CASE("two-significant-digit display") {
    CHECK(format_two_sig(0.25) == ".25");
    CHECK(format_two_sig(0.0743) == ".074");
    CHECK(format_two_sig(0.0625) == ".063"); // half away from zero
    CHECK(format_two_sig(0.015625) == ".016");
    CHECK(format_two_sig(0.199) == ".20");
}
