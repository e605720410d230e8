#include <doctest.h>

#include <future>

#include "tforms/errors.hpp"
#include "tforms/report.hpp"

using namespace tforms;

namespace {

std::vector<std::pair<Rational, int>> spectrum_for(int q) { return {{Rational(-q), 1}, {Rational(0), q}, {Rational(q), 1}}; }

bool has_check(const AnalysisReport& r, const std::string& prefix, bool passed) {
    for (const auto& c : r.checks) {
        if (c.name.rfind(prefix, 0) == 0) return c.passed == passed;
    }
    return false;
}

}  // namespace

TEST_SUITE("eisenstein selection") {
    TEST_CASE("P survives and Lq is excluded") {
        for (int q : {2, 3, 4}) {
            const IntPolynomial p{1, -q, q}, lq{1, q, q};
            const IntPolynomial lt = q == 3 ? IntPolynomial{1, 1, 3} : IntPolynomial{1, 0, q};
            const auto sel = select_eisenstein(spectrum_for(q), q, p, lq, lt);
            REQUIRE(sel.surviving.has_value());
            CHECK(*sel.surviving == q);
            REQUIRE(sel.entries.size() == 3);
            CHECK(sel.entries[0].source == "P");
            CHECK(sel.entries[0].survives);
            CHECK(sel.entries[1].source == "Lq");
            CHECK(sel.entries[1].eigenvalue == -q);
            CHECK_FALSE(sel.entries[1].survives);
            CHECK(sel.entries[2].eigenvalue == 0);
            CHECK_FALSE(sel.entries[2].survives);
            CHECK(sel.gcd == IntPolynomial{1});
            CHECK(sel.resultant != 0);
        }
    }

    TEST_CASE("errors") {
        const IntPolynomial p{1, -2, 2}, lq{1, 2, 2};
        // Ltilde sharing its zeros with Lq defeats the exclusion
        CHECK_THROWS_AS(select_eisenstein(spectrum_for(2), 2, p, lq, lq), DomainError);
        CHECK_THROWS_AS(select_eisenstein({{Rational(0), 2}}, 2, p, lq, IntPolynomial{1, 0, 2}), DomainError);
        CHECK_THROWS_AS(select_eisenstein(spectrum_for(2), 2, IntPolynomial{1, -2, 3}, lq, IntPolynomial{1, 0, 2}), DomainError);
    }
}

TEST_SUITE("RH verdict") {
    TEST_CASE("surviving eigenvalue +q") {
        const auto r2 = rh_verdict(2, 2);
        CHECK(r2.verdict);
        CHECK(r2.discriminant == -4);
        CHECK(r2.roots == std::vector<std::string>{"1+i", "1-i"});
        const auto r3 = rh_verdict(3, 3);
        CHECK(r3.verdict);
        CHECK(r3.roots == std::vector<std::string>{"3/2+sqrt(3)/2*i", "3/2-sqrt(3)/2*i"});
        const auto r4 = rh_verdict(4, 4);
        CHECK(r4.verdict);
        CHECK(r4.discriminant == 0);
        CHECK(r4.roots == std::vector<std::string>{"2", "2"});
    }

    TEST_CASE("the trivial character fails") {
        const auto r = rh_verdict(3, 2);
        CHECK_FALSE(r.verdict);
        CHECK(r.roots == std::vector<std::string>{"2", "1"});
        CHECK(rh_verdict(0, 2).verdict);
        CHECK(rh_verdict(-2, 2).verdict);
    }

    TEST_CASE("out of range") {
        CHECK_THROWS_AS(rh_verdict(5, 2), DomainError);
        CHECK_THROWS_AS(rh_verdict(1, 3), DomainError);
    }
}

TEST_SUITE("full analysis") {
    TEST_CASE("e3") {
        AnalysisOptions o;
        o.field = "e3";
        const auto r = run_full_analysis(o);
        CHECK(r.q == 3);
        CHECK(r.all_passed());
        CHECK(r.dim_s == 5);
        CHECK(r.dim_cusp == 2);
        CHECK(r.dim_cusp_after == 0);
        CHECK(r.dim_toroidal == 1);
        REQUIRE(r.rh.has_value());
        CHECK(r.rh->verdict);
        CHECK(r.phi_p.size() == 3);
        for (const auto& s : r.phi_p) CHECK(s.matches);
        const auto j = to_json(r);
        CHECK(j["schema"] == kReportSchema);
        CHECK(j["dims"]["toroidal"] == 1);
    }

    TEST_CASE("p1 has no toroidal forms") {
        AnalysisOptions o;
        o.field = "p1";
        o.q = 3;
        o.depth = 64;
        o.iterations = 63;
        const auto r = run_full_analysis(o);
        CHECK(r.dim_toroidal == 0);
        CHECK(r.dim_s == 0);
        CHECK(r.all_passed());
    }

    TEST_CASE("e2 logs the recursion discrepancies") {
        AnalysisOptions o;
        o.field = "e2";
        const auto r = run_full_analysis(o);
        CHECK(r.all_passed());
        bool c1 = false;
        for (const auto& d : r.discrepancies) c1 |= d.rfind("recursion: C_1", 0) == 0;
        CHECK(c1);
        const std::string md = to_markdown(r);
        CHECK(md.find("# e2 (q = 2)") == 0);
        CHECK(md.find("## Discrepancies") != std::string::npos);
    }

    TEST_CASE("e4 reports a non-cyclic group and nothing else fails") {
        AnalysisOptions o;
        o.field = "e4";
        const auto r = run_full_analysis(o);
        CHECK_FALSE(r.all_passed());
        CHECK(r.group_invariants == std::vector<int>{3, 3});
        int failed = 0;
        for (const auto& c : r.checks) failed += !c.passed;
        CHECK(failed == 1);
        CHECK(has_check(r, "X(F_q^2) is cyclic", false));
        CHECK(r.dim_toroidal == 1);
    }

    TEST_CASE("output is deterministic") {
        AnalysisOptions o;
        o.field = "e2";
        CHECK(to_json(run_full_analysis(o)).dump() == to_json(run_full_analysis(o)).dump());
    }

    TEST_CASE("fields run concurrently") {
        std::vector<std::future<std::string>> jobs;
        std::vector<std::string> serial;
        for (const char* f : {"e2", "e3", "e4"}) {
            AnalysisOptions o;
            o.field = f;
            serial.push_back(to_json(run_full_analysis(o)).dump());
            jobs.push_back(std::async(std::launch::async, [o] { return to_json(run_full_analysis(o)).dump(); }));
        }
        AnalysisOptions p;
        p.field = "p1";
        p.q = 2;
        p.depth = 32;
        p.iterations = 31;
        jobs.push_back(std::async(std::launch::async, [p] { return to_json(run_full_analysis(p)).dump(); }));
        for (std::size_t i = 0; i < serial.size(); ++i) CHECK(jobs[i].get() == serial[i]);
        CHECK(jobs.back().get().find("\"toroidal\":0") != std::string::npos);
    }

    TEST_CASE("bad options") {
        AnalysisOptions o;
        o.field = "e5";
        CHECK_THROWS_AS(run_full_analysis(o), Error);
        CHECK_THROWS_AS(curve_for_field("x"), DomainError);
        o.field = "e2";
        o.iterations = 20;
        CHECK_THROWS_AS(run_full_analysis(o), Error);
    }
}
