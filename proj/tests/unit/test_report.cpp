#include "fracharm/report.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace fracharm;

TEST_CASE("fnv1a64") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("config hash is stable and order sensitive") {
    nlohmann::ordered_json a{{"m", 3}, {"n", 1024}};
    nlohmann::ordered_json b{{"m", 3}, {"n", 1024}};
    nlohmann::ordered_json c{{"m", 3}, {"n", 1023}};
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("report verdict and rendering") {
    VerificationReport r("demo");
    CheckRecord ok{"first", "anchor", {}, 1e-3, true, true, ""};
    ok.add("value", 1.0);
    CheckRecord advisory{"second", "anchor", {}, 0.0, false, false, "informational"};
    advisory.add("nan", std::numeric_limits<double>::quiet_NaN());
    r.add(ok);
    r.add(advisory);
    CHECK(r.overall_pass());
    const auto j = r.to_json();
    CHECK(j["overall_pass"] == true);
    CHECK(j["checks"][1]["measured"]["nan"] == "nan");
    CHECK(j.dump() == r.to_json().dump());
    CHECK(r.to_text().find("overall: PASS") != std::string::npos);
    CheckRecord bad{"third", "anchor", {}, 0.0, false, true, ""};
    r.add(bad);
    CHECK_FALSE(r.overall_pass());
}
