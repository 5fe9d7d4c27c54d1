#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qhg/report.hpp"

using namespace qhg;

TEST_CASE("twelve significant digits") {
    CHECK(round12(std::numbers::pi) == 3.14159265359);
    CHECK(round12(1.0) == 1.0);
    CHECK(round12(-2.5e-20) == -2.5e-20);
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(num(INFINITY).is_null());
    CHECK(num(NAN).is_null());
    CHECK(dump(json{{"a", num(1.0 / 3.0)}}) == "{\n  \"a\": 0.333333333333\n}\n");
}

TEST_CASE("reports are reproducible") {
    const auto h = Domain::half_plane();
    const auto a = dump(to_json(qh_distance(h, {0.3, 0.7}, {-1.2, 2.0}, 0.01)));
    const auto b = dump(to_json(qh_distance(h, {0.3, 0.7}, {-1.2, 2.0}, 0.01)));
    CHECK(a == b);
    const auto j = to_json(short_arc(h, {0, 1}, {0, std::numbers::e}, 0.1));
    CHECK(j.contains("h_achieved"));
    CHECK(j["arc"]["vertices"].get<std::size_t>() >= 2);
}
