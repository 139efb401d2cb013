/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>

#include "chanent/serialization.hpp"

using namespace chanent;
using namespace chanent::serial;

TEST_CASE("builder strings") {
    Channel sw = build_channel("swap:d=2");
    CHECK(sw.dims().party_count() == 2);
    CHECK((sw.choi().matrix - builders::swap_gate(2).choi().matrix).cwiseAbs().maxCoeff() <
          1e-12);

    Channel sw3 = build_channel("swap:d=3");
    CHECK(sw3.dims().in_total() == 9);

    Channel cn = build_channel("cnot");
    CHECK((cn.choi().matrix - builders::cnot().choi().matrix).cwiseAbs().maxCoeff() <
          1e-12);

    Channel id = build_channel("id2x2");
    CHECK((id.choi().matrix - builders::identity2(2).choi().matrix).cwiseAbs().maxCoeff() <
          1e-12);

    Channel mix = build_channel("mix:u=swap:d=2:p=0.3");
    Channel ref = builders::white_noise_mixture(builders::swap_gate(2), 0.3);
    CHECK((mix.choi().matrix - ref.choi().matrix).cwiseAbs().maxCoeff() < 1e-12);

    Channel rep = build_channel("replacer:maxmix");
    CHECK(rep.dims().party_count() == 2);
    CHECK((rep.choi().state() - Matrix::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() <
          1e-12);

    Channel dep = build_channel("depol:p=0.5");
    CHECK((dep.choi().matrix - builders::depolarizing(0.5, 2).choi().matrix)
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    Channel t = build_channel("tensor(id2,depol:p=0.5)");
    CHECK(t.dims().party_count() == 2);
    CHECK(t.dims().parties[0].label != t.dims().parties[1].label);

    CHECK_THROWS_AS(build_channel("swap:d=0"), Error);
    CHECK_THROWS_AS(build_channel("nonsense:x=1"), Error);
}

TEST_CASE("json round trip") {
    Channel c = build_channel("mix:u=cnot:p=0.25");
    std::string text = channel_to_json_text(c);
    Channel back = channel_from_json_text(text);
    CHECK(back.dims() == c.dims());
    CHECK((back.choi().matrix - c.choi().matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("json validation errors carry codes") {
    try {
        channel_from_json_text("{\"name\": \"x\"}");
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK_FALSE(e.code().empty());
    }
    CHECK_THROWS_AS(channel_from_json_text("not json at all"), Error);
}

TEST_CASE("significant-digit formatting") {
    CHECK(format_significant(1.0) == "1");
    CHECK(format_significant(-3.0) == "-3");
    std::string pi = format_significant(M_PI);
    CHECK(pi.substr(0, 13) == "3.14159265359");
    CHECK(format_significant(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_significant(-std::numeric_limits<double>::infinity()) == "-inf");
    // round-trips to 12 significant digits
    double v = 0.123456789012345;
    double parsed = std::stod(format_significant(v));
    CHECK(std::abs(parsed - v) < 1e-12);
}
