/* Apache License, Version 2.0 */

#include <sstream>

#include "doctest.h"
#include "gbpd/diagram.hpp"
#include "gbpd/error.hpp"
#include "gbpd/io.hpp"
#include "json.hpp"

using namespace gbpd;

namespace {

std::string error_of(const std::string& csv) {
  std::istringstream is(csv);
  try {
    read_scene_csv(is, "scene.csv");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("scene CSV round trip and sorting") {
    std::istringstream is("id,px,py,m11,m12,m22,w\n2,1,2,1,0,1,0\n0,0.1,0.2,2,0.5,1,-3\n");
    const Scene s = read_scene_csv(is);
    REQUIRE(s.size() == 2);
    CHECK(s[0].id == 0);
    CHECK(s[0].m == SymMat2{2, 0.5, 1});
    CHECK(s[0].w == -3);
    std::ostringstream os;
    write_scene_csv(os, s);
    std::istringstream again(os.str());
    CHECK(read_scene_csv(again) == s);
  }

  TEST_CASE("CSV errors name the line") {
    CHECK(error_of("id,px,py,m11,m12,m22,w\n0,0,0,1,0,1,0\n1,0,0,1,x,1,0\n").find("3") != std::string::npos);
    CHECK(error_of("id,px,py,m11,m12,m22,w\n0,0,0,1,2,1,0\n").find("2") != std::string::npos);
    CHECK(error_of("id,px,py,m11,m12,m22,w\n0,0,0,1,0,1\n") != "");
    CHECK(error_of("id,px,py,m11,m12,m22,w\n0,0,0,1,0,1,0\n0,1,1,1,0,1,0\n") != "");
    CHECK(error_of("x,y\n") != "");
  }

  TEST_CASE("presets") {
    CHECK(parse_preset("paper-random") == Preset::PaperRandom);
    CHECK_THROWS_AS(parse_preset("nonsense"), Error);

    const Scene a = generate_scene(Preset::PaperRandom, 148, 7);
    REQUIRE(a.size() == 148);
    for (const Generator& g : a) {
      CHECK(g.p.x >= 0);
      CHECK(g.p.x <= 400);
      CHECK(g.p.y >= 0);
      CHECK(g.p.y <= 400);
      CHECK(g.m.positive_definite());
    }
    std::ostringstream x, y;
    write_scene_csv(x, a);
    write_scene_csv(y, generate_scene(Preset::PaperRandom, 148, 7));
    CHECK(x.str() == y.str());

    for (const Generator& g : generate_scene(Preset::PaperWeights, 16, 3)) {
      CHECK(g.w > -1);
      CHECK(g.w < 3);
    }
    for (const Generator& g : generate_scene(Preset::Isotropic, 10, 3)) CHECK(g.m == SymMat2::identity());
  }

  TEST_CASE("diagram JSON content") {
    const DiagramGraph g = build_diagram({{4, {0, 0}, SymMat2::identity(), 0.0}, {9, {2, 0}, SymMat2::identity(), 0.0}});
    std::ostringstream os;
    write_diagram_json(os, g);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["vertices"].size() == 0);
    REQUIRE(j["edges"].size() == 1);
    CHECK(j["edges"][0]["pair"] == nlohmann::json::array({4, 9}));
    CHECK(j["edges"][0]["t_a"] == "-inf");
    CHECK(format_double(0.1) == "0.10000000000000001");
  }
}
