#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "zonoclt/zonoclt.h"

namespace {

struct Ctx {
  zc_context* c = nullptr;
  Ctx() { REQUIRE(zc_context_create(&c) == ZC_OK); }
  ~Ctx() { zc_context_destroy(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  zc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(zc_version()) > 0);
  CHECK(std::string(zc_status_string(ZC_RESOURCE_LIMIT)) == "resource limit exceeded");
}

TEST_CASE("determinant and volume through the C API") {
  Ctx ctx;
  const double m[] = {1, 3, 2, 4};  // columns (1,3), (2,4)
  double d = 0.0;
  REQUIRE(zc_det(ctx.c, 2, m, &d) == ZC_OK);
  CHECK(d == doctest::Approx(-2.0));
  double v = 0.0;
  const double sq[] = {1, 0, 0, 1, 1, 1};
  REQUIRE(zc_zonotope_volume(ctx.c, 2, 3, sq, &v) == ZC_OK);
  CHECK(v == doctest::Approx(4.0 * 3.0));
  double g = 0.0;
  REQUIRE(zc_gram_det_sqrt(ctx.c, 2, 3, sq, &g) == ZC_OK);
  CHECK(g == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("errors map to status codes and messages") {
  Ctx ctx;
  double out = 0.0;
  CHECK(zc_det(ctx.c, 2, nullptr, &out) == ZC_INVALID_INPUT);
  CHECK(std::string(zc_context_last_error(ctx.c)).size() > 0);
  CHECK(zc_det(nullptr, 1, &out, &out) == ZC_INVALID_INPUT);
  const double one[] = {1, 0, 0, 0, 0, 0, 0};
  CHECK(zc_gram_det_sqrt(ctx.c, 7, 1, one, &out) == ZC_INVALID_INPUT);
  double big[49] = {};
  CHECK(zc_zonotope_volume(ctx.c, 7, 7, big, &out) == ZC_RESOURCE_LIMIT);
  zc_config* cfg = nullptr;
  CHECK(zc_config_create(ctx.c, "nope", &cfg) == ZC_INVALID_INPUT);
  CHECK(std::string(zc_context_last_error(ctx.c)).find("nope") != std::string::npos);
  REQUIRE(zc_det(ctx.c, 2, one, &out) == ZC_OK);
  CHECK(std::string(zc_context_last_error(ctx.c)).empty());
}

TEST_CASE("splitting triple") {
  Ctx ctx;
  zc_triple t{};
  REQUIRE(zc_splitting_triple(ctx.c, 2, 8, 1, 0, &t) == ZC_OK);
  CHECK(t.x_n == doctest::Approx(t.y_n * t.z_n).epsilon(1e-10));
}

TEST_CASE("moments JSON") {
  Ctx ctx;
  char* s = nullptr;
  REQUIRE(zc_moments_json(ctx.c, 2, 0, &s) == ZC_OK);
  const std::string a = take(s);
  CHECK(a.find("beta_n") != std::string::npos);
  CHECK(a.find("yn_mean") == std::string::npos);
  REQUIRE(zc_moments_json(ctx.c, 2, 50, &s) == ZC_OK);
  CHECK(take(s).find("yn_mean") != std::string::npos);
  CHECK(zc_moments_json(ctx.c, 0, 0, &s) == ZC_INVALID_INPUT);
}

TEST_CASE("run an experiment") {
  Ctx ctx;
  zc_config* cfg = nullptr;
  REQUIRE(zc_config_create(ctx.c, "xn-clt", &cfg) == ZC_OK);
  const size_t grid[] = {10, 20};
  zc_config_set_grid(cfg, grid, 2);
  zc_config_set_samples(cfg, 150);
  zc_config_set_seed(cfg, 99);
  zc_config_set_threads(cfg, 1);
  CHECK(zc_config_set_output(ctx.c, cfg, "", "yaml") == ZC_INVALID_INPUT);
  CHECK(zc_config_set_kernel(ctx.c, cfg, "bogus") == ZC_INVALID_INPUT);
  REQUIRE(zc_config_validate(ctx.c, cfg) == ZC_OK);
  zc_report* r1 = nullptr;
  zc_report* r2 = nullptr;
  REQUIRE(zc_run(ctx.c, cfg, &r1) == ZC_OK);
  zc_config_set_threads(cfg, 2);
  REQUIRE(zc_run(ctx.c, cfg, &r2) == ZC_OK);
  CHECK(zc_report_row_count(r1) == 2);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(zc_report_statistics_json(ctx.c, r1, &a) == ZC_OK);
  REQUIRE(zc_report_statistics_json(ctx.c, r2, &b) == ZC_OK);
  CHECK(take(a) == take(b));
  char* csv = nullptr;
  REQUIRE(zc_report_csv(ctx.c, r1, &csv) == ZC_OK);
  CHECK(take(csv).find("N,mean,var") != std::string::npos);
  zc_report_destroy(r1);
  zc_report_destroy(r2);
  zc_config_set_samples(cfg, 5);
  CHECK(zc_config_validate(ctx.c, cfg) == ZC_INVALID_INPUT);
  CHECK(zc_run(ctx.c, cfg, &r1) == ZC_INVALID_INPUT);
  zc_config_destroy(cfg);
}
