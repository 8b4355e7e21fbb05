// Command-line front end. Links only the C API.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zonoclt/zonoclt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitBudget = 3;

int exit_code_for(zc_status s) {
  switch (s) {
    case ZC_OK:
      return kExitOk;
    case ZC_INVALID_INPUT:
      return kExitInvalidConfig;
    case ZC_RESOURCE_LIMIT:
      return kExitBudget;
    default:
      return kExitFailure;
  }
}

struct ContextDeleter {
  void operator()(zc_context* c) const { zc_context_destroy(c); }
};
struct ConfigDeleter {
  void operator()(zc_config* c) const { zc_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(zc_report* r) const { zc_report_destroy(r); }
};
struct StringDeleter {
  void operator()(char* s) const { zc_string_free(s); }
};

int fail(zc_context* ctx, zc_status s) {
  std::fprintf(stderr, "zonoclt: %s: %s\n", zc_status_string(s), zc_context_last_error(ctx));
  return exit_code_for(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments for random Gaussian zonotopes"};
  app.set_version_flag("--version", std::string(zc_version()));

  std::string experiment;
  std::size_t n = 0;
  std::vector<std::size_t> grid;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string format = "json";
  bool emit_qq = false;
  std::string kernel;
  int p = 0;
  std::size_t zeta_outer = 0;
  std::size_t zeta_inner = 0;

  app.add_option("experiment", experiment,
                 "xn-clt | yn-variance | zn-clt | decomposition | zeta-ratio | berry-esseen | "
                 "moment-scaling | moments-dump | moments")
      ->required();
  auto* o_n = app.add_option("--n", n, "Ambient dimension");
  auto* o_grid = app.add_option("--N-grid", grid, "Comma-separated generator counts")->delimiter(',');
  auto* o_samples = app.add_option("--samples", samples, "Replications per N");
  auto* o_seed = app.add_option("--seed", seed, "Master seed");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (0 = all)");
  app.add_option("--out", out, "Output path (default stdout)");
  app.add_option("--format", format, "json | csv");
  app.add_flag("--emit-qq", emit_qq, "Write QQ points next to the output");
  auto* o_kernel = app.add_option("--kernel", kernel, "U-statistic kernel label");
  auto* o_p = app.add_option("--p", p, "Moment order for moment-scaling (2 or 4)");
  auto* o_zo = app.add_option("--zeta-outer", zeta_outer, "Outer draws for the zeta estimate");
  auto* o_zi = app.add_option("--zeta-inner", zeta_inner, "Inner draws for the zeta estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "zonoclt: %s\n", e.what());
    return kExitInvalidConfig;
  }

  zc_context* raw_ctx = nullptr;
  if (zc_context_create(&raw_ctx) != ZC_OK) return kExitFailure;
  std::unique_ptr<zc_context, ContextDeleter> ctx(raw_ctx);
  if (*o_threads) zc_context_set_threads(ctx.get(), threads);

  // Plain moment table, no experiment report.
  if (experiment == "moments") {
    const std::size_t dim = *o_n ? n : 2;
    nlohmann::ordered_json doc;
    char* text = nullptr;
    zc_status s = zc_moments_json(ctx.get(), dim, 0, &text);
    if (s != ZC_OK) return fail(ctx.get(), s);
    doc = nlohmann::ordered_json::parse(std::unique_ptr<char, StringDeleter>(text).get());
    if (*o_grid) {
      auto per_n = nlohmann::ordered_json::array();
      for (std::size_t N : grid) {
        s = zc_moments_json(ctx.get(), dim, N, &text);
        if (s != ZC_OK) return fail(ctx.get(), s);
        per_n.push_back(nlohmann::ordered_json::parse(std::unique_ptr<char, StringDeleter>(text).get()));
      }
      doc["per_N"] = std::move(per_n);
    }
    const std::string body = doc.dump(2) + "\n";
    if (out.empty()) {
      std::fputs(body.c_str(), stdout);
      return kExitOk;
    }
    std::FILE* f = std::fopen(out.c_str(), "w");
    if (f == nullptr || std::fputs(body.c_str(), f) < 0 || std::fclose(f) != 0) {
      std::fprintf(stderr, "zonoclt: cannot write '%s'\n", out.c_str());
      return kExitFailure;
    }
    return kExitOk;
  }

  zc_config* raw_cfg = nullptr;
  zc_status s = zc_config_create(ctx.get(), experiment.c_str(), &raw_cfg);
  if (s != ZC_OK) return fail(ctx.get(), s);
  std::unique_ptr<zc_config, ConfigDeleter> cfg(raw_cfg);

  if (*o_n) zc_config_set_n(cfg.get(), n);
  if (*o_grid) zc_config_set_grid(cfg.get(), grid.data(), grid.size());
  if (*o_samples) zc_config_set_samples(cfg.get(), samples);
  if (*o_seed) zc_config_set_seed(cfg.get(), seed);
  if (*o_threads) zc_config_set_threads(cfg.get(), threads);
  if (*o_p) zc_config_set_p(cfg.get(), p);
  if (*o_zo || *o_zi) {
    zc_config_set_zeta_draws(cfg.get(), *o_zo ? zeta_outer : 2000, *o_zi ? zeta_inner : 2000);
  }
  zc_config_set_emit_qq(cfg.get(), emit_qq ? 1 : 0);
  if ((s = zc_config_set_output(ctx.get(), cfg.get(), out.c_str(), format.c_str())) != ZC_OK)
    return fail(ctx.get(), s);
  if (*o_kernel && (s = zc_config_set_kernel(ctx.get(), cfg.get(), kernel.c_str())) != ZC_OK)
    return fail(ctx.get(), s);
  if ((s = zc_config_validate(ctx.get(), cfg.get())) != ZC_OK) return fail(ctx.get(), s);

  zc_report* raw_report = nullptr;
  if ((s = zc_run(ctx.get(), cfg.get(), &raw_report)) != ZC_OK) return fail(ctx.get(), s);
  std::unique_ptr<zc_report, ReportDeleter> report(raw_report);
  if ((s = zc_report_emit(ctx.get(), report.get())) != ZC_OK) return fail(ctx.get(), s);
  return kExitOk;
}
