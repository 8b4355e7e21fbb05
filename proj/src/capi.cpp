#include "zonoclt/zonoclt.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "zonoclt/error.hpp"
#include "zonoclt/geometry.hpp"
#include "zonoclt/harness.hpp"
#include "zonoclt/linalg.hpp"
#include "zonoclt/moments.hpp"
#include "zonoclt/ustat.hpp"
#include "zonoclt/version.hpp"

struct zc_context {
  std::string last_error;
  unsigned threads = 0;
};

struct zc_config {
  zonoclt::ExperimentConfig cfg;
};

struct zc_report {
  zonoclt::ExperimentReport report;
};

namespace {

zc_status status_of(zonoclt::ErrorCode code) {
  switch (code) {
    case zonoclt::ErrorCode::InvalidInput:
      return ZC_INVALID_INPUT;
    case zonoclt::ErrorCode::RankDeficient:
      return ZC_RANK_DEFICIENT;
    case zonoclt::ErrorCode::ResourceLimit:
      return ZC_RESOURCE_LIMIT;
    case zonoclt::ErrorCode::Io:
      return ZC_IO_ERROR;
  }
  return ZC_INTERNAL_ERROR;
}

/// Runs fn, translating exceptions into a status and ctx->last_error.
template <class Fn>
zc_status guarded(zc_context* ctx, Fn&& fn) {
  if (ctx == nullptr) return ZC_INVALID_INPUT;
  ctx->last_error.clear();
  try {
    fn();
    return ZC_OK;
  } catch (const zonoclt::Error& e) {
    ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return ZC_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return ZC_INTERNAL_ERROR;
  } catch (...) {
    ctx->last_error = "unknown error";
    return ZC_INTERNAL_ERROR;
  }
}

void require(bool cond, const char* what) {
  if (!cond) zonoclt::throw_invalid(what);
}

zonoclt::ColumnMatrix matrix_from(size_t n, size_t N, const double* data) {
  require(data != nullptr, "matrix data is NULL");
  require(n > 0, "matrix dimension must be positive");
  zonoclt::ColumnMatrix m(n, N);
  std::memcpy(m.data().data(), data, n * N * sizeof(double));
  return m;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* zc_version(void) { return zonoclt::kVersionString; }

const char* zc_status_string(zc_status status) {
  switch (status) {
    case ZC_OK:
      return "ok";
    case ZC_INVALID_INPUT:
      return "invalid input";
    case ZC_RANK_DEFICIENT:
      return "rank deficient";
    case ZC_RESOURCE_LIMIT:
      return "resource limit exceeded";
    case ZC_IO_ERROR:
      return "I/O error";
    case ZC_INTERNAL_ERROR:
      return "internal error";
  }
  return "unknown status";
}

zc_status zc_context_create(zc_context** out) {
  if (out == nullptr) return ZC_INVALID_INPUT;
  *out = new (std::nothrow) zc_context();
  return *out ? ZC_OK : ZC_RESOURCE_LIMIT;
}

void zc_context_destroy(zc_context* ctx) { delete ctx; }

const char* zc_context_last_error(const zc_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

zc_status zc_context_set_threads(zc_context* ctx, unsigned threads) {
  if (ctx == nullptr) return ZC_INVALID_INPUT;
  ctx->threads = threads;
  return ZC_OK;
}

void zc_string_free(char* s) { std::free(s); }

zc_status zc_det(zc_context* ctx, size_t n, const double* data, double* out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "output pointer is NULL");
    *out = zonoclt::det(matrix_from(n, n, data));
  });
}

zc_status zc_gram_det_sqrt(zc_context* ctx, size_t n, size_t N, const double* data, double* out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "output pointer is NULL");
    *out = zonoclt::gram_det_sqrt(matrix_from(n, N, data));
  });
}

zc_status zc_zonotope_volume(zc_context* ctx, size_t n, size_t N, const double* data, double* out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "output pointer is NULL");
    *out = zonoclt::zonotope_volume(zonoclt::Zonotope(matrix_from(n, N, data)), ctx->threads);
  });
}

zc_status zc_splitting_triple(zc_context* ctx, size_t n, size_t N, uint64_t seed, uint64_t stream,
                              zc_triple* out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "output pointer is NULL");
    zonoclt::SeededStream s(seed, stream);
    const auto t = zonoclt::sample_splitting_triple(n, N, s, ctx->threads);
    *out = zc_triple{t.x_n, t.y_n, t.z_n, t.alpha, t.beta, t.delta, t.resamples};
  });
}

zc_status zc_moments_json(zc_context* ctx, size_t n, size_t N, char** out_json) {
  return guarded(ctx, [&] {
    require(out_json != nullptr, "output pointer is NULL");
    const zonoclt::MomentTable t = N == 0 ? zonoclt::MomentTable(n) : zonoclt::MomentTable(n, N);
    *out_json = dup_string(t.to_json());
  });
}

zc_status zc_config_create(zc_context* ctx, const char* experiment, zc_config** out) {
  return guarded(ctx, [&] {
    require(experiment != nullptr && out != nullptr, "NULL argument");
    *out = new zc_config{zonoclt::ExperimentConfig::defaults_for(zonoclt::parse_experiment(experiment))};
  });
}

void zc_config_destroy(zc_config* cfg) { delete cfg; }

zc_status zc_config_set_n(zc_config* cfg, size_t n) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.n = n;
  return ZC_OK;
}

zc_status zc_config_set_grid(zc_config* cfg, const size_t* values, size_t count) {
  if (cfg == nullptr || (values == nullptr && count > 0)) return ZC_INVALID_INPUT;
  cfg->cfg.N_grid.assign(values, values + count);
  return ZC_OK;
}

zc_status zc_config_set_samples(zc_config* cfg, size_t samples) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.replications = samples;
  return ZC_OK;
}

zc_status zc_config_set_seed(zc_config* cfg, uint64_t seed) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.master_seed = seed;
  return ZC_OK;
}

zc_status zc_config_set_threads(zc_config* cfg, unsigned threads) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.threads = threads;
  return ZC_OK;
}

zc_status zc_config_set_emit_qq(zc_config* cfg, int enabled) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.emit_qq = enabled != 0;
  return ZC_OK;
}

zc_status zc_config_set_p(zc_config* cfg, int p) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.p = p;
  return ZC_OK;
}

zc_status zc_config_set_zeta_draws(zc_config* cfg, size_t outer, size_t inner) {
  if (cfg == nullptr) return ZC_INVALID_INPUT;
  cfg->cfg.zeta_outer = outer;
  cfg->cfg.zeta_inner = inner;
  return ZC_OK;
}

zc_status zc_config_set_output(zc_context* ctx, zc_config* cfg, const char* path, const char* format) {
  return guarded(ctx, [&] {
    require(cfg != nullptr, "config is NULL");
    cfg->cfg.output_path = path ? path : "";
    if (format != nullptr) cfg->cfg.output_format = zonoclt::parse_output_format(format);
  });
}

zc_status zc_config_set_kernel(zc_context* ctx, zc_config* cfg, const char* label) {
  return guarded(ctx, [&] {
    require(cfg != nullptr && label != nullptr, "NULL argument");
    zonoclt::make_kernel(label, cfg->cfg.n == 0 ? 1 : cfg->cfg.n);
    cfg->cfg.kernel = label;
  });
}

zc_status zc_config_validate(zc_context* ctx, const zc_config* cfg) {
  return guarded(ctx, [&] {
    require(cfg != nullptr, "config is NULL");
    cfg->cfg.validate();
  });
}

zc_status zc_run(zc_context* ctx, const zc_config* cfg, zc_report** out) {
  return guarded(ctx, [&] {
    require(cfg != nullptr && out != nullptr, "NULL argument");
    *out = new zc_report{zonoclt::run_experiment(cfg->cfg)};
  });
}

void zc_report_destroy(zc_report* report) { delete report; }

size_t zc_report_row_count(const zc_report* report) { return report ? report->report.rows.size() : 0; }

zc_status zc_report_json(zc_context* ctx, const zc_report* report, char** out) {
  return guarded(ctx, [&] {
    require(report != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(zonoclt::report_to_json(report->report));
  });
}

zc_status zc_report_statistics_json(zc_context* ctx, const zc_report* report, char** out) {
  return guarded(ctx, [&] {
    require(report != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(zonoclt::statistics_json(report->report));
  });
}

zc_status zc_report_csv(zc_context* ctx, const zc_report* report, char** out) {
  return guarded(ctx, [&] {
    require(report != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(zonoclt::report_to_csv(report->report));
  });
}

zc_status zc_report_emit(zc_context* ctx, const zc_report* report) {
  return guarded(ctx, [&] {
    require(report != nullptr, "report is NULL");
    zonoclt::emit_report(report->report, report->report.config);
  });
}

}  // extern "C"
