#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "zonoclt/error.hpp"
#include "zonoclt/harness.hpp"

namespace zonoclt {

namespace {

using json = nlohmann::ordered_json;

json config_to_json(const ExperimentConfig& c) {
  return json{{"experiment", to_string(c.experiment)},
              {"n", c.n},
              {"N_grid", c.N_grid},
              {"samples", c.replications},
              {"seed", c.master_seed},
              {"threads", c.threads},
              {"output_path", c.output_path},
              {"format", to_string(c.output_format)},
              {"emit_qq", c.emit_qq},
              {"kernel", c.kernel},
              {"p", c.p},
              {"zeta_outer", c.zeta_outer},
              {"zeta_inner", c.zeta_inner}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.experiment = parse_experiment(j.at("experiment").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.N_grid = j.at("N_grid").get<std::vector<std::size_t>>();
  c.replications = j.at("samples").get<std::size_t>();
  c.master_seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<unsigned>();
  c.output_path = j.at("output_path").get<std::string>();
  c.output_format = parse_output_format(j.at("format").get<std::string>());
  c.emit_qq = j.at("emit_qq").get<bool>();
  c.kernel = j.at("kernel").get<std::string>();
  c.p = j.at("p").get<int>();
  c.zeta_outer = j.at("zeta_outer").get<std::size_t>();
  c.zeta_inner = j.at("zeta_inner").get<std::size_t>();
  return c;
}

json row_to_json(const ReportRow& r) {
  json extra = json::object();
  for (const auto& [k, v] : r.extra) extra[k] = v;
  return json{{"N", r.N},
              {"mean", r.mean},
              {"var", r.var},
              {"ks_d", r.ks_d},
              {"var_ratio", r.var_ratio},
              {"alpha_mean", r.alpha_mean},
              {"beta_mean", r.beta_mean},
              {"delta_mean", r.delta_mean},
              {"resamples", r.resamples},
              {"extra", std::move(extra)}};
}

ReportRow row_from_json(const json& j) {
  ReportRow r;
  r.N = j.at("N").get<std::size_t>();
  r.mean = j.at("mean").get<double>();
  r.var = j.at("var").get<double>();
  r.ks_d = j.at("ks_d").get<double>();
  r.var_ratio = j.at("var_ratio").get<double>();
  r.alpha_mean = j.at("alpha_mean").get<double>();
  r.beta_mean = j.at("beta_mean").get<double>();
  r.delta_mean = j.at("delta_mean").get<double>();
  r.resamples = j.at("resamples").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("extra").items()) r.extra[k] = v.get<double>();
  return r;
}

json statistics_object(const ExperimentReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row_to_json(row));
  json summary = json::object();
  for (const auto& [k, v] : r.summary) summary[k] = v;
  return json{{"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

void check_finite(const ExperimentReport& r) {
  auto bad = [](double v) { return !std::isfinite(v); };
  for (const auto& row : r.rows) {
    if (bad(row.mean) || bad(row.var) || bad(row.ks_d) || bad(row.var_ratio) || bad(row.alpha_mean) ||
        bad(row.beta_mean) || bad(row.delta_mean))
      throw_invalid("report row N=" + std::to_string(row.N) + " has a non-finite statistic");
    for (const auto& [k, v] : row.extra)
      if (bad(v)) throw_invalid("report row N=" + std::to_string(row.N) + " has non-finite '" + k + "'");
  }
  for (const auto& [k, v] : r.summary)
    if (bad(v)) throw_invalid("report summary has non-finite '" + k + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace

std::string report_to_json(const ExperimentReport& r, int indent) {
  check_finite(r);
  json qq = json::object();
  for (const auto& [N, pts] : r.qq) {
    json arr = json::array();
    for (const auto& [t, x] : pts) arr.push_back({t, x});
    qq[std::to_string(N)] = std::move(arr);
  }
  json j{{"version", r.version},
         {"config", config_to_json(r.config)},
         {"threads_used", r.threads_used},
         {"statistics", statistics_object(r)},
         {"qq", std::move(qq)},
         {"timing", {{"wall_seconds", r.wall_seconds}}}};
  return j.dump(indent);
}

ExperimentReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw_invalid(std::string("report_from_json: ") + e.what());
  }
  try {
    ExperimentReport r;
    r.version = j.at("version").get<std::string>();
    r.config = config_from_json(j.at("config"));
    r.threads_used = j.at("threads_used").get<unsigned>();
    const json& stats = j.at("statistics");
    for (const auto& row : stats.at("rows")) r.rows.push_back(row_from_json(row));
    for (const auto& [k, v] : stats.at("summary").items()) r.summary[k] = v.get<double>();
    for (const auto& [k, arr] : j.at("qq").items()) {
      auto& pts = r.qq[std::stoull(k)];
      for (const auto& p : arr) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    r.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw_invalid(std::string("report_from_json: ") + e.what());
  }
}

std::string statistics_json(const ExperimentReport& r, int indent) {
  check_finite(r);
  return statistics_object(r).dump(indent);
}

std::string report_to_csv(const ExperimentReport& r) {
  check_finite(r);
  std::ostringstream os;
  os.precision(17);
  os << "# version=" << r.version << "\n";
  os << "# experiment=" << to_string(r.config.experiment) << " n=" << r.config.n
     << " seed=" << r.config.master_seed << " threads=" << r.threads_used
     << " samples=" << r.config.replications << "\n";
  os << "N,mean,var,ks_d,var_ratio,alpha_mean,beta_mean,delta_mean,resamples\n";
  for (const auto& row : r.rows) {
    os << row.N << ',' << row.mean << ',' << row.var << ',' << row.ks_d << ',' << row.var_ratio << ','
       << row.alpha_mean << ',' << row.beta_mean << ',' << row.delta_mean << ',' << row.resamples << "\n";
  }
  return os.str();
}

std::string qq_to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "# version=" << r.version << " seed=" << r.config.master_seed << " threads=" << r.threads_used << "\n";
  os << "N,theoretical_quantile,sample_quantile\n";
  for (const auto& [N, pts] : r.qq)
    for (const auto& [t, x] : pts) os << N << ',' << t << ',' << x << "\n";
  return os.str();
}

std::string qq_path_for(const std::string& output_path) {
  if (output_path.empty()) return "qq.csv";
  const auto slash = output_path.find_last_of('/');
  const auto dot = output_path.find_last_of('.');
  const std::string stem =
      dot != std::string::npos && (slash == std::string::npos || dot > slash) ? output_path.substr(0, dot)
                                                                              : output_path;
  return stem + ".qq.csv";
}

void emit_report(const ExperimentReport& r, const ExperimentConfig& cfg) {
  const std::string body = cfg.output_format == OutputFormat::Json ? report_to_json(r) + "\n" : report_to_csv(r);
  if (cfg.output_path.empty()) {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::Io, "write to stdout failed");
  } else {
    write_file(cfg.output_path, body);
  }
  if (cfg.emit_qq) write_file(qq_path_for(cfg.output_path), qq_to_csv(r));
}

}  // namespace zonoclt
