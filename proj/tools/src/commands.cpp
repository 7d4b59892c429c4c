#include "cubenorm_cli/commands.hpp"

#include "cubenorm/additive.hpp"
#include "cubenorm/bounds.hpp"
#include "cubenorm/sphere_asymptotics.hpp"
#include "cubenorm/sphere_forms.hpp"
#include "cubenorm_cli/set_file.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>

namespace cubenorm::cli {

OptimizerConfig GlobalOptions::optimizer() const {
  OptimizerConfig cfg;
  cfg.starts = starts;
  cfg.max_iters = iters;
  cfg.tol = tol;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.dense_cap = dense_cap;
  return cfg;
}

Json GlobalOptions::echo() const {
  return Json{{"format", format}, {"seed", seed},           {"starts", starts},
              {"iters", iters},   {"tol", tol},             {"dense_cap", dense_cap},
              {"exact_limit", exact_limit}};
}

namespace {

std::size_t total_failures(const std::vector<BoundReport>& reports) {
  std::size_t n = 0;
  for (const auto& r : reports) {
    n += r.hard_failures();
  }
  return n;
}

Json reports_json(const std::vector<BoundReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
  }
  return arr;
}

Json members_json(const SupportSet& s) {
  Json arr = Json::array();
  for (Mask m : s) {
    arr.push_back(mask_to_bits(m, s.dimension()));
  }
  return arr;
}

// Summary numbers rendered as soft rows so analyze CSV keeps one table shape.
BoundReport summary_rows(const Json& results) {
  BoundReport s;
  s.subject = "summary";
  auto row = [&s](const std::string& name, Value v) { s.add(name, v, Relation::eq, v, true, "summary", Severity::soft); };
  row("size", static_cast<double>(results["set"]["size"].get<std::size_t>()));
  row("energy_ratio", parse_rational(results["additive"]["energy_ratio"].get<std::string>()));
  row("m_bound", static_cast<double>(results["additive"]["m_bound"].get<std::uint64_t>()));
  row("mu_lower", results["mu_lower"]["value"].get<double>());
  row("mu_upper", results["mu_upper"]["best"].get<double>());
  return s;
}

}  // namespace

CommandOutput cmd_analyze(const SupportSet& a, const GlobalOptions& opt) {
  CommandOutput out;
  out.doc.command = "analyze";
  out.doc.config = opt.echo();
  const int n = a.dimension();
  Json& res = out.doc.results;
  res["set"] = Json{{"n", n}, {"size", a.size()}};

  AdditiveLimits limits;
  limits.dense_cap = opt.dense_cap;
  const MultiplicityTable table = pair_multiplicities(a, limits);
  const BigInt energy = additive_energy(table);
  const BigInt size = to_big(a.size());
  res["additive"] = Json{{"energy", energy.get_str()},
                         {"energy_ratio", rational_string(make_rational(energy, size * size))},
                         {"m_bound", m_bound(table)},
                         {"distinct_sums", table.size()}};

  std::optional<HereditaryResult> hered;
  if (a.size() <= PairIndex::kMaxSupport) {
    hered = hereditary_energy(a, opt.exact_limit);
    res["hereditary"] = Json{{"ratio", rational_string(hered->ratio)},
                             {"exact", hered->exact},
                             {"size", hered->best.size()},
                             {"members", members_json(hered->best)}};
  } else {
    res["hereditary"] = nullptr;
  }

  require_dense(n, opt.dense_cap, "analyze: estimator");
  std::vector<SpectrumVector> extra;
  if (hered) {
    extra.push_back(SpectrumVector::indicator(a, hered->best));
  }
  const MuEstimate est = mu_lower(a, opt.optimizer(), extra);
  res["mu_lower"] = Json{{"value", est.value}, {"starts_used", est.starts_used}, {"converged", est.converged}};

  const BoundSet up = mu_upper(a);
  Json upper{{"cardinality", up.cardinality_bound}, {"multiplicity", up.multiplicity_bound}};
  upper["sphere"] = up.sphere ? Json{{"n", up.sphere->n}, {"k", up.sphere->k}} : Json(nullptr);
  upper["sphere_sum"] = up.sphere_sum_bound ? Json(up.sphere_sum_bound->get_str()) : Json(nullptr);
  upper["sphere_psi"] = up.sphere_psi_bound ? Json(*up.sphere_psi_bound) : Json(nullptr);
  upper["best"] = up.best;
  res["mu_upper"] = std::move(upper);

  std::vector<BoundReport> reports;
  require_dense(n, opt.dense_cap, "analyze: uncertainty");
  reports.push_back(uncertainty_report(synthesize(embed(SpectrumVector::uniform(a), opt.dense_cap), opt.dense_cap),
                                       opt.dense_cap, opt.exact_limit));
  BoundReport bracket;
  bracket.subject = "estimator bracket";
  bracket.add_float("E(A)/|A|^2 <= mu_lower", to_double(make_rational(energy, size * size)), Relation::le,
                    est.value + 1e-8, "energy ratio below mu");
  if (hered) {
    bracket.add_float("hereditary ratio <= mu_lower", to_double(hered->ratio), Relation::le, est.value + 1e-8,
                      "hereditary energy below mu");
  }
  bracket.add_float("mu_lower <= mu_upper", est.value, Relation::le, up.best + 1e-8, "bracket");
  reports.push_back(std::move(bracket));

  res["reports"] = reports_json(reports);
  out.doc.provenance = collect_anchors(reports);
  std::vector<BoundReport> csv_reports{summary_rows(res)};
  csv_reports.insert(csv_reports.end(), reports.begin(), reports.end());
  out.csv = reports_to_csv(csv_reports);
  out.exit_code = total_failures(reports) == 0 ? kOk : kHardFailure;
  return out;
}

CommandOutput cmd_sphere_table(int n, int k, bool exact, int t_begin, int t_end, const GlobalOptions& opt) {
  const SphereParams p{n, k};
  p.validate();
  CommandOutput out;
  out.doc.command = "sphere-table";
  out.doc.config = opt.echo();
  out.doc.config["mode"] = exact ? "exact" : "float";
  out.doc.config["t_begin"] = t_begin;
  out.doc.config["t_end"] = t_end;

  const std::vector<SphereTableRow> rows = sphere_table(p, t_begin, t_end);
  Json jrows = Json::array();
  out.csv = csv_row({"t", "s_t", "ratio_to_prev", "cumulative"});
  for (const SphereTableRow& row : rows) {
    if (exact) {
      jrows.push_back(row_to_json(row));
      out.csv += csv_row({std::to_string(row.t), rational_string(row.s_t),
                          row.ratio_to_prev ? rational_string(*row.ratio_to_prev) : "",
                          rational_string(row.cumulative)});
    } else {
      Json j{{"t", row.t}, {"s_t", to_double(row.s_t)}};
      j["ratio_to_prev"] = row.ratio_to_prev ? Json(to_double(*row.ratio_to_prev)) : Json(nullptr);
      j["cumulative"] = to_double(row.cumulative);
      jrows.push_back(std::move(j));
      out.csv += csv_row({std::to_string(row.t), format_double(to_double(row.s_t)),
                          row.ratio_to_prev ? format_double(to_double(*row.ratio_to_prev)) : "",
                          format_double(to_double(row.cumulative))});
    }
  }

  const BigRational r = r_exact(p);
  Json footer;
  footer["r"] = exact ? Json(rational_string(r)) : Json(to_double(r));
  footer["t1"] = t1(p);
  footer["argmax_t"] = argmax_st(p);
  if (2 * k <= n) {
    const double ps = psi_value(static_cast<double>(k) / n);
    footer["psi"] = ps;
    footer["psi_bound"] = std::exp2(n * ps);
  } else {
    footer["psi"] = nullptr;
    footer["psi_bound"] = nullptr;
  }
  for (const auto& [key, value] : footer.items()) {
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_float()) {
      text = format_double(value.get<double>());
    } else if (!value.is_null()) {
      text = value.dump();
    }
    out.csv += csv_row({"footer:" + key, text, "", ""});
  }
  out.doc.results = Json{{"n", n}, {"k", k}, {"rows", std::move(jrows)}, {"footer", std::move(footer)}};
  return out;
}

CommandOutput cmd_scan(int n_max, const GlobalOptions& opt) {
  CommandOutput out;
  out.doc.command = "scan";
  out.doc.config = opt.echo();
  out.doc.config["n_max"] = n_max;
  const std::vector<ConjectureRecord> records = conjecture_scan(n_max, opt.optimizer());
  Json arr = Json::array();
  std::size_t violations = 0;
  for (const ConjectureRecord& r : records) {
    arr.push_back(record_to_json(r));
    // The estimator must sit inside [energy ratio, mu_upper].
    if (r.gap < -1e-8 || r.gap > r.upper_gap + 1e-8) {
      ++violations;
    }
  }
  out.doc.results = Json{{"n_max", n_max}, {"records", std::move(arr)}, {"bracket_violations", violations}};
  out.doc.provenance = {"sphere energy ratio conjecture"};
  out.csv = records_to_csv(records);
  out.exit_code = violations == 0 ? kOk : kHardFailure;
  return out;
}

CommandOutput cmd_verify(Suite suite, const GlobalOptions& opt) {
  CommandOutput out;
  out.doc.command = "verify";
  out.doc.config = opt.echo();
  out.doc.config["suite"] = suite_name(suite);
  SuiteConfig cfg;
  cfg.seed = opt.seed;
  cfg.optimizer = opt.optimizer();
  cfg.exact_limit = opt.exact_limit;
  const std::vector<BoundReport> reports = run_suite(suite, cfg);
  const std::size_t failures = total_failures(reports);
  out.doc.results = Json{{"suite", suite_name(suite)},
                         {"overall", failures == 0},
                         {"hard_failures", failures},
                         {"reports", reports_json(reports)}};
  out.doc.provenance = collect_anchors(reports);
  out.csv = reports_to_csv(reports);
  out.exit_code = failures == 0 ? kOk : kHardFailure;
  return out;
}

namespace {

void add_global_options(CLI::App& cmd, GlobalOptions& opt) {
  cmd.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd.add_option("--seed", opt.seed, "Seed for random starts and corpora")->capture_default_str();
  cmd.add_option("--starts", opt.starts, "Random starts for the estimator")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--iters", opt.iters, "Iteration cap per start")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--tol", opt.tol, "Relative stall tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--dense-cap", opt.dense_cap, "Largest n for dense arrays")
      ->check(CLI::Range(0, kAbsoluteDenseCap))
      ->capture_default_str();
  cmd.add_option("--exact-limit", opt.exact_limit, "Largest |A| for exhaustive hereditary search")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  cmd.add_option("--threads", opt.threads, "Worker threads (wall time only)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void emit(const CommandOutput& result, const GlobalOptions& opt, std::ostream& out) {
  if (opt.format == "csv") {
    out << result.csv;
  } else {
    out << dump_document(result.doc);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourth-moment bounds for functions on the Boolean cube with restricted Fourier support"};
  app.name("cubenorm");
  app.require_subcommand(1);
  GlobalOptions opt;

  std::string set_path;
  auto* analyze = app.add_subcommand("analyze", "Bounds and estimates for a set read from a file");
  analyze->add_option("input", set_path, "Set file")->required();
  add_global_options(*analyze, opt);

  int table_n = 0;
  int table_k = 0;
  std::string mode = "exact";
  int t_begin = 0;
  int t_end = -1;
  auto* table = app.add_subcommand("sphere-table", "Exact summands s_t(n,k) and their total r(n,k)");
  table->add_option("n", table_n)->required()->check(CLI::PositiveNumber);
  table->add_option("k", table_k)->required()->check(CLI::NonNegativeNumber);
  table->add_option("--mode", mode, "exact rationals or floats")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  table->add_option("--t-begin", t_begin, "First row")->capture_default_str();
  table->add_option("--t-end", t_end, "Last row, -1 for k")->capture_default_str();
  add_global_options(*table, opt);

  int n_max = 0;
  auto* scan = app.add_subcommand("scan", "Estimator against the energy ratio on spheres up to n_max");
  scan->add_option("n_max", n_max)->required()->check(CLI::Range(2, kAbsoluteDenseCap));
  add_global_options(*scan, opt);

  std::string suite_text = "all";
  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  verify->add_option("suite", suite_text, "all|core|additive|sphere|asymptotics|bounds")->capture_default_str();
  add_global_options(*verify, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CommandOutput result;
    if (*analyze) {
      result = cmd_analyze(read_set_file(set_path), opt);
    } else if (*table) {
      result = cmd_sphere_table(table_n, table_k, mode == "exact", t_begin, t_end, opt);
    } else if (*scan) {
      require_dense(n_max, opt.dense_cap, "scan");
      result = cmd_scan(n_max, opt);
    } else {
      const auto suite = parse_suite(suite_text);
      if (!suite) {
        err << "error: unknown suite '" << suite_text << "'\n";
        return kUsage;
      }
      result = cmd_verify(*suite, opt);
    }
    emit(result, opt, out);
    if (result.exit_code == kHardFailure) {
      err << "hard check failures present\n";
    }
    return result.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimitError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kHardFailure;
  }
}

}  // namespace cubenorm::cli
