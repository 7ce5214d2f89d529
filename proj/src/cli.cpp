#include "glq/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "glq/acceptance.hpp"
#include "glq/constants.hpp"
#include "glq/distribution.hpp"
#include "glq/ensembles.hpp"
#include "glq/singer.hpp"

namespace glq::cli {

namespace {

using records::Record;
using records::RecordWriter;

std::string d15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

u128 parse_u128_or_throw(const std::string& s, const char* what) {
  auto v = parse_u128(s);
  if (!v) throw InvalidArgument(std::string(what) + ": not a valid integer: " + s);
  return *v;
}

// Resolve the group parameter q from either --q or --p/--r.
arith::PrimePower resolve_q(const RunConfig& cfg) {
  if (!cfg.q.empty()) return arith::prime_power_from_q(parse_u128_or_throw(cfg.q, "q"));
  if (!cfg.p.empty())
    return arith::make_prime_power(parse_u128_or_throw(cfg.p, "p"),
                                   cfg.r == 0 ? 1 : cfg.r);
  throw InvalidArgument("missing field size: pass --q or --p (with optional --r)");
}

u128 resolve_p(const RunConfig& cfg) {
  if (cfg.p.empty()) throw InvalidArgument("missing characteristic: pass --p");
  return parse_u128_or_throw(cfg.p, "p");
}

ensembles::EnsembleConfig ensemble_config(const RunConfig& cfg, std::ostream& err) {
  ensembles::EnsembleConfig ecfg;
  ecfg.workers = cfg.worker_count;
  if (cfg.prime_bound != 0) ecfg.theory_prime_bound = cfg.prime_bound;
  if (cfg.k != 0) ecfg.theory_K = cfg.k;
  ecfg.progress = cfg.progress ? &err : nullptr;
  return ecfg;
}

Record certified_record(const char* command, const constants::CertifiedValue& cv) {
  Record rec;
  rec.add("command", command);
  rec.add("estimate", d15(cv.estimate));
  rec.add("error_bound", d15(cv.error_bound));
  rec.add("lower", d15(cv.lower()));
  rec.add("upper", d15(cv.upper()));
  rec.add("truncation", std::to_string(cv.truncation));
  rec.add("meta", cv.meta);
  return rec;
}

Record average_record(const ensembles::AverageReport& rep, bool csv_strict) {
  Record rec;
  rec.add("mode", ensembles::mode_name(rep.mode));
  rec.add("params", rep.params_str());
  rec.add("x", d15(rep.x));
  rec.add("sample_size", std::to_string(rep.sample_size));
  rec.add("raw_sum", d15(rep.raw_sum));
  rec.add("empirical_mean", d15(rep.empirical_mean));
  rec.add("theoretical_estimate", d15(rep.theoretical.estimate));
  rec.add("theoretical_error_bound", d15(rep.theoretical.error_bound));
  rec.add("discrepancy", d15(rep.discrepancy));
  if (!csv_strict) {
    rec.add("requested_x", d15(rep.requested_x));
    rec.add("truncated", rep.truncated ? "true" : "false");
    rec.add("exact_terms", std::to_string(rep.exact_terms));
  }
  return rec;
}

void run_density_family(const RunConfig& cfg, RecordWriter& writer) {
  if (cfg.n == 0) throw InvalidArgument("missing rank: pass --n");
  auto spec = singer::make_group_spec(cfg.n, resolve_q(cfg));
  Record rec;
  rec.add("command", cfg.verb);
  rec.add("n", std::to_string(spec.n));
  rec.add("q", to_string(spec.q.q));
  if (cfg.verb == "density") {
    auto d = singer::density(spec);
    rec.add("phi", to_string(d.phi_value));
    rec.add("modulus", to_string(d.modulus));
    rec.add("numerator", to_string(d.phi_value));
    rec.add("denominator", to_string(checked_mul(spec.n, d.modulus)));
    rec.add("density", d.density.str());
    rec.add("decimal", d15(d.value));
  } else if (cfg.verb == "count") {
    rec.add("singer_count", to_string(singer::singer_count(spec)));
  } else if (cfg.verb == "gl-order") {
    rec.add("gl_order", to_string(singer::gl_order(spec)));
  } else {  // primitive-polys
    rec.add("primitive_polys", to_string(singer::primitive_poly_count(spec)));
  }
  writer.write(rec);
}

void run_constants(const RunConfig& cfg, RecordWriter& writer) {
  if (cfg.subverb == "artin") {
    u32 n = cfg.n == 0 ? 1 : cfg.n;
    u64 bound = cfg.prime_bound == 0 ? 1'000'000 : cfg.prime_bound;
    auto cv = constants::euler_product_pn(n, bound);
    Record rec = certified_record("constants artin", cv);
    rec.add("n", std::to_string(n));
    writer.write(rec);
    return;
  }
  // series
  u128 p = resolve_p(cfg);
  u32 r = cfg.r == 0 ? 1 : cfg.r;
  if (cfg.direct) {
    u64 m = cfg.m_bound == 0 ? 100'000 : cfg.m_bound;
    double estimate = constants::series_P_direct(p, r, m, cfg.worker_count);
    Record rec;
    rec.add("command", "constants series");
    rec.add("method", "direct");
    rec.add("p", to_string(p));
    rec.add("r", std::to_string(r));
    rec.add("m", std::to_string(m));
    rec.add("estimate", d15(estimate));
    rec.add("certified", "false");
    writer.write(rec);
    return;
  }
  u32 k = cfg.k == 0 ? constants::default_series_truncation(p) : cfg.k;
  auto series = constants::series_P_grouped_detailed(p, r, k);
  Record rec = certified_record("constants series", series.value);
  rec.add("method", "grouped");
  rec.add("p", to_string(p));
  rec.add("r", std::to_string(r));
  rec.add("interval_contains_zero", series.value.contains_zero() ? "true" : "false");
  writer.write(rec);
  if (cfg.terms) {
    for (const auto& term : series.terms) {
      Record trec;
      trec.add("command", "constants series term");
      trec.add("k", std::to_string(term.k));
      trec.add("inner_sum", term.inner_sum.str());
      std::string support;
      for (u128 m : term.support) {
        if (!support.empty()) support += ' ';
        support += to_string(m);
      }
      trec.add("support", support);
      writer.write(trec);
    }
  }
}

void run_avg(const RunConfig& cfg, RecordWriter& writer, std::ostream& err) {
  auto ecfg = ensemble_config(cfg, err);
  bool csv_strict = cfg.output_format == records::Format::csv;
  if (cfg.subverb == "ladder") {
    ensembles::LadderParams params;
    params.mode = ensembles::mode_from_name(cfg.mode);
    switch (params.mode) {
      case ensembles::Mode::prime_powers:
        if (cfg.n == 0) throw InvalidArgument("ladder prime-powers: pass --n");
        params.n = cfg.n;
        break;
      case ensembles::Mode::extensions:
        if (cfg.n == 0) throw InvalidArgument("ladder extensions: pass --n");
        params.n = cfg.n;
        params.p = resolve_p(cfg);
        break;
      case ensembles::Mode::ranks:
        params.q = resolve_q(cfg);
        break;
    }
    if (cfg.xs.empty()) throw InvalidArgument("ladder: pass --xs x1,x2,...");
    for (const auto& rep : ensembles::convergence_ladder(params, cfg.xs, ecfg))
      writer.write(average_record(rep, csv_strict));
    return;
  }

  ensembles::AverageReport rep;
  if (cfg.subverb == "prime-powers") {
    if (cfg.n == 0) throw InvalidArgument("avg prime-powers: pass --n");
    rep = ensembles::average_over_prime_powers(cfg.n, cfg.x, ecfg);
  } else if (cfg.subverb == "extensions") {
    if (cfg.n == 0) throw InvalidArgument("avg extensions: pass --n");
    rep = ensembles::average_over_extensions(resolve_p(cfg), cfg.n, cfg.x, ecfg);
  } else {
    rep = ensembles::average_over_ranks(resolve_q(cfg), cfg.x, ecfg);
  }
  writer.write(average_record(rep, csv_strict));
}

distribution::ECDF build_ecdf(const RunConfig& cfg, double x,
                              const ensembles::EnsembleConfig& ecfg,
                              std::string& params_out) {
  auto mode = ensembles::mode_from_name(cfg.mode);
  switch (mode) {
    case ensembles::Mode::prime_powers:
      if (cfg.n == 0) throw InvalidArgument("ecdf prime-powers: pass --n");
      params_out = "n=" + std::to_string(cfg.n);
      return distribution::ecdf_prime_powers(cfg.n, x, ecfg);
    case ensembles::Mode::extensions: {
      if (cfg.n == 0) throw InvalidArgument("ecdf extensions: pass --n");
      u128 p = resolve_p(cfg);
      params_out = "p=" + to_string(p) + ";n=" + std::to_string(cfg.n);
      return distribution::ecdf_extensions(p, cfg.n, x, ecfg);
    }
    case ensembles::Mode::ranks: {
      auto q = resolve_q(cfg);
      params_out = "p=" + to_string(q.p) + ";r=" + std::to_string(q.r);
      return distribution::ecdf_ranks(q, x, ecfg);
    }
  }
  throw InvalidArgument("ecdf: unknown mode");
}

void run_dist(const RunConfig& cfg, RecordWriter& writer, std::ostream& err) {
  auto ecfg = ensemble_config(cfg, err);
  std::string params;
  if (cfg.subverb == "ecdf") {
    auto ecdf = build_ecdf(cfg, cfg.x, ecfg, params);
    err << "# " << ecdf.meta << "\n";
    u64 count = 0;
    for (u64 i = 0; i < ecdf.sample.size(); ++i) {
      ++count;
      bool last_of_run = i + 1 == ecdf.sample.size() ||
                         !(ecdf.sample[i + 1] == ecdf.sample[i]);
      if (!last_of_run) continue;
      Record rec;
      if (cfg.decimals) {
        rec.add("z", d15(ecdf.sample_d[i]));
        rec.add("F", d15(static_cast<double>(count) /
                         static_cast<double>(ecdf.size)));
      } else {
        rec.add("z", ecdf.sample[i].str());
        rec.add("F", to_string(static_cast<u128>(count)) + "/" +
                         to_string(static_cast<u128>(ecdf.size)));
      }
      writer.write(rec);
    }
    return;
  }
  // kolmogorov
  if (!(cfg.x1 > 0) || !(cfg.x2 > 0))
    throw InvalidArgument("dist kolmogorov: pass --x1 and --x2");
  auto a = build_ecdf(cfg, cfg.x1, ecfg, params);
  auto b = build_ecdf(cfg, cfg.x2, ecfg, params);
  double dist = distribution::kolmogorov_distance(a, b);
  Record rec;
  rec.add("mode", cfg.mode);
  rec.add("params", params);
  rec.add("x1", d15(cfg.x1));
  rec.add("x2", d15(cfg.x2));
  rec.add("kolmogorov_distance", d15(dist));
  writer.write(rec);
}

int run_oracle(const RunConfig& cfg, RecordWriter& writer, std::ostream& err) {
  if (cfg.subverb == "field") {
    u128 p = resolve_p(cfg);
    auto fs = singer::build_field_spec(static_cast<u32>(p),
                                       cfg.r == 0 ? 1 : cfg.r, cfg.field_cap);
    Record rec;
    rec.add("command", "oracle field");
    rec.add("p", std::to_string(fs.p));
    rec.add("r", std::to_string(fs.r));
    rec.add("q", std::to_string(fs.q));
    rec.add("modulus", fs.modulus_str());
    std::string coeffs;
    for (u32 c : fs.modulus) {
      if (!coeffs.empty()) coeffs += ' ';
      coeffs += std::to_string(c);
    }
    rec.add("coefficients", coeffs);
    writer.write(rec);
    return 0;
  }

  // verify
  singer::OracleConfig ocfg;
  ocfg.group_cap = cfg.group_cap;
  ocfg.poly_cap = cfg.poly_cap;
  ocfg.field_cap = cfg.field_cap;
  ocfg.workers = cfg.worker_count;

  std::vector<singer::GroupSpec> specs;
  if (!cfg.q.empty() || !cfg.p.empty()) {
    if (cfg.n == 0) throw InvalidArgument("oracle verify: pass --n with --q");
    specs.push_back(singer::make_group_spec(cfg.n, resolve_q(cfg)));
  } else {
    specs = singer::specs_under_cap(cfg.group_cap, cfg.field_cap);
  }

  u64 mismatches = 0;
  u64 done = 0;
  for (const auto& spec : specs) {
    u128 formula = singer::singer_count(spec);
    u64 oracle = singer::oracle_count_max_order_elements(spec, ocfg);
    bool match = formula == oracle;
    if (!match) ++mismatches;
    Record rec;
    rec.add("n", std::to_string(spec.n));
    rec.add("q", to_string(spec.q.q));
    rec.add("formula_count", to_string(formula));
    rec.add("oracle_count", std::to_string(oracle));
    rec.add("match", match ? "true" : "false");
    writer.write(rec);
    ++done;
    if (cfg.progress)
      err << "# oracle verify " << done << "/" << specs.size() << "\n";
  }
  if (mismatches != 0) {
    err << "oracle verify: " << mismatches << " mismatch(es)\n";
    return 1;
  }
  return 0;
}

void run_cache_stats(const RunConfig& cfg, RecordWriter& writer) {
  auto stats = arith::factor_cache().stats();
  Record rec;
  rec.add("command", "cache stats");
  rec.add("path", cfg.cache_path.empty() ? "(none)" : cfg.cache_path);
  rec.add("entries", std::to_string(stats.entries));
  rec.add("hits", std::to_string(stats.hits));
  rec.add("misses", std::to_string(stats.misses));
  writer.write(rec);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RecordWriter writer(out, cfg.output_format);
  if (cfg.verb == "density" || cfg.verb == "count" || cfg.verb == "gl-order" ||
      cfg.verb == "primitive-polys") {
    run_density_family(cfg, writer);
    return 0;
  }
  if (cfg.verb == "constants") {
    run_constants(cfg, writer);
    return 0;
  }
  if (cfg.verb == "avg") {
    run_avg(cfg, writer, err);
    return 0;
  }
  if (cfg.verb == "dist") {
    run_dist(cfg, writer, err);
    return 0;
  }
  if (cfg.verb == "oracle") return run_oracle(cfg, writer, err);
  if (cfg.verb == "cache") {
    run_cache_stats(cfg, writer);
    return 0;
  }
  if (cfg.verb == "accept") {
    acceptance::Options opts;
    opts.workers = cfg.worker_count > 1 ? cfg.worker_count : 2;
    opts.progress = &err;
    return acceptance::run_and_print(out, opts);
  }
  throw InvalidArgument("unknown command: " + cfg.verb);
}

RunConfig parse_args(const std::vector<std::string>& args, std::string& help_text) {
  RunConfig cfg;
  CLI::App app{"Singer-cycle density calculator for GL_n(q)"};
  app.require_subcommand(0, 1);

  std::string format = "plain";
  std::string xs_csv;
  app.add_option("--format", format, "output format: json-lines, csv, plain");
  app.add_option("--cache", cfg.cache_path,
                 "factorization cache file (or set GLQ_FACTOR_CACHE)");
  app.add_option("--workers", cfg.worker_count, "worker count (default 1)");
  app.add_flag("--seedless", cfg.seedless,
               "assert full determinism (always on; interface stability)");
  app.add_flag("--progress", cfg.progress, "print progress to stderr");

  auto add_group_opts = [&](CLI::App* cmd) {
    cmd->add_option("--n", cfg.n, "rank n");
    cmd->add_option("--q", cfg.q, "field size q (prime power)");
    cmd->add_option("--p", cfg.p, "characteristic p (prime)");
    cmd->add_option("--r", cfg.r, "extension degree r");
  };

  for (const char* name : {"density", "count", "gl-order", "primitive-polys"}) {
    auto* cmd = app.add_subcommand(name);
    add_group_opts(cmd);
    cmd->callback([&cfg, name] { cfg.verb = name; });
  }

  auto* constants_cmd = app.add_subcommand("constants");
  auto* artin = constants_cmd->add_subcommand("artin");
  artin->add_option("--n", cfg.n, "rank n (default 1)");
  artin->add_option("--prime-bound", cfg.prime_bound,
                    "product truncation (default 10^6)");
  artin->callback([&cfg] {
    cfg.verb = "constants";
    cfg.subverb = "artin";
  });
  auto* series = constants_cmd->add_subcommand("series");
  series->add_option("--p", cfg.p, "characteristic p");
  series->add_option("--r", cfg.r, "gcd parameter r (default 1)");
  series->add_option("--k", cfg.k, "grouped truncation K");
  series->add_option("--m", cfg.m_bound, "direct summation bound M");
  series->add_flag("--direct", cfg.direct, "direct m-sum instead of grouped");
  series->add_flag("--terms", cfg.terms, "also emit per-order inner sums");
  series->callback([&cfg] {
    cfg.verb = "constants";
    cfg.subverb = "series";
  });

  auto* avg = app.add_subcommand("avg");
  for (const char* name : {"prime-powers", "extensions", "ranks"}) {
    auto* cmd = avg->add_subcommand(name);
    add_group_opts(cmd);
    cmd->add_option("--x", cfg.x, "ensemble bound x");
    cmd->add_option("--prime-bound", cfg.prime_bound, "theory product truncation");
    cmd->add_option("--k", cfg.k, "theory series truncation");
    cmd->callback([&cfg, name] {
      cfg.verb = "avg";
      cfg.subverb = name;
    });
  }
  auto* ladder = avg->add_subcommand("ladder");
  add_group_opts(ladder);
  ladder->add_option("--mode", cfg.mode, "prime-powers | extensions | ranks");
  ladder->add_option("--xs", xs_csv, "comma-separated ascending x values");
  ladder->add_option("--prime-bound", cfg.prime_bound, "theory product truncation");
  ladder->add_option("--k", cfg.k, "theory series truncation");
  ladder->callback([&cfg] {
    cfg.verb = "avg";
    cfg.subverb = "ladder";
  });

  auto* dist = app.add_subcommand("dist");
  auto* ecdf = dist->add_subcommand("ecdf");
  add_group_opts(ecdf);
  ecdf->add_option("--mode", cfg.mode, "prime-powers | extensions | ranks");
  ecdf->add_option("--x", cfg.x, "ensemble bound x");
  ecdf->add_flag("--decimals", cfg.decimals, "decimal output (15 significant digits)");
  ecdf->callback([&cfg] {
    cfg.verb = "dist";
    cfg.subverb = "ecdf";
  });
  auto* kolmogorov = dist->add_subcommand("kolmogorov");
  add_group_opts(kolmogorov);
  kolmogorov->add_option("--mode", cfg.mode, "prime-powers | extensions | ranks");
  kolmogorov->add_option("--x1", cfg.x1, "first ensemble bound");
  kolmogorov->add_option("--x2", cfg.x2, "second ensemble bound");
  kolmogorov->callback([&cfg] {
    cfg.verb = "dist";
    cfg.subverb = "kolmogorov";
  });

  auto* oracle = app.add_subcommand("oracle");
  auto* verify = oracle->add_subcommand("verify");
  add_group_opts(verify);
  verify->add_option("--max-group-size", cfg.group_cap, "group enumeration cap");
  verify->add_option("--max-field", cfg.field_cap, "field size cap");
  verify->callback([&cfg] {
    cfg.verb = "oracle";
    cfg.subverb = "verify";
  });
  auto* field = oracle->add_subcommand("field");
  field->add_option("--p", cfg.p, "characteristic p")->required();
  field->add_option("--r", cfg.r, "degree r");
  field->add_option("--max-field", cfg.field_cap, "field size cap");
  field->callback([&cfg] {
    cfg.verb = "oracle";
    cfg.subverb = "field";
  });

  auto* cache = app.add_subcommand("cache");
  auto* stats = cache->add_subcommand("stats");
  stats->callback([&cfg] {
    cfg.verb = "cache";
    cfg.subverb = "stats";
  });

  auto* accept = app.add_subcommand("accept");
  accept->callback([&cfg] { cfg.verb = "accept"; });

  // Let global flags (--format, --workers, ...) appear after subcommands.
  auto enable_fallthrough = [](CLI::App* node, auto&& self) -> void {
    for (CLI::App* sub : node->get_subcommands([](const CLI::App*) { return true; })) {
      sub->fallthrough();
      self(sub, self);
    }
  };
  enable_fallthrough(&app, enable_fallthrough);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.verb = "help";
    help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(std::string("argument error: ") + e.what());
  }

  if (cfg.verb.empty()) {
    cfg.verb = "help";
    help_text = app.help();
    return cfg;
  }
  cfg.output_format = records::format_from_name(format);
  if (!xs_csv.empty()) {
    std::size_t pos = 0;
    while (pos < xs_csv.size()) {
      std::size_t comma = xs_csv.find(',', pos);
      if (comma == std::string::npos) comma = xs_csv.size();
      cfg.xs.push_back(std::stod(xs_csv.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  if (cfg.worker_count < 1) throw InvalidArgument("--workers must be >= 1");
  return cfg;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  std::string help_text;

  auto emit_error = [&](const std::string& message, int code) {
    records::RecordWriter ewriter(err, cfg.output_format);
    records::Record rec;
    rec.add("error", message);
    rec.add("exit_code", std::to_string(code));
    ewriter.write(rec);
  };

  try {
    cfg = parse_args(args, help_text);
  } catch (const Error& e) {
    int code = static_cast<int>(e.exit_code());
    emit_error(e.what(), code);
    return code;
  }
  if (cfg.verb == "help") {
    out << help_text;
    return 0;
  }

  if (cfg.cache_path.empty()) {
    if (const char* env = std::getenv(kCacheEnvVar)) cfg.cache_path = env;
  }
  if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
    arith::factor_cache().load(cfg.cache_path,
                               [&err](const std::string& w) { err << w << "\n"; });
  }

  int code = 0;
  try {
    code = run(cfg, out, err);
  } catch (const Error& e) {
    code = static_cast<int>(e.exit_code());
    emit_error(e.what(), code);
    return code;
  } catch (const std::exception& e) {
    emit_error(e.what(), 1);
    return 1;
  }

  if (!cfg.cache_path.empty()) {
    try {
      arith::factor_cache().save(cfg.cache_path);
    } catch (const Error& e) {
      err << e.what() << "\n";
    }
  }
  return code;
}

}  // namespace glq::cli
