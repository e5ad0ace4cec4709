// Copyright 2026 The ultragas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>

#include "ultragas/chains.hpp"
#include "ultragas/engine.hpp"
#include "ultragas/grand.hpp"
#include "ultragas/io.hpp"
#include "ultragas/recurrence.hpp"
#include "ultragas/sampler.hpp"
#include "ultragas/workers.hpp"

namespace ultragas::cli {

namespace {

// Raised by a subcommand to request exit code 2 after emitting its document.
struct VerifyFailed {};

struct Document {
  Json json;
  std::string text;
  std::string csv;
};

std::string require(const std::optional<std::string>& value, const std::string& flag) {
  if (!value) throw std::invalid_argument("missing required option " + flag);
  return *value;
}

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::exact;
  if (text == "symbolic") return Mode::symbolic;
  if (text == "float") return Mode::floating;
  throw std::invalid_argument("unknown mode '" + text + "' (expected exact, symbolic or float)");
}

std::string rational_text(const Rational& r) { return r.get_str(); }

// Exponent spec from --charges/--beta or --s-file, checked against --n.
ExponentSpec read_spec(const RunConfig& c) {
  if (c.charges && c.s_file) throw std::invalid_argument("--charges and --s-file are mutually exclusive");
  ExponentSpec spec = [&] {
    if (c.s_file) {
      if (c.beta) throw std::invalid_argument("--beta applies to --charges, not --s-file");
      return read_spec_file(*c.s_file);
    }
    if (!c.charges) throw std::invalid_argument("one of --charges or --s-file is required");
    const Rational beta = parse_rational(require(c.beta, "--beta"));
    return ExponentSpec::from_charges(parse_rational_list(*c.charges), beta);
  }();
  if (c.n != 0 && c.n != spec.order()) {
    throw std::invalid_argument("--n " + std::to_string(c.n) + " does not match the " +
                                std::to_string(spec.order()) + " particles of the exponent input");
  }
  return spec;
}

void check_precision(const RunConfig& c) {
  if (c.precision < 53) throw std::invalid_argument("--precision must be at least 53");
  if (c.precision != 53) throw std::invalid_argument("precision other than 53 bits is not supported");
}

Json scaled_json(const ScaledComplex& z) {
  const Complex v = z.value();
  const bool representable = std::isfinite(v.real()) && std::isfinite(v.imag()) && (z.is_zero() || v != Complex(0.0, 0.0));
  if (representable) {
    if (v.imag() == 0.0) return v.real();
    return Json::array({v.real(), v.imag()});
  }
  return z.real_to_string();
}

std::string scaled_text(const ScaledComplex& z) {
  const Json j = scaled_json(z);
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) return format_double(j[0].get<double>()) + (j[1].get<double>() < 0 ? "" : "+") +
                           format_double(j[1].get<double>()) + "i";
  return format_double(j.get<double>());
}

Document cmd_chains(const RunConfig& c) {
  if (c.n < 1) throw std::invalid_argument("--n must be at least 1");
  Document doc;
  const mpz_class count = count_reduced_chains(c.n);
  doc.json = Json{{"command", "chains"}, {"n", c.n}};
  if (count.fits_slong_p()) {
    doc.json["count"] = count.get_si();
  } else {
    doc.json["count"] = count.get_str();
  }
  if (c.count_only) {
    doc.text = count.get_str() + "\n";
    doc.csv = "n,count\n" + std::to_string(c.n) + "," + count.get_str() + "\n";
    return doc;
  }
  Json chains = Json::array();
  std::ostringstream text, csv;
  csv << "chain,members,degree\n";
  std::size_t index = 0;
  enumerate_reduced_chains(IndexSet::range(c.n), [&](const ReducedChain& chain) {
    chains.push_back(to_json(chain));
    const auto branches = chain.sorted_branches();
    for (std::size_t b = 0; b < branches.size(); ++b) {
      text << (b ? " " : "") << branches[b].members.to_string() << ":" << branches[b].degree;
      std::string members;
      for (int m : branches[b].members.members()) members += (members.empty() ? "" : ";") + std::to_string(m);
      csv << index << "," << members << "," << branches[b].degree << "\n";
    }
    if (branches.empty()) text << "{}";
    text << "\n";
    ++index;
  }, ChainLimits{c.max_order});
  doc.json["chains"] = std::move(chains);
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

Document cmd_eval(const RunConfig& c, std::ostream& err) {
  check_precision(c);
  const Mode mode = parse_mode(c.mode);
  const SpaceSpec space = SpaceSpec::parse(c.space);
  const ExponentSpec spec = read_spec(c);
  Field field = Field::symbolic();
  std::optional<Rational> q;
  if (mode != Mode::symbolic) {
    q = parse_rational(require(c.q, "--q"));
    if (!(*q > 0)) throw std::invalid_argument("q must be positive");
    field = mode == Mode::exact ? Field::exact(*q) : Field::floating(q->get_d());
  }
  EngineOptions options;
  options.warn = [&err](const std::string& message) { err << "warning: " << message << "\n"; };

  ScalarValue value;
  if (c.method == "chains") {
    value = evaluate(space, spec, field, options);
  } else if (c.method == "cells") {
    if (space.kind != SpaceSpec::Kind::projective) throw std::invalid_argument("--method cells requires --space proj");
    value = z_proj_cells(spec, field, options);
  } else if (c.method == "oracle") {
    if (space.kind != SpaceSpec::Kind::ball || space.v > 1) {
      throw std::invalid_argument("--method oracle requires --space R or P");
    }
    value = z_coset_oracle(IndexSet::range(spec.order()), spec, field, space, options);
  } else {
    throw std::invalid_argument("unknown method '" + c.method + "' (expected chains, cells or oracle)");
  }

  Document doc;
  doc.json = Json{{"command", "eval"}, {"space", space.name()}, {"n", spec.order()}};
  if (q) doc.json["q"] = rational_text(*q);
  if (c.beta) doc.json["beta"] = rational_text(parse_rational(*c.beta));
  doc.json["mode"] = c.mode;
  doc.json["method"] = c.method;
  doc.json["kind"] = to_string(value.kind());
  doc.json["value"] = to_json(value);
  doc.text = value.to_string() + "\n";
  doc.csv = "space,n,mode,kind,value\n" + space.name() + "," + std::to_string(spec.order()) + "," + c.mode + "," +
            to_string(value.kind()) + ",\"" + value.to_string() + "\"\n";
  return doc;
}

Document cmd_recurrence(const RunConfig& c) {
  check_precision(c);
  if (c.n_max < 0) throw std::invalid_argument("--n-max must be non-negative");
  const SpaceSpec space = SpaceSpec::parse(c.space);
  const double beta = parse_rational(require(c.beta, "--beta")).get_d();
  double q = 1.0;
  if (!c.limit_q1) q = parse_rational(require(c.q, "--q")).get_d();
  const RecurrenceRows rows = recurrence_rows(c.n_max, q, beta, space, c.limit_q1);

  Document doc;
  doc.json = Json{{"command", "recurrence"}, {"space", space.name()}, {"beta", beta}};
  if (!c.limit_q1) doc.json["q"] = q;
  doc.json["limit_q1"] = c.limit_q1;
  doc.json["t"] = rows.t;
  doc.json["working_bits"] = rows.working_bits;
  Json list = Json::array();
  std::ostringstream text, csv;
  csv << "n,F,Z\n";
  for (int n = 0; n <= c.n_max; ++n) {
    const Json f = scaled_json(rows.f[n]), z = scaled_json(rows.z[n]);
    list.push_back(Json{{"n", n}, {"F", f}, {"Z", z}});
    text << n << " " << scaled_text(rows.f[n]) << " " << scaled_text(rows.z[n]) << "\n";
    csv << n << "," << scaled_text(rows.f[n]) << "," << scaled_text(rows.z[n]) << "\n";
  }
  doc.json["rows"] = std::move(list);
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

Document cmd_verify(const RunConfig& c, bool& failed) {
  check_precision(c);
  const Mode mode = parse_mode(c.mode);
  if (mode == Mode::symbolic) throw std::invalid_argument("verify supports exact and float modes");
  const Rational q_value = parse_rational(require(c.q, "--q"));
  if (q_value.get_den() != 1 || !q_value.get_num().fits_slong_p()) {
    throw std::invalid_argument("verify requires an integer q");
  }
  const long q = q_value.get_num().get_si();
  const Rational beta = parse_rational(require(c.beta, "--beta"));
  if (c.n_max < 0) throw std::invalid_argument("--n-max must be non-negative");
  VerifyOptions options;
  options.extended = c.extended;

  std::vector<LawReport> reports;
  if (c.law == "all") {
    reports = verify_all(q, beta, c.n_max, mode, options);
  } else if (c.law == "q") {
    reports.push_back(verify_power_law_q(q, beta, c.n_max, mode, options));
  } else if (c.law == "q1") {
    reports.push_back(verify_power_law_q1(q, beta, c.n_max, mode, options));
  } else if (c.law == "rp") {
    reports.push_back(verify_RP_factorization(q, beta, c.n_max, mode, options));
  } else {
    throw std::invalid_argument("unknown law '" + c.law + "' (expected q, q1, rp or all)");
  }

  Document doc;
  bool all_pass = true;
  Json laws = Json::array();
  std::ostringstream text, csv;
  csv << "law,n,lhs,rhs,pass\n";
  for (const LawReport& report : reports) {
    Json rows = Json::array();
    for (const LawRow& row : report.rows) {
      rows.push_back(Json{{"n", row.n}, {"lhs", to_json(row.lhs)}, {"rhs", to_json(row.rhs)}, {"pass", row.pass}});
      text << report.law << " " << row.n << " " << row.lhs.to_string() << " " << row.rhs.to_string() << " "
           << (row.pass ? "ok" : "FAIL") << "\n";
      csv << report.law << "," << row.n << "," << row.lhs.to_string() << "," << row.rhs.to_string() << ","
          << (row.pass ? "true" : "false") << "\n";
    }
    all_pass &= report.passed();
    laws.push_back(Json{{"law", report.law}, {"extended", report.extended}, {"passed", report.passed()},
                        {"rows", std::move(rows)}});
  }
  text << (all_pass ? "all coefficients agree" : "verification failed") << "\n";
  doc.json = Json{{"command", "verify"}, {"q", q},         {"beta", rational_text(beta)}, {"mode", c.mode},
                  {"n_max", c.n_max},    {"passed", all_pass}, {"laws", std::move(laws)}};
  doc.text = text.str();
  doc.csv = csv.str();
  failed = !all_pass;
  return doc;
}

int worker_count(const RunConfig& c) {
  if (c.workers) {
    if (*c.workers <= 0) throw std::invalid_argument("--workers must be positive");
    return *c.workers;
  }
  return default_workers();
}

Document cmd_mc(const RunConfig& c) {
  const SpaceSpec space = SpaceSpec::parse(c.space);
  const ExponentSpec spec = read_spec(c);
  const Rational q_value = parse_rational(require(c.q, "--q"));
  if (q_value.get_den() != 1 || q_value < 2 || q_value > 65536) {
    throw std::invalid_argument("sampling requires an integer q >= 2");
  }
  McOptions options;
  options.samples = c.samples;
  options.depth = c.depth;
  options.seed = c.seed;
  options.workers = worker_count(c);
  const int q = static_cast<int>(q_value.get_num().get_si());
  const McEstimate est = mc_estimate(space, spec, q, options);

  Document doc;
  doc.json = Json{{"command", "mc"},        {"space", space.name()},   {"n", spec.order()},
                  {"q", q},                 {"samples", est.samples},  {"depth", c.depth},
                  {"seed", c.seed},         {"mean", est.mean},        {"std_error", est.std_error},
                  {"collisions", est.collisions}};
  doc.json["enclosure"] = est.enclosure ? Json::array({est.enclosure->first, est.enclosure->second}) : Json(nullptr);
  doc.json["biased"] = est.biased;
  std::ostringstream text;
  text << "mean " << format_double(est.mean) << "\nstd_error " << format_double(est.std_error) << "\nsamples "
       << est.samples << "\ncollisions " << est.collisions << "\n";
  if (est.enclosure) {
    text << "enclosure " << format_double(est.enclosure->first) << " " << format_double(est.enclosure->second) << "\n";
  }
  if (est.biased) text << "warning: negative exponents; estimate may be biased\n";
  doc.text = text.str();
  doc.csv = "mean,std_error,samples,collisions,lower,upper\n" + format_double(est.mean) + "," +
            format_double(est.std_error) + "," + std::to_string(est.samples) + "," + std::to_string(est.collisions) +
            "," + (est.enclosure ? format_double(est.enclosure->first) : "") + "," +
            (est.enclosure ? format_double(est.enclosure->second) : "") + "\n";
  return doc;
}

Document cmd_thermo(const RunConfig& c) {
  check_precision(c);
  const SpaceSpec space = SpaceSpec::parse(c.space);
  if (c.s_file) throw std::invalid_argument("thermo takes --charges and --beta");
  const std::vector<Rational> charges = parse_rational_list(require(c.charges, "--charges"));
  if (c.n != 0 && c.n != static_cast<int>(charges.size())) {
    throw std::invalid_argument("--n does not match the number of charges");
  }
  const double q = parse_rational(require(c.q, "--q")).get_d();
  const double beta0 = parse_rational(require(c.beta, "--beta")).get_d();
  const double beta1 = c.beta_max ? parse_rational(*c.beta_max).get_d() : beta0;
  if (c.steps < 1) throw std::invalid_argument("--steps must be at least 1");
  if (c.steps == 1 && c.beta_max) throw std::invalid_argument("--beta-max needs --steps >= 2");

  Document doc;
  Json rows = Json::array();
  std::ostringstream text, csv;
  csv << "beta,free_energy,mean_energy,fluctuation\n";
  for (int i = 0; i < c.steps; ++i) {
    const double beta = c.steps == 1 ? beta0 : beta0 + (beta1 - beta0) * i / (c.steps - 1);
    const Observables obs = observables(space, charges, beta, q);
    rows.push_back(Json{{"beta", beta},
                        {"free_energy", obs.free_energy},
                        {"mean_energy", obs.mean_energy},
                        {"fluctuation", obs.fluctuation}});
    const std::string line = format_double(beta) + "," + format_double(obs.free_energy) + "," +
                             format_double(obs.mean_energy) + "," + format_double(obs.fluctuation);
    csv << line << "\n";
    text << "beta " << format_double(beta) << " free_energy " << format_double(obs.free_energy) << " mean_energy "
         << format_double(obs.mean_energy) << " fluctuation " << format_double(obs.fluctuation) << "\n";
  }
  doc.json = Json{{"command", "thermo"}, {"space", space.name()}, {"n", static_cast<int>(charges.size())},
                  {"q", q},              {"rows", std::move(rows)}};
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

void emit(const RunConfig& c, const Document& doc, std::ostream& out) {
  std::string body;
  switch (c.format) {
    case Format::json: body = doc.json.dump(2) + "\n"; break;
    case Format::csv: body = doc.csv; break;
    case Format::text: body = doc.text; break;
  }
  if (c.out) {
    std::ofstream file(*c.out);
    if (!file) throw std::invalid_argument("cannot write " + *c.out);
    file << body;
  } else {
    out << body;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    bool failed = false;
    Document doc;
    if (config.subcommand == "chains") {
      doc = cmd_chains(config);
    } else if (config.subcommand == "eval") {
      doc = cmd_eval(config, err);
    } else if (config.subcommand == "recurrence") {
      doc = cmd_recurrence(config);
    } else if (config.subcommand == "verify") {
      doc = cmd_verify(config, failed);
    } else if (config.subcommand == "mc") {
      doc = cmd_mc(config);
    } else if (config.subcommand == "thermo") {
      doc = cmd_thermo(config);
    } else {
      throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
    }
    emit(config, doc, out);
    return failed ? kExitVerifyFailed : kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition functions of nonarchimedean log-Coulomb gases"};
  app.name("ultragas");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  bool json = false, csv = false;
  std::string out_path;
  int workers = 0;
  app.add_flag("--json", json, "Emit a JSON document");
  app.add_flag("--csv", csv, "Emit CSV");
  app.add_option("--out", out_path, "Write the document to a file");
  app.add_option("--precision", c.precision, "Float precision in bits (53)");
  app.add_option("--workers", workers, "Worker threads (default: ULTRAGAS_WORKERS or all cores)");

  auto spec_options = [&c](CLI::App* sub) {
    sub->add_option("--charges", c.charges, "Comma-separated charges");
    sub->add_option("--beta", c.beta, "Inverse temperature");
    sub->add_option("--s-file", c.s_file, "JSON exponent file");
  };

  auto* chains = app.add_subcommand("chains", "Enumerate or count reduced splitting chains");
  chains->add_option("--n", c.n, "Order")->required();
  chains->add_flag("--count-only", c.count_only, "Print the count only");
  chains->add_option("--max-order", c.max_order, "Enumeration cap");

  auto* eval = app.add_subcommand("eval", "Evaluate a partition function");
  eval->add_option("--space", c.space, "R, P, ball:v or proj");
  eval->add_option("--n", c.n, "Number of particles");
  spec_options(eval);
  eval->add_option("--q", c.q, "Residue field size");
  eval->add_option("--mode", c.mode, "exact, symbolic or float");
  eval->add_option("--method", c.method, "chains, cells (proj) or oracle (R, P)");

  auto* recurrence = app.add_subcommand("recurrence", "Tabulate the one-component recurrence");
  recurrence->add_option("--n-max", c.n_max, "Largest N")->required();
  recurrence->add_option("--q", c.q, "Residue field size (real > 0)");
  recurrence->add_option("--beta", c.beta, "Inverse temperature")->required();
  recurrence->add_option("--space", c.space, "R or proj");
  recurrence->add_flag("--limit-q1", c.limit_q1, "Tabulate the q -> 1 limits");

  auto* verify = app.add_subcommand("verify", "Check the power laws coefficientwise");
  verify->add_option("--law", c.law, "q, q1, rp or all");
  verify->add_option("--q", c.q, "Integer q >= 2")->required();
  verify->add_option("--beta", c.beta, "Inverse temperature")->required();
  verify->add_option("--n-max", c.n_max, "Largest N")->required();
  verify->add_option("--mode", c.mode, "exact or float");
  verify->add_flag("--extended", c.extended, "Allow beta <= 0");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate");
  mc->add_option("--space", c.space, "R, P or proj");
  mc->add_option("--n", c.n, "Number of particles");
  spec_options(mc);
  mc->add_option("--q", c.q, "Integer q >= 2")->required();
  mc->add_option("--samples", c.samples, "Sample count");
  mc->add_option("--depth", c.depth, "Digit depth");
  mc->add_option("--seed", c.seed, "RNG seed");

  auto* thermo = app.add_subcommand("thermo", "Free energy, mean energy and fluctuation");
  thermo->add_option("--space", c.space, "R, P, ball:v or proj");
  thermo->add_option("--n", c.n, "Number of particles");
  spec_options(thermo);
  thermo->add_option("--q", c.q, "Residue field size (real > 0)")->required();
  thermo->add_option("--beta-max", c.beta_max, "End of a beta sweep");
  thermo->add_option("--steps", c.steps, "Number of sweep points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  for (auto* sub : app.get_subcommands()) {
    c.subcommand = sub->get_name();
    if (sub->get_option("--help")->count() > 0) {
      out << sub->help();
      return kExitOk;
    }
  }
  if (json && csv) {
    err << "error: --json and --csv are mutually exclusive\n";
    return kExitDomain;
  }
  c.format = json ? Format::json : csv ? Format::csv : Format::text;
  if (!out_path.empty()) c.out = out_path;
  if (app.get_option("--workers")->count() > 0) c.workers = workers;
  return run(c, out, err);
}

}  // namespace ultragas::cli
