#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coset/game.hpp"
#include "coset/gf2.hpp"
#include "coset/io.hpp"
#include "coset/perms.hpp"
#include "coset/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

enum class Command { none, count, perms, bounds, eval, verify };

struct RunConfig {
  Command command = Command::none;
  int n = 0;
  int k = 0;
  std::optional<int> m;
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t cap = coset::gf2::kDefaultGrassmannianCap;
  std::string format = "text";
  std::string output;  // empty = stdout
  coset::Tolerances tol;

  // per-command extras
  int n_max = 0;
  std::optional<int> bounds_k;
  std::optional<double> bounds_rate;
  bool verify_family_mode = false;
  std::string input;
  std::string strategy_file;
  std::string mode = "exact";
  std::uint64_t shots = 100000;
  std::string level = "fast";
  std::string dump_choi;
};

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw coset::ValidationError("cannot write output file: " + cfg.output);
  out << text;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int run_count(const RunConfig& cfg) {
  using coset::gf2::BigInt;
  const BigInt total = coset::gf2::gaussian_binomial(cfg.n, cfg.k);
  BigInt sum = 0;
  std::vector<std::pair<int, BigInt>> rows;
  for (int m = 0; m <= cfg.k; ++m) {
    rows.emplace_back(m, coset::gf2::intersection_count(cfg.n, cfg.k, m));
    sum += rows.back().second;
  }
  const bool sum_ok = sum == total;

  std::string text;
  if (cfg.format == "json") {
    coset::io::Json j;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["grassmannian"] = total.str();
    coset::io::Json jrows = coset::io::Json::array();
    for (const auto& [m, f] : rows) {
      coset::io::Json row;
      row["m"] = m;
      row["count"] = f.str();
      jrows.push_back(std::move(row));
    }
    j["intersection_counts"] = std::move(jrows);
    j["sum_matches"] = sum_ok;
    text = j.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    text = "m,count\n";
    for (const auto& [m, f] : rows) text += std::to_string(m) + "," + f.str() + "\n";
  } else {
    text = "|Gr_2(" + std::to_string(cfg.n) + "," + std::to_string(cfg.k) + ")| = " +
           total.str() + "\n";
    for (const auto& [m, f] : rows) {
      text += "  m = " + std::to_string(m) + ": " + f.str() + "\n";
    }
    text += std::string("sum check: ") + (sum_ok ? "ok" : "MISMATCH") + "\n";
  }
  write_output(cfg, text);
  return sum_ok ? kExitOk : kExitVerifyFailed;
}

int run_perms(const RunConfig& cfg) {
  if (cfg.verify_family_mode) {
    const std::string file = cfg.input.empty() ? cfg.output : cfg.input;
    if (file.empty()) {
      throw coset::ValidationError("perms --verify requires --input <family.json>");
    }
    const coset::perms::PermutationFamily fam =
        coset::io::family_from_json(coset::io::load_json_file(file));
    const coset::perms::VerifyReport rep = coset::perms::verify_family(fam, cfg.cap);
    coset::io::Json j;
    j["n"] = fam.n;
    j["k"] = fam.k;
    j["size"] = fam.size();
    j["passed"] = rep.passed;
    j["detail"] = rep.detail;
    write_output(cfg, j.dump(2) + "\n");
    return rep.passed ? kExitOk : kExitVerifyFailed;
  }

  coset::perms::PermutationFamily fam;
  if (cfg.m.has_value()) {
    fam = coset::perms::orthogonal_family(cfg.n, cfg.k, *cfg.m, cfg.cap, cfg.threads);
  } else {
    fam = coset::perms::full_family(cfg.n, cfg.k, cfg.cap, cfg.threads);
  }
  const coset::perms::VerifyReport rep = coset::perms::verify_family(fam, cfg.cap);
  if (!rep.passed) {
    std::cerr << "constructed family failed self-verification: " << rep.detail << "\n";
    return kExitVerifyFailed;
  }
  write_output(cfg, coset::io::family_to_json(fam).dump(2) + "\n");
  return kExitOk;
}

int run_bounds(const RunConfig& cfg) {
  const int n_lo = cfg.n;
  const int n_hi = cfg.n_max > 0 ? cfg.n_max : cfg.n;
  if (n_lo < 1 || n_hi < n_lo) throw coset::ValidationError("bounds: bad n range");

  std::string text;
  const bool json = cfg.format == "json";
  coset::io::Json jrows = coset::io::Json::array();
  if (!json) {
    text =
        "n,k,grassmannian,winning_bound,unentangled_value,envelope,winning_bound_nth_root,"
        "unentangled_value_nth_root\n";
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<int> ks;
    if (cfg.bounds_k.has_value()) {
      if (*cfg.bounds_k < 0 || *cfg.bounds_k > n) continue;
      ks.push_back(*cfg.bounds_k);
    } else if (cfg.bounds_rate.has_value()) {
      ks.push_back(static_cast<int>(*cfg.bounds_rate * n));
    } else {
      for (int k = 0; k <= n; ++k) ks.push_back(k);
    }
    for (int k : ks) {
      const double bound = coset::game::winning_bound(n, k);
      const double unent = coset::game::unentangled_value(n, k);
      const double envelope =
          coset::game::winning_rate_envelope(static_cast<double>(k) / static_cast<double>(n));
      const double bound_root = std::pow(bound, 1.0 / n);
      const double unent_root = std::pow(unent, 1.0 / n);
      const std::string count = coset::gf2::gaussian_binomial(n, k).str();
      if (json) {
        coset::io::Json row;
        row["n"] = n;
        row["k"] = k;
        row["grassmannian"] = count;
        row["winning_bound"] = bound;
        row["unentangled_value"] = unent;
        row["envelope"] = envelope;
        row["winning_bound_nth_root"] = bound_root;
        row["unentangled_value_nth_root"] = unent_root;
        jrows.push_back(std::move(row));
      } else {
        text += std::to_string(n) + "," + std::to_string(k) + "," + count + "," +
                format_double(bound) + "," + format_double(unent) + "," +
                format_double(envelope) + "," + format_double(bound_root) + "," +
                format_double(unent_root) + "\n";
      }
    }
  }
  write_output(cfg, json ? jrows.dump(2) + "\n" : text);
  return kExitOk;
}

int run_eval(const RunConfig& cfg) {
  const coset::game::Strategy s =
      coset::io::strategy_from_json(coset::io::load_json_file(cfg.strategy_file));
  coset::io::Json report;
  report["mode"] = cfg.mode;
  report["n"] = s.n;
  report["k"] = s.k;
  const double bound = coset::game::winning_bound(s.n, s.k);
  double value = 0;
  bool passed = true;
  if (cfg.mode == "exact") {
    value = coset::game::p_win(s, cfg.threads);
  } else if (cfg.mode == "extended") {
    value = coset::game::p_win_extended(s);
  } else if (cfg.mode == "mc") {
    if (cfg.shots < 1) throw coset::ValidationError("mc mode requires --shots >= 1");
    const coset::game::McEstimate est = coset::game::p_win_mc(s, cfg.shots, cfg.seed);
    const double exact = coset::game::p_win(s, cfg.threads);
    value = est.value;
    report["std_error"] = est.std_error;
    report["shots"] = est.shots;
    report["exact_value"] = std::clamp(exact, 0.0, 1.0);
    report["within_4_std_errors"] = std::abs(est.value - exact) <= 4.0 * est.std_error;
  } else {
    throw coset::ValidationError("unknown eval mode: " + cfg.mode);
  }
  passed = value <= bound + cfg.tol.spectral;
  report["value"] = std::clamp(value, 0.0, 1.0);
  report["bound"] = bound;
  report["slack"] = bound - value;
  report["passed"] = passed;
  report["seed"] = cfg.seed;
  coset::io::Json jtol;
  jtol["spectral"] = cfg.tol.spectral;
  jtol["amplitude"] = cfg.tol.amplitude;
  jtol["construction"] = cfg.tol.construction;
  report["tolerances"] = std::move(jtol);
  if (!cfg.dump_choi.empty()) {
    coset::io::save_json_file(cfg.dump_choi,
                              coset::io::operator_dump(coset::game::choi_state(s.channel).mat()));
  }
  write_output(cfg, report.dump(2) + "\n");
  return kExitOk;
}

int run_verify(const RunConfig& cfg) {
  const coset::verify::Level level =
      cfg.level == "full" ? coset::verify::Level::full : coset::verify::Level::fast;
  const coset::verify::Report rep = coset::verify::run_suite(level, cfg.threads, cfg.tol);
  write_output(cfg, coset::verify::report_to_json(rep).dump(2) + "\n");
  return rep.passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"coset: exact toolkit for the (n,k) coset monogamy game"};
  app.require_subcommand(0, 1);

  if (const char* env_cap = std::getenv("COSET_CAP")) {
    cfg.cap = std::strtoull(env_cap, nullptr, 10);
    if (cfg.cap < 1) cfg.cap = 1;
  }

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--threads", cfg.threads, "worker thread count")->check(CLI::PositiveNumber);
    sub->add_option("--cap", cfg.cap, "Grassmannian size cap")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--tolerance-spectral", cfg.tol.spectral, "spectral tolerance");
    sub->add_option("--tolerance-amplitude", cfg.tol.amplitude, "amplitude tolerance");
  };

  CLI::App* count = app.add_subcommand("count", "Grassmannian and intersection counts");
  count->add_option("--n", cfg.n, "ambient dimension")->required();
  count->add_option("--k", cfg.k, "subspace dimension")->required();
  add_common(count);

  CLI::App* perms = app.add_subcommand("perms", "mutually orthogonal permutation families");
  perms->add_option("--n", cfg.n, "ambient dimension");
  perms->add_option("--k", cfg.k, "subspace dimension");
  int m_value = -1;
  perms->add_option("--m", m_value, "single intersection dimension (default: full family)");
  perms->add_flag("--verify", cfg.verify_family_mode, "verify a serialized family");
  perms->add_option("--input", cfg.input, "family file to verify");
  add_common(perms);

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form bound tables");
  bounds->add_option("--n", cfg.n, "smallest n")->required();
  bounds->add_option("--n-max", cfg.n_max, "largest n (default: --n)");
  int bounds_k = -1;
  double bounds_rate = -1;
  bounds->add_option("--k", bounds_k, "fixed k (default: all k)");
  bounds->add_option("--rate", bounds_rate, "k = floor(rate*n)");
  add_common(bounds);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a strategy file");
  eval->add_option("--strategy", cfg.strategy_file, "strategy JSON file")->required();
  eval->add_option("--mode", cfg.mode, "exact, extended or mc")
      ->check(CLI::IsMember({"exact", "extended", "mc"}));
  eval->add_option("--shots", cfg.shots, "Monte Carlo shots");
  eval->add_option("--dump", cfg.dump_choi, "write the channel Choi matrix dump (debug)");
  add_common(eval);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--level", cfg.level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (count->parsed()) cfg.command = Command::count;
  if (perms->parsed()) cfg.command = Command::perms;
  if (bounds->parsed()) cfg.command = Command::bounds;
  if (eval->parsed()) cfg.command = Command::eval;
  if (verify->parsed()) cfg.command = Command::verify;
  if (cfg.command == Command::none) {
    std::cerr << app.help() << "\n";
    return kExitUsage;
  }
  if (m_value >= 0) cfg.m = m_value;
  if (bounds_k >= 0) cfg.bounds_k = bounds_k;
  if (bounds_rate >= 0) cfg.bounds_rate = bounds_rate;
  if (cfg.format == "text" && (cfg.command == Command::bounds)) cfg.format = "csv";

  try {
    switch (cfg.command) {
      case Command::count:
        return run_count(cfg);
      case Command::perms:
        return run_perms(cfg);
      case Command::bounds:
        return run_bounds(cfg);
      case Command::eval:
        return run_eval(cfg);
      case Command::verify:
        return run_verify(cfg);
      case Command::none:
        break;
    }
  } catch (const coset::CapExceeded& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const coset::ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const coset::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
