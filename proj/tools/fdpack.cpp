#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "fdp/bounds/bounds.hpp"
#include "fdp/magic/certificate.hpp"
#include "fdp/magic/conditions.hpp"
#include "fdp/magic/evaluate.hpp"
#include "fdp/packing1d/packing1d.hpp"
#include "fdp/support/error.hpp"

using namespace fdp;
using exactnum::Rational;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::usage:
    case ErrorKind::domain: return 2;
    case ErrorKind::resource: return 3;
    default: return 1;
  }
}

magic::VerifyOptions make_verify_options(const std::string& tail_mode, bool strict_tails,
                                         const std::string& ladder, bool timing) {
  magic::VerifyOptions opts;
  opts.record_runtime = timing;
  if (strict_tails || tail_mode == "strict" || tail_mode == "lemma")
    opts.tail_mode = magic::TailMode::lemma_majorant;
  else if (tail_mode == "literal" || tail_mode == "constant")
    opts.tail_mode = magic::TailMode::constant_term;
  else if (!tail_mode.empty())
    raise(ErrorKind::usage, "unknown tail mode: " + tail_mode);
  if (!ladder.empty()) {
    exactnum::PrecisionLadder lad;
    if (sscanf(ladder.c_str(), "%d,%d,%d", &lad.pi_digits, &lad.gamma_digits,
               &lad.split_exponent) != 3)
      raise(ErrorKind::usage, "ladder format: pi_digits,gamma_digits,split_exponent");
    opts.ladder = lad;
  }
  return opts;
}

magic::CVectors pipeline_vectors(const magic::MagicParams& p) {
  auto phib = magic::phi_basis(p);
  auto psib = magic::psi_basis(p);
  return magic::solve_c_vectors(phib, psib, p);
}

int cmd_params(long d) {
  auto p = magic::compute_params(d);
  std::cout << "d = " << p.d << "\n"
            << "a = " << p.a << "  (minimal norm squared)\n"
            << "l = " << p.l << "  (last prescribed norm squared)\n"
            << "k = " << p.k << "  (weight)\n"
            << "b = " << p.b << "  (basis dimension)\n"
            << "eps = " << p.eps << "\n"
            << "c = " << p.c.get_str() << "  (spectral threshold)\n";
  std::cout << "K = {";
  for (long m = p.a; m <= p.l; m += 2)
    std::cout << (m > p.a ? ", " : "") << "sqrt(" << m << "/" << p.a << ")";
  std::cout << "}\n";
  return 0;
}

int cmd_verify_one(long d, const magic::VerifyOptions& opts, const std::string& out_path) {
  auto cert = magic::verify_magic(d, opts);
  std::string js = cert.to_json();
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    f << js;
  } else {
    std::cout << js;
  }
  std::cerr << "d=" << d << ": certificate valid (N=" << cert.n_trunc << ", ladder "
            << cert.ladder.str() << ")\n";
  return 0;
}

int cmd_verify_all(long dmax, const magic::VerifyOptions& opts, unsigned jobs) {
  std::vector<long> dims;
  for (long d = 8; d <= dmax; d += 8)
    if (d % 24 != 16) dims.push_back(d);
  std::atomic<size_t> next{0};
  std::atomic<bool> all_ok{true};
  std::mutex out_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= dims.size()) return;
      try {
        auto cert = magic::verify_magic(dims[i], opts);
        std::lock_guard<std::mutex> lk(out_mutex);
        std::cout << "d=" << dims[i] << ": ok (N=" << cert.n_trunc << ", ladder "
                  << cert.ladder.str() << ")\n";
      } catch (const Error& e) {
        all_ok = false;
        std::lock_guard<std::mutex> lk(out_mutex);
        std::cout << "d=" << dims[i] << ": FAILED: " << e.what() << "\n";
      }
    }
  };
  unsigned n = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return all_ok ? 0 : 1;
}

int cmd_cvectors(long d) {
  auto p = magic::compute_params(d);
  auto vec = pipeline_vectors(p);
  std::cout << "C_phi = [";
  for (size_t i = 0; i < vec.c_phi.size(); ++i)
    std::cout << (i ? ", " : "") << vec.c_phi[i].get_str();
  std::cout << "]\nC_psi = [";
  for (size_t i = 0; i < vec.c_psi.size(); ++i)
    std::cout << (i ? ", " : "") << vec.c_psi[i].get_str();
  std::cout << "]\n";
  return 0;
}

int cmd_csign48() {
  auto p = magic::compute_params(48);
  auto vec = pipeline_vectors(p);
  long n = magic::choose_n(p, vec);
  auto series = magic::MagicSeries::build(p, vec, n);
  exactnum::PrecisionLadder lad;
  bool ok = false;
  for (;;) {
    ok = magic::check_sign_48(series, n, lad);
    if (ok || lad.is_max()) break;
    lad = lad.next();
  }
  std::cout << "sign analysis (d=48): " << (ok ? "certified" : "FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_plot(long d, const std::string& side_name, const std::string& range,
             const std::string& step_text, const std::string& out_path) {
  auto p = magic::compute_params(d);
  auto vec = pipeline_vectors(p);
  magic::Evaluator ev(p, vec);
  magic::Side side = magic::Side::h_hat;
  if (side_name == "h") side = magic::Side::h;
  else if (side_name != "hhat" && side_name != "h_hat")
    raise(ErrorKind::usage, "side must be h or hhat");

  Rational lo(0), hi(10);
  if (!range.empty()) {
    auto colon = range.find(':');
    if (colon == std::string::npos) raise(ErrorKind::usage, "range format: lo:hi");
    lo = exactnum::parse_rational(range.substr(0, colon));
    hi = exactnum::parse_rational(range.substr(colon + 1));
  }
  Rational step = step_text.empty() ? Rational(1, 100) : exactnum::parse_rational(step_text);
  if (!(step > 0 && hi > lo)) raise(ErrorKind::usage, "empty plot range");

  // normalization to value 1 at s = 0, second column H(sqrt s) e^(pi s)
  support::MpFloat norm = ev.value(side, Rational(0));
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!out_path.empty()) {
    f.open(out_path, std::ios::binary);
    os = &f;
  }
  *os << "s\t" << (side == magic::Side::h ? "H" : "Hhat") << "_scaled\n";
  // half-step offset keeps the grid away from the even-integer poles of the
  // termwise evaluator
  for (Rational s = lo + step / 2; s < hi; s += step) {
    support::MpFloat v = ev.value(side, s);
    support::MpFloat scaled =
        v * support::MpFloat::exp(support::MpFloat::pi() * support::MpFloat(s)) / norm;
    *os << exactnum::to_decimal_string(s, 6) << "\t" << scaled.str(12) << "\n";
  }
  return 0;
}

int cmd_density(long d) {
  auto v = bounds::extremal_density(d);
  std::cout << "extremal density for d=" << d << ": " << v.coeff.get_str() << " * pi^"
            << v.pi_power << " = " << v.decimal.str(20) << "\n";
  return 0;
}

int cmd_poisson(long d, const std::string& shells_path, const std::string& dual_path) {
  std::ifstream f(shells_path);
  if (!f) raise(ErrorKind::usage, "cannot open shells file: " + shells_path);
  std::stringstream buf;
  buf << f.rdbuf();
  auto shells = bounds::LatticeShellData::from_json(buf.str());
  bounds::LatticeShellData dual = shells;
  if (!dual_path.empty()) {
    std::ifstream g(dual_path);
    if (!g) raise(ErrorKind::usage, "cannot open dual shells file: " + dual_path);
    std::stringstream buf2;
    buf2 << g.rdbuf();
    dual = bounds::LatticeShellData::from_json(buf2.str());
  }
  auto p = magic::compute_params(d);
  auto vec = pipeline_vectors(p);
  magic::Evaluator ev(p, vec);
  auto res = bounds::poisson_residual(shells, dual, ev);
  auto h0 = ev.value(magic::Side::h, Rational(0));
  std::cout << "poisson residual: " << res.str(12) << "  (H(0) = " << h0.str(12) << ")\n";
  bool ok = (res / h0).to_double() < 1e-8;
  std::cout << (ok ? "consistent" : "INCONSISTENT") << "\n";
  return ok ? 0 : 1;
}

int cmd_pack1d(const std::string& klist) {
  auto k = pack1d::DistanceSet::parse(klist);
  auto g = pack1d::build_domino_graph(k);
  auto best = pack1d::max_density_cycle(g);
  std::cout << "period: " << best.period.str() << "\n"
            << "density: " << best.density.get_str() << " = "
            << exactnum::to_decimal_string(best.density, 8) << "\n";
  return 0;
}

int cmd_reduce(const std::string& desc_path) {
  std::ifstream f(desc_path);
  if (!f) raise(ErrorKind::usage, "cannot open description file: " + desc_path);
  std::stringstream buf;
  buf << f.rdbuf();
  auto desc = pack1d::AccumulationDescription::from_json(buf.str());
  auto red = pack1d::reduce_to_finite(desc);
  std::cout << "cutoff C = " << red.cutoff << "\n";
  std::cout << "K~ = ";
  for (size_t i = 0; i < red.k.values.size(); ++i)
    std::cout << (i ? "," : "") << red.k.values[i].get_str();
  std::cout << "\n";
  return 0;
}

int cmd_fejer(const std::string& lambda_text) {
  Rational lambda = exactnum::parse_rational(lambda_text);
  auto [n, ratio] = pack1d::fejer_sharpness(lambda);
  std::cout << "N = " << n << "\n"
            << "ratio = " << ratio.get_str() << " = " << exactnum::to_decimal_string(ratio, 8)
            << "\n";
  return 0;
}

int cmd_table(long dmax) {
  std::cout << "d\testimate\ttable\tdiff\n";
  bool all_ok = true;
  for (long d = 8; d <= dmax; d += 8) {
    if (d % 24 == 16) continue;
    Rational table_c = magic::compute_params(d).c;
    Rational est = magic::estimate_last_sign_change(d);
    Rational diff = abs(est - table_c);
    if (diff > Rational(2, 1000)) all_ok = false;
    std::cout << d << "\t" << exactnum::to_decimal_string(est, 4) << "\t"
              << exactnum::to_decimal_string(table_c, 4) << "\t"
              << exactnum::to_decimal_string(diff, 4) << "\n";
  }
  return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for packing bounds with prescribed distance sets"};
  app.require_subcommand(1);

  long d = 0, dmax = 0;
  bool all = false, strict_tails = false, timing = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string tail_mode, ladder, out_path, side = "hhat", range = "0:10", step, klist,
              shells_path, dual_path, desc_path, lambda_text;

  auto* c_params = app.add_subcommand("params", "print the per-dimension parameters");
  c_params->add_option("-d", d, "dimension (multiple of 8)")->required();

  auto* c_verify = app.add_subcommand("verify", "run the full certification pipeline");
  c_verify->add_option("-d", d, "dimension");
  c_verify->add_flag("--all", all, "verify every admissible dimension up to --dmax");
  c_verify->add_option("--dmax", dmax, "upper dimension for --all");
  c_verify->add_flag("--strict-tails", strict_tails,
                     "use the coefficient-majorant truncation bound (default)");
  c_verify->add_option("--tail-mode", tail_mode, "strict|literal truncation-bound mode");
  c_verify->add_option("--ladder", ladder, "starting rung: pi_digits,gamma_digits,split_exponent");
  c_verify->add_flag("--timing", timing, "record wall time in the certificate");
  c_verify->add_option("-o,--output", out_path, "certificate file (JSON)");
  c_verify->add_option("-j,--jobs", jobs, "worker threads for --all");

  auto* c_cvec = app.add_subcommand("cvectors", "print the solved integer vectors");
  c_cvec->add_option("-d", d, "dimension")->required();

  app.add_subcommand("csign48", "run the d=48 sign analysis");

  auto* c_plot = app.add_subcommand("plot", "emit s, H(sqrt s) e^(pi s) TSV data");
  c_plot->add_option("-d", d, "dimension")->required();
  c_plot->add_option("--side", side, "h or hhat");
  c_plot->add_option("--range", range, "lo:hi (squared radius)");
  c_plot->add_option("--step", step, "grid step (rational)");
  c_plot->add_option("-o,--output", out_path, "output TSV path");

  auto* c_density = app.add_subcommand("density", "print the extremal packing density");
  c_density->add_option("-d", d, "dimension")->required();

  auto* c_poisson = app.add_subcommand("poisson", "Poisson-summation residual for shell data");
  c_poisson->add_option("-d", d, "dimension")->required();
  c_poisson->add_option("--shells", shells_path, "lattice shell JSON")->required();
  c_poisson->add_option("--dual-shells", dual_path, "dual lattice shells (default: self-dual)");

  auto* c_pack = app.add_subcommand("pack1d", "optimal periodic packing for a finite set");
  c_pack->add_option("--k", klist, "comma-separated exact rationals, e.g. 1,3/2,5/2")->required();

  auto* c_reduce = app.add_subcommand("reduce", "truncate accumulation tails to a finite set");
  c_reduce->add_option("--desc", desc_path, "accumulation description JSON")->required();

  auto* c_fejer = app.add_subcommand("fejer", "sharpness family for the 1-D kissing bound");
  c_fejer->add_option("--lambda", lambda_text, "separation parameter (>= 7)")->required();

  auto* c_table = app.add_subcommand("table", "re-estimate the spectral thresholds");
  c_table->add_option("--dmax", dmax, "largest dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2; // usage errors map to exit 2
  }

  try {
    if (c_params->parsed()) return cmd_params(d);
    if (c_verify->parsed()) {
      auto opts = make_verify_options(tail_mode, strict_tails, ladder, timing);
      if (all) {
        if (dmax < 8) raise(ErrorKind::usage, "--all needs --dmax");
        return cmd_verify_all(dmax, opts, jobs);
      }
      if (d < 8) raise(ErrorKind::usage, "verify needs -d or --all");
      return cmd_verify_one(d, opts, out_path);
    }
    if (c_cvec->parsed()) return cmd_cvectors(d);
    if (app.get_subcommand("csign48")->parsed()) return cmd_csign48();
    if (c_plot->parsed()) return cmd_plot(d, side, range, step, out_path);
    if (c_density->parsed()) return cmd_density(d);
    if (c_poisson->parsed()) return cmd_poisson(d, shells_path, dual_path);
    if (c_pack->parsed()) return cmd_pack1d(klist);
    if (c_reduce->parsed()) return cmd_reduce(desc_path);
    if (c_fejer->parsed()) return cmd_fejer(lambda_text);
    if (c_table->parsed()) return cmd_table(dmax);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
