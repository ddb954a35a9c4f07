#include <chrono>
#include <sstream>

#include "fdp/magic/certificate.hpp"
#include "fdp/support/error.hpp"

#include "json.hpp"

namespace fdp::magic {

using exactnum::PrecisionLadder;

std::string MagicCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = "1";
  j["d"] = params.d;
  j["a"] = params.a;
  j["l"] = params.l;
  j["k"] = params.k;
  j["b"] = params.b;
  j["c"] = params.c.get_str();
  auto vecjson = [](const std::vector<exactnum::Int>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& x : v) arr.push_back(x.get_str());
    return arr;
  };
  j["C_phi"] = vecjson(vec.c_phi);
  j["C_psi"] = vecjson(vec.c_psi);
  j["N"] = n_trunc;
  j["tail_mode"] = tail_mode == TailMode::lemma_majorant ? "lemma-majorant" : "constant-term";
  j["ladder"] = {{"pi_digits", ladder.pi_digits},
                 {"gamma_digits", ladder.gamma_digits},
                 {"split_exponent", ladder.split_exponent}};
  nlohmann::ordered_json ch;
  ch["I"] = checks.i;
  ch["II"] = checks.ii;
  ch["III"] = checks.iii;
  ch["IV"] = checks.iv;
  ch["V"] = checks.v;
  ch["VI"] = checks.vi;
  ch["VII"] = checks.vii;
  if (sign48.has_value()) ch["sign48"] = *sign48;
  j["checks"] = ch;
  j["runtime_secs"] = runtime_secs;
  return j.dump(2) + "\n";
}

MagicCertificate verify_magic(long d, const VerifyOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  MagicParams p = compute_params(d, opts.dimension_cap);
  PhiBasis phib = phi_basis(p);
  PsiBasis psib = psi_basis(p);
  CVectors vec = solve_c_vectors(phib, psib, p);
  long n = choose_n(p, vec, opts.tail_mode);

  MagicSeries series = MagicSeries::build(p, vec, n);
  PrecisionLadder ladder = opts.ladder.value_or(PrecisionLadder{});
  MagicCertificate cert;
  cert.params = p;
  cert.vec = vec;
  cert.n_trunc = n;
  cert.tail_mode = opts.tail_mode;

  ConditionOptions copts;
  for (;;) {
    copts.prior = cert.checks;
    cert.checks = check_conditions(series, n, ladder, copts);
    bool ok = cert.checks.all();
    if (ok && d == 48) {
      cert.sign48 = check_sign_48(series, n, ladder);
      ok = *cert.sign48;
    }
    cert.ladder = ladder;
    if (ok) break;
    if (ladder.is_max()) {
      std::string what = "certificate invalid for d=" + std::to_string(d);
      if (!cert.checks.failed.empty()) what += ": condition (" + cert.checks.failed + ") failed";
      else what += ": sign analysis failed";
      what += " at maximal precision";
      raise(ErrorKind::check_failed, what);
    }
    ladder = ladder.next();
  }

  if (opts.record_runtime) {
    auto t1 = std::chrono::steady_clock::now();
    cert.runtime_secs = std::chrono::duration<double>(t1 - t0).count();
  }
  return cert;
}

} // namespace fdp::magic
