// Command-line front end: run the identity-check suites, run the two
// congruence prime searches in parallel, compute individual determinants and
// values, and emit JSON-lines or CSV.
//
// Exit codes: 0 success, 1 at least one check failed, 2 usage error.

#include "cyclomat/padic.hpp"
#include "cyclomat/search.hpp"
#include "cyclomat/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace ca = cyclomat::arith;
namespace cc = cyclomat::chars;
namespace cd = cyclomat::padic;
namespace cl = cyclomat::linalg;
namespace cp = cyclomat::pell;
namespace cs = cyclomat::search;
namespace cv = cyclomat::verify;

using ca::i64;
using ca::u64;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

unsigned default_jobs() {
  if (const char* env = std::getenv("CYCLOMAT_JOBS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Stdout by default, or --out FILE.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string join_u64(const std::vector<u64>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// --------------------------- verify ---------------------------------------

struct VerifyArgs {
  std::vector<std::string> checks;
  u64 q_min = 7;
  u64 q_max = 121;
  u64 complex_q_max = 49;
  unsigned jobs = default_jobs();
  std::string format = "json";
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  cv::RunOptions opt;
  opt.check_ids = a.checks;
  opt.q_min = a.q_min;
  opt.q_max = a.q_max;
  opt.complex_q_max = a.complex_q_max;
  opt.jobs = a.jobs;
  std::vector<cv::CheckReport> reports;
  try {
    reports = cv::run_checks(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  Sink sink(a.out);
  if (a.format == "csv") {
    sink.stream() << "check_id,params,lhs,rhs,verdict,engine,reason,elapsed_seconds\n";
    for (const cv::CheckReport& r : reports) {
      std::string params;
      for (const auto& [k, v] : r.params) {
        if (!params.empty()) params += " ";
        params += k + "=" + std::to_string(v);
      }
      sink.stream() << r.check_id << "," << csv_escape(params) << "," << csv_escape(r.lhs) << ","
                    << csv_escape(r.rhs) << "," << cv::verdict_name(r.verdict) << "," << csv_escape(r.engine)
                    << "," << csv_escape(r.reason) << "," << r.elapsed_seconds << "\n";
    }
  } else {
    for (const cv::CheckReport& r : reports) sink.stream() << cv::check_report_json(r) << "\n";
  }
  return cv::any_failure(reports) ? kExitCheckFailure : kExitOk;
}

// --------------------------- search ---------------------------------------

struct SearchArgs {
  std::string predicate = "qp2";
  u64 min = 7;
  u64 max = 1000000;
  unsigned jobs = default_jobs();
  std::string format = "json";
  std::string out;
};

int run_search_cmd(const SearchArgs& a) {
  cs::Predicate pred;
  cs::SearchResult res;
  try {
    pred = cs::parse_predicate(a.predicate);
    res = cs::run_search(pred, a.min, a.max, a.jobs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  // The two congruences come with stated solution sets on [7, 10^6]; when the
  // scan covers exactly that range, report the comparison rather than leaving
  // it to the reader.  The P-congruence set is stated without its boundary
  // prime 7 (where b_7 = 0 exactly), so that prime is flagged separately.
  std::optional<std::vector<u64>> reference;
  std::string comparison;
  if (a.min == 7 && a.max == 1000000) {
    std::vector<u64> hits_above_boundary;
    for (u64 h : res.hits) {
      if (h > 7) hits_above_boundary.push_back(h);
    }
    if (pred == cs::Predicate::qp2) {
      reference = {13, 31};
      comparison = (res.hits == *reference)
                       ? "match: computed {" + join_u64(res.hits, ", ") + "} equals the stated set"
                       : "mismatch: computed {" + join_u64(res.hits, ", ") + "} differs from the stated set";
    } else {
      reference = {29};
      if (hits_above_boundary == *reference) {
        comparison = "match on (7, 10^6]: boundary prime 7 satisfies the congruence (b_7 = 0) and is reported";
      } else {
        comparison = "mismatch: computed {" + join_u64(res.hits, ", ") + "} (boundary prime 7 included; b_7 = 0) " +
                     "differs from the stated {" + join_u64(*reference, ", ") + "} even on (7, 10^6]";
      }
    }
  }
  Sink sink(a.out);
  if (a.format == "csv") {
    sink.stream() << "predicate,min,max,hits,scanned,elapsed_seconds\n";
    sink.stream() << cs::predicate_name(res.predicate) << "," << res.min << "," << res.max << ","
                  << csv_escape(join_u64(res.hits, ";")) << "," << res.scanned << "," << res.elapsed_seconds
                  << "\n";
    if (!comparison.empty()) sink.stream() << "# " << comparison << "\n";
  } else {
    ordered_json j;
    j["predicate"] = cs::predicate_name(res.predicate);
    j["min"] = res.min;
    j["max"] = res.max;
    j["hits"] = res.hits;
    j["scanned"] = res.scanned;
    j["elapsed_seconds"] = res.elapsed_seconds;
    if (reference) {
      j["reference_set"] = *reference;
      j["reference_comparison"] = comparison;
    }
    sink.stream() << j.dump() << "\n";
  }
  return kExitOk;
}

// --------------------------- det -------------------------------------------

struct DetArgs {
  std::string matrix;
  u64 q = 0;
  u64 m = 0;
  std::string character = "quadratic";
  std::string engine = "auto";
  std::string format = "json";
  std::string out;
};

u64 parse_char_exponent(const std::string& spec, const cyclomat::ff::FqCtx& F) {
  if (spec == "quadratic") return F.n();
  if (spec == "generator") return 1;
  std::size_t pos = 0;
  unsigned long long k = std::stoull(spec, &pos);
  if (pos != spec.size()) throw std::invalid_argument("bad --char value: " + spec);
  return static_cast<u64>(k) % (F.q() - 1);
}

int run_det(const DetArgs& a) {
  Sink* sink_ptr = nullptr;
  try {
    Sink sink(a.out);
    sink_ptr = &sink;
    ordered_json j;
    j["matrix"] = a.matrix;
    std::string domain, value, engine_used;

    if (a.matrix == "bq" || a.matrix == "sun") {
      if (a.engine != "auto" && a.engine != "modp")
        throw std::invalid_argument("matrix " + a.matrix + " supports only the mod-p engine");
      engine_used = "modp";
      if (a.matrix == "bq") {
        ca::PrimePowerCtx ctx = ca::prime_power_decompose(a.q);
        cyclomat::ff::FqCtx F(ctx.p, ctx.f);
        cyclomat::ff::FqElem det = cl::det_mod_p(cl::build_bq(F, a.m), F);
        j["q"] = a.q;
        j["m"] = a.m;
        domain = "F_" + std::to_string(a.q);
        value = (ctx.f == 1) ? std::to_string(det.c[0]) : F.to_string(det);
      } else {
        ca::ModRing R(a.q);
        u64 det = cl::det_mod_p(cl::build_sun(a.q, a.m), R);
        j["p"] = a.q;
        j["m"] = a.m;
        domain = "F_" + std::to_string(a.q);
        value = std::to_string(det);
      }
    } else if (a.matrix == "dq+" || a.matrix == "dq-" || a.matrix == "carlitz+" || a.matrix == "carlitz-") {
      const bool carlitz = a.matrix.rfind("carlitz", 0) == 0;
      const cl::MatrixSign sign = (a.matrix.back() == '+') ? cl::MatrixSign::plus : cl::MatrixSign::minus;
      ca::PrimePowerCtx ctx = ca::prime_power_decompose(a.q);
      if (carlitz && ctx.f != 1) throw std::invalid_argument("carlitz matrices require a prime p (f = 1)");
      cyclomat::ff::FqCtx F(ctx.p, ctx.f);
      cc::CharSpec psi(F, parse_char_exponent(a.character, F));
      cl::Matrix<cyclomat::cyclo::CycNum> M =
          carlitz ? cl::build_carlitz(a.q, psi, sign) : cl::build_dq(F, psi, sign);
      j[carlitz ? "p" : "q"] = a.q;
      j["k"] = psi.k;
      std::string engine = a.engine;
      if (engine == "auto") engine = (psi.k == F.n()) ? "exact" : "complex";
      engine_used = engine;
      if (engine == "exact") {
        cyclomat::arith::Integer det;
        try {
          det = cl::det_exact(cl::cyc_matrix_to_integer(M));
        } catch (const std::domain_error&) {
          throw std::invalid_argument("exact engine needs integer entries; this character requires --engine complex");
        }
        domain = "Z";
        value = det.get_str();
      } else if (engine == "complex") {
        cl::Complex det = cl::det_complex_lu(cl::cyc_matrix_embed(M)).value;
        domain = "C";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "(%.12g, %.12g)", det.real(), det.imag());
        value = buf;
      } else {
        throw std::invalid_argument("matrix " + a.matrix + " supports engines exact|complex");
      }
    } else if (a.matrix == "chapman0" || a.matrix == "chapman1") {
      if (a.engine != "auto" && a.engine != "exact")
        throw std::invalid_argument("chapman matrices support only the exact engine");
      engine_used = "exact";
      int variant = (a.matrix.back() == '1') ? 1 : 0;
      cyclomat::arith::Integer det = cl::det_exact(cl::build_chapman(a.q, variant));
      j["p"] = a.q;
      j["variant"] = variant;
      domain = "Z";
      value = det.get_str();
    } else {
      throw std::invalid_argument("unknown matrix selector: " + a.matrix);
    }

    j["engine"] = engine_used;
    j["domain"] = domain;
    j["value"] = value;
    if (a.format == "csv") {
      sink.stream() << "matrix,engine,domain,value\n"
                    << a.matrix << "," << engine_used << "," << domain << "," << csv_escape(value) << "\n";
    } else {
      sink.stream() << j.dump() << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    (void)sink_ptr;
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// --------------------------- pell / gamma-p --------------------------------

int run_pell(u64 index, u64 modulus, const std::string& format, const std::string& out) {
  try {
    ca::ModRing R(modulus);
    cp::PellPair pair = cp::pell_pair_mod(index, R);
    Sink sink(out);
    if (format == "csv") {
      sink.stream() << "index,modulus,P,Q\n"
                    << index << "," << modulus << "," << pair.P << "," << pair.Q << "\n";
    } else {
      ordered_json j;
      j["index"] = index;
      j["modulus"] = modulus;
      j["P"] = std::to_string(pair.P);
      j["Q"] = std::to_string(pair.Q);
      sink.stream() << j.dump() << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_gamma_p(u64 p, const std::string& x, unsigned precision, const std::string& format,
                const std::string& out) {
  try {
    cd::PadicApprox g;
    if (x.find('/') != std::string::npos) {
      cyclomat::arith::Rational r(x);
      r.canonicalize();
      g = cd::gamma_p(r, p, precision);
    } else {
      g = cd::gamma_p(cyclomat::arith::Integer(x), p, precision);
    }
    Sink sink(out);
    if (format == "csv") {
      sink.stream() << "p,x,precision,modulus,value\n"
                    << p << "," << csv_escape(x) << "," << precision << "," << g.modulus << "," << g.value
                    << "\n";
    } else {
      ordered_json j;
      j["p"] = p;
      j["x"] = x;
      j["precision"] = precision;
      j["modulus"] = std::to_string(g.modulus);
      j["value"] = std::to_string(g.value);
      sink.stream() << j.dump() << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclotomic matrices over finite fields: identity checks, congruence prime searches, determinants"};
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "run identity checks and stream one report per check");
  verify->add_option("--check", va.checks, "check id (repeatable) or 'all'")->default_val(std::vector<std::string>{"all"});
  verify->add_option("--q-min", va.q_min, "lower end of the q range");
  verify->add_option("--q-max", va.q_max, "upper end of the q range for exact checks");
  verify->add_option("--complex-q-max", va.complex_q_max, "upper end for all-characters complex checks");
  verify->add_option("--jobs", va.jobs, "worker threads");
  verify->add_option("--format", va.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", va.out, "write output to FILE instead of stdout");

  SearchArgs sa;
  CLI::App* search = app.add_subcommand("search", "scan primes for the two mod-p^2 congruences");
  search->add_option("--predicate", sa.predicate, "qp2|pp2")->required();
  search->add_option("--min", sa.min, "lower bound (>= 7)");
  search->add_option("--max", sa.max, "upper bound (default 10^6)");
  search->add_option("--jobs", sa.jobs, "worker threads");
  search->add_option("--format", sa.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  search->add_option("--out", sa.out, "write output to FILE instead of stdout");

  DetArgs da;
  CLI::App* det = app.add_subcommand("det", "build one matrix and evaluate its determinant");
  det->add_option("--matrix", da.matrix, "bq|dq+|dq-|carlitz+|carlitz-|chapman0|chapman1|sun")->required();
  det->add_option("--q", da.q, "prime power q (prime for carlitz/chapman/sun)")->required();
  det->add_option("--m", da.m, "power m (bq, sun)");
  det->add_option("--char", da.character, "character: quadratic|generator|<exponent>");
  det->add_option("--engine", da.engine, "auto|exact|complex|modp");
  det->add_option("--format", da.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  det->add_option("--out", da.out, "write output to FILE instead of stdout");

  u64 pell_index = 0, pell_mod = 0;
  std::string pell_format = "json", pell_out;
  CLI::App* pell = app.add_subcommand("pell", "Pell and companion Pell numbers mod m");
  pell->add_option("--index", pell_index, "index i")->required();
  pell->add_option("--mod", pell_mod, "modulus")->required();
  pell->add_option("--format", pell_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  pell->add_option("--out", pell_out, "write output to FILE instead of stdout");

  u64 gp_p = 0;
  unsigned gp_precision = 1;
  std::string gp_x, gp_format = "json", gp_out;
  CLI::App* gamma = app.add_subcommand("gamma-p", "p-adic Gamma function mod p^N");
  gamma->add_option("--p", gp_p, "prime >= 5")->required();
  gamma->add_option("--x", gp_x, "integer or rational a/b with b | p-1")->required();
  gamma->add_option("--precision", gp_precision, "precision exponent N")->required();
  gamma->add_option("--format", gp_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  gamma->add_option("--out", gp_out, "write output to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (verify->parsed()) return run_verify(va);
  if (search->parsed()) return run_search_cmd(sa);
  if (det->parsed()) return run_det(da);
  if (pell->parsed()) return run_pell(pell_index, pell_mod, pell_format, pell_out);
  if (gamma->parsed()) return run_gamma_p(gp_p, gp_x, gp_precision, gp_format, gp_out);
  return kExitUsage;
}
