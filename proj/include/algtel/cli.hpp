#pragma once

// Command-line orchestration: option record, result documents in text and
// line-delimited JSON, and the mapping of engine errors to exit codes.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "algtel/irreducible.hpp"
#include "algtel/telescoping.hpp"

namespace algtel::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kInputError = 2 };

struct Options {
  std::string m;
  std::string f;
  std::string approach = "polyred";  // hermite | polyred | both
  bool certificate = false;
  bool verify = false;
  bool json = false;
  std::string basis = "auto";  // auto | standard | file
  std::string basis_file;
  int max_order = 30;
  std::uint64_t seed = 0;
  std::optional<std::string> regular_point;
};

struct Report {
  std::string approach;
  std::vector<std::string> telescoper;  // p_0, ..., p_r as polynomials in t
  std::string telescoper_text;
  int order = 0;
  int bound = 0;
  std::optional<std::string> certificate;
  std::optional<bool> verified;  // empty when not requested
  std::string basis_source;
  std::vector<std::string> basis;
  std::optional<std::string> regular_point;
  std::vector<TraceStep> trace;
  double telescoping_ms = 0;
  double verification_ms = 0;
};

// Coefficient of a telescoper given as text; must not involve x or y.
inline QT parse_coefficient(const std::string& text) {
  ExprPtr e = parse_expression(text);
  if (e->contains_y()) throw ParseError("telescoper coefficient must not contain y", 1, 1);
  KX r = eval_ypoly(*e).coeff(0);
  if (!r.is_polynomial() || r.num().degree() > 0) throw ParseError("telescoper coefficient must not contain x", 1, 1);
  return r.num().coeff(0);
}

inline Telescoper telescoper_from_strings(const std::vector<std::string>& coeffs) {
  Telescoper op;
  for (const auto& c : coeffs) op.coeffs.push_back(parse_coefficient(c));
  return op;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["approach"] = r.approach;
  j["telescoper"] = r.telescoper;
  j["order"] = r.order;
  j["bound"] = r.bound;
  if (r.certificate) j["certificate"] = *r.certificate;
  j["verified"] = r.verified ? nlohmann::ordered_json(*r.verified) : nlohmann::ordered_json(nullptr);
  j["basis"] = {{"source", r.basis_source}, {"elements", r.basis}};
  if (r.regular_point) j["regular_point"] = *r.regular_point;
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& s : r.trace) trace.push_back({{"order", s.order}, {"rank", s.rank}, {"dimension", s.dimension}});
  j["trace"] = trace;
  j["timings"] = {{"telescoping_ms", r.telescoping_ms}, {"verification_ms", r.verification_ms}};
  return j;
}

inline Report from_json(const nlohmann::ordered_json& j) {
  Report r;
  r.approach = j.at("approach").get<std::string>();
  r.telescoper = j.at("telescoper").get<std::vector<std::string>>();
  r.telescoper_text = telescoper_from_strings(r.telescoper).to_string();
  r.order = j.at("order").get<int>();
  r.bound = j.at("bound").get<int>();
  if (j.contains("certificate")) r.certificate = j.at("certificate").get<std::string>();
  if (!j.at("verified").is_null()) r.verified = j.at("verified").get<bool>();
  r.basis_source = j.at("basis").at("source").get<std::string>();
  r.basis = j.at("basis").at("elements").get<std::vector<std::string>>();
  if (j.contains("regular_point")) r.regular_point = j.at("regular_point").get<std::string>();
  for (const auto& s : j.at("trace"))
    r.trace.push_back({s.at("order").get<int>(), s.at("rank").get<std::size_t>(), s.at("dimension").get<std::size_t>()});
  r.telescoping_ms = j.at("timings").at("telescoping_ms").get<double>();
  r.verification_ms = j.at("timings").at("verification_ms").get<double>();
  return r;
}

inline std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "approach: " << r.approach << "\n";
  os << "telescoper: " << r.telescoper_text << "\n";
  os << "coefficients:";
  for (std::size_t k = 0; k < r.telescoper.size(); ++k) os << (k ? "; " : " ") << "p" << k << " = " << r.telescoper[k];
  os << "\n";
  os << "order: " << r.order << "\n";
  os << "bound: " << r.bound << "\n";
  os << "verified: " << (r.verified ? (*r.verified ? "yes" : "no") : "not checked") << "\n";
  os << "basis (" << r.basis_source << "):";
  for (std::size_t k = 0; k < r.basis.size(); ++k) os << (k ? ", " : " ") << r.basis[k];
  os << "\n";
  if (r.regular_point) os << "regular point: " << *r.regular_point << "\n";
  if (r.certificate) os << "certificate: " << *r.certificate << "\n";
  os << "trace:";
  for (const auto& s : r.trace) os << " [order " << s.order << ", rank " << s.rank << ", length " << s.dimension << "]";
  os << "\n";
  os << std::fixed << std::setprecision(3) << "timings: telescoping " << r.telescoping_ms << " ms, verification "
     << r.verification_ms << " ms\n";
  return os.str();
}

// One basis element per line; blank lines and lines starting with '#' are skipped.
inline Matrix<KX> read_basis_file(const std::string& path, const FunctionField& ff) {
  std::ifstream in(path);
  if (!in) throw BasisError("cannot open basis file '" + path + "'");
  std::vector<AlgElem> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      rows.push_back(parse_element(line, ff));
    } catch (const ParseError& e) {
      throw ParseError(std::string("basis file: ") + e.what(), lineno, e.column());
    }
  }
  if (rows.size() != static_cast<std::size_t>(ff.degree()))
    throw BasisError("basis file has " + std::to_string(rows.size()) + " elements, expected " +
                     std::to_string(ff.degree()));
  Matrix<KX> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i].c);
  return m;
}

inline std::uint64_t effective_seed(const Options& o) {
  if (const char* env = std::getenv("TELESCOPE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("TELESCOPE_SEED is not a nonnegative integer: '") + env + "'", 1, 1);
    }
  }
  return o.seed;
}

inline TelescopingOptions engine_options(const Options& o, const FunctionField& ff) {
  TelescopingOptions opt;
  opt.max_order = o.max_order;
  opt.certificate = o.certificate;
  opt.seed = effective_seed(o);
  if (o.regular_point) opt.regular_point = Q::parse(*o.regular_point);
  if (o.basis == "standard") {
    Matrix<KX> id(static_cast<std::size_t>(ff.degree()), static_cast<std::size_t>(ff.degree()));
    for (std::size_t i = 0; i < id.rows(); ++i) id(i, i) = KX(1);
    opt.basis = id;
    opt.basis_require_normal = true;
  } else if (o.basis == "file") {
    opt.basis = read_basis_file(o.basis_file, ff);
  } else if (o.basis != "auto") {
    throw ParseError("unknown basis source '" + o.basis + "'", 1, 1);
  }
  return opt;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

inline Report run_driver(const FunctionField& ff, const AlgElem& f, Approach approach, const Options& o,
                         const TelescopingOptions& opt) {
  Report r;
  r.approach = approach == Approach::Hermite ? "hermite" : "polyred";
  r.basis_source = o.basis;
  auto t0 = std::chrono::steady_clock::now();
  TelescopingResult res = telescope(ff, f, approach, opt);
  r.bound = order_bound(ff, f, opt);
  r.telescoping_ms = elapsed_ms(t0);
  for (const auto& c : res.op.coeffs) r.telescoper.push_back(to_string(c.num()));
  r.telescoper_text = res.op.to_string();
  r.order = res.op.order();
  if (res.certificate) r.certificate = to_string(*res.certificate);
  for (const auto& b : res.basis) r.basis.push_back(to_string(b));
  if (res.regular_point) {
    r.regular_point = res.regular_point->to_string();
    r.basis_source = "auto, field after x -> " + *r.regular_point + " + 1/x";
  }
  r.trace = res.trace;
  if (o.verify) {
    auto t1 = std::chrono::steady_clock::now();
    r.verified = res.certificate ? verify_with_certificate(ff, f, res.op, *res.certificate)
                                 : verify_telescoper(ff, f, res.op, opt);
    r.verification_ms = elapsed_ms(t1);
  }
  return r;
}

inline int fail(std::ostream& err, int code, const std::string& msg, const std::string& hint = "") {
  err << "telescope: error: " << msg << "\n";
  if (!hint.empty()) err << "telescope: hint: " << hint << "\n";
  return code;
}

inline int run(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.approach != "hermite" && o.approach != "polyred" && o.approach != "both")
    return fail(err, kInputError, "unknown approach '" + o.approach + "'", "use hermite, polyred or both");
  if (o.basis == "file" && o.basis_file.empty())
    return fail(err, kInputError, "--basis file needs --basis-file PATH");
  if (o.max_order < 0) return fail(err, kInputError, "--max-order must be nonnegative");
  std::vector<Report> reports;
  try {
    FunctionField ff(parse_minpoly(o.m));
    if (!certify_irreducible(ff.minpoly()))
      err << "telescope: warning: could not certify that m is irreducible over Q(t)(x); results assume it is\n";
    AlgElem f = parse_element(o.f, ff);
    TelescopingOptions opt = engine_options(o, ff);
    if (o.approach != "hermite") reports.push_back(run_driver(ff, f, Approach::PolyRed, o, opt));
    if (o.approach != "polyred") reports.push_back(run_driver(ff, f, Approach::Hermite, o, opt));
  } catch (const ParseError& e) {
    return fail(err, kInputError, e.what());
  } catch (const ReducibleMinPolyError& e) {
    return fail(err, kInputError, e.what(),
                "m must be irreducible over Q(t)(x); factor it and keep the factor that defines the integrand");
  } catch (const NotRegularError& e) {
    return fail(err, kInputError, e.what(),
                "pick a point where lc_y(m) and the discriminant do not vanish and f has no pole");
  } catch (const BasisError& e) {
    return fail(err, kInputError, e.what(), "use --basis auto to compute an integral basis normal at infinity");
  } catch (const OrderLimitError& e) {
    return fail(err, kFailure, e.what(), "raise --max-order");
  } catch (const std::invalid_argument& e) {
    return fail(err, kInputError, e.what());
  } catch (const std::domain_error& e) {
    return fail(err, kInputError, e.what());
  }
  int code = kSuccess;
  for (const auto& r : reports) {
    if (o.json)
      out << to_json(r).dump() << "\n";
    else
      out << to_text(r) << (&r == &reports.back() ? "" : "\n");
    if (r.verified && !*r.verified) {
      err << "telescope: verification failed for the " << r.approach << " telescoper\n";
      code = kFailure;
    }
  }
  if (reports.size() == 2 && reports[0].telescoper != reports[1].telescoper) {
    err << "telescope: the two approaches disagree\n";
    code = kFailure;
  }
  return code;
}

}  // namespace algtel::cli
