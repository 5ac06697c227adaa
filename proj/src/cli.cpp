#include "qlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "qlab/asymptotics.hpp"
#include "qlab/builders.hpp"
#include "qlab/enumerators.hpp"
#include "qlab/identities.hpp"

namespace qlab {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kGrammar =
    "usage: qlab <command> [--series|--family|--identity NAME] [--order N]\n"
    "            [--n N | --n-range A..B] [--zeta SPEC] [--format plain|json|csv]\n"
    "            [--out PATH] [--precision P] [--all]\n"
    "commands:\n"
    "  list     catalog of series, enumeration families, identities\n"
    "  coeffs   --series NAME --order N [--zeta 1|-1|q^j|-q^j]\n"
    "  enum     --family NAME (--n N | --n-range A..B)\n"
    "  verify   (--identity ID | --all) [--order N]\n"
    "  asympt   --family pod|pev|g (--n N | --n-range A..B) [--precision P]\n"
    "environment: QLAB_ORDER_CAP (default 5000) bounds --order and n\n";

// Thrown for anything that should print the grammar and exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string series, family, identity;
  std::optional<long> order;
  std::optional<long> n;
  std::string n_range;
  std::string zeta;
  std::string format = "plain";
  std::string out_path;
  int precision = 12;
  bool all = false;
};

long order_cap() {
  if (const char* v = std::getenv("QLAB_ORDER_CAP")) {
    char* end = nullptr;
    long cap = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && cap >= 0) return cap;
  }
  return 5000;
}

void check_order(long value, const char* what) {
  if (value < 0) throw UsageError(std::string(what) + " must be >= 0");
  if (value > order_cap()) {
    throw UsageError(std::string(what) + " " + std::to_string(value) + " exceeds QLAB_ORDER_CAP=" +
                     std::to_string(order_cap()));
  }
}

std::vector<long> sizes(const Config& c) {
  if (c.n && !c.n_range.empty()) throw UsageError("give either --n or --n-range, not both");
  if (c.n) {
    check_order(*c.n, "n");
    return {*c.n};
  }
  if (c.n_range.empty()) throw UsageError("--n or --n-range is required");
  static const std::regex re(R"((\d+)\.\.(\d+))");
  std::smatch m;
  if (!std::regex_match(c.n_range, m, re)) throw UsageError("--n-range must look like A..B");
  long a = std::stol(m[1]), b = std::stol(m[2]);
  if (a > b) throw UsageError("--n-range needs A <= B");
  check_order(b, "n");
  std::vector<long> v;
  for (long i = a; i <= b; ++i) v.push_back(i);
  return v;
}

std::string real(Real x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", precision, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return r + "\"";
}

// ----- list -----------------------------------------------------------------

void cmd_list(const Config& c, std::ostream& os) {
  const auto& reg = default_registry();
  if (c.format == "json") {
    json j;
    j["series"] = json::array();
    for (const auto& e : series_catalog()) {
      j["series"].push_back({{"name", e.name},
                             {"variables", e.arity == Arity::OneVariable ? 1 : 2},
                             {"anchor", e.anchor}});
    }
    j["families"] = enumerator_families();
    j["identities"] = json::array();
    for (const auto& ic : reg.cases()) {
      j["identities"].push_back(
          {{"id", ic.id}, {"bivariate", ic.bivariate}, {"description", ic.description}});
    }
    os << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    os << "kind,name,detail\n";
    for (const auto& e : series_catalog()) {
      os << "series," << csv_field(e.name) << "," << csv_field(e.anchor) << "\n";
    }
    for (const auto& f : enumerator_families()) os << "family," << f << ",\n";
    for (const auto& ic : reg.cases()) {
      os << "identity," << csv_field(ic.id) << "," << csv_field(ic.description) << "\n";
    }
  } else {
    os << "series:\n";
    for (const auto& e : series_catalog()) {
      os << "  " << e.name << (e.arity == Arity::TwoVariable ? " (zeta)  " : "  ") << e.anchor
         << "\n";
    }
    os << "families:\n";
    for (const auto& f : enumerator_families()) os << "  " << f << "\n";
    os << "identities:\n";
    for (const auto& ic : reg.cases()) os << "  " << ic.id << "  " << ic.description << "\n";
  }
}

// ----- coeffs -----------------------------------------------------------------

void emit_univariate(const LaurentSeries& s, long order, const Config& c, std::ostream& os) {
  const long start = std::min(0L, s.valuation());
  if (c.format == "json") {
    json arr = json::array();
    for (long n = start; n <= order; ++n) arr.push_back(to_string(s.coefficient(n)));
    if (start < 0) {
      os << json{{"valuation", start}, {"order", order}, {"coeffs", arr}}.dump(2) << "\n";
    } else {
      os << arr.dump() << "\n";
    }
  } else if (c.format == "csv") {
    os << "n,coefficient\n";
    for (long n = start; n <= order; ++n) os << n << "," << to_string(s.coefficient(n)) << "\n";
  } else {
    for (long n = start; n <= order; ++n) os << n << " " << to_string(s.coefficient(n)) << "\n";
  }
}

void emit_bivariate(const BivariateSeries& s, long order, const Config& c, std::ostream& os) {
  const long start = std::min(0L, s.valuation());
  if (c.format == "json") {
    json arr = json::array();
    for (long n = start; n <= order; ++n) {
      json cell = json::object();
      for (const auto& [e, v] : s.coefficient(n).terms()) cell[std::to_string(e)] = to_string(v);
      arr.push_back(cell);
    }
    if (start < 0) {
      os << json{{"valuation", start}, {"order", order}, {"coeffs", arr}}.dump(2) << "\n";
    } else {
      os << arr.dump() << "\n";
    }
  } else if (c.format == "csv") {
    os << "n,zeta_exponent,coefficient\n";
    for (long n = start; n <= order; ++n) {
      for (const auto& [e, v] : s.coefficient(n).terms()) {
        os << n << "," << e << "," << to_string(v) << "\n";
      }
    }
  } else {
    for (long n = start; n <= order; ++n) os << n << " " << to_string(s.coefficient(n)) << "\n";
  }
}

void cmd_coeffs(const Config& c, std::ostream& os) {
  if (c.series.empty()) throw UsageError("coeffs needs --series");
  if (!c.order) throw UsageError("coeffs needs --order");
  check_order(*c.order, "order");
  const SeriesCatalogEntry* entry;
  try {
    entry = &find_series(c.series);
  } catch (const UnknownSeries& e) {
    throw UsageError(e.what());
  }
  std::optional<ZetaSubstitution> zeta;
  if (!c.zeta.empty()) {
    try {
      zeta = parse_zeta_spec(c.zeta);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (entry->arity == Arity::OneVariable) {
      throw UsageError("series '" + entry->name + "' has no zeta variable");
    }
  }
  if (entry->arity == Arity::OneVariable) {
    emit_univariate(build(entry->name, *c.order), *c.order, c, os);
  } else if (zeta) {
    LaurentSeries s;
    try {
      s = build_specialized(entry->name, *zeta, *c.order);
    } catch (const SeriesError& e) {
      throw UsageError("zeta = " + c.zeta + " is not admissible for " + entry->name + ": " +
                       e.what());
    }
    emit_univariate(s, *c.order, c, os);
  } else {
    emit_bivariate(build_bivariate(entry->name, *c.order), *c.order, c, os);
  }
}

// ----- enum -------------------------------------------------------------------

constexpr long kEnumCap = 40;  // brute force; sizes above this explode

void cmd_enum(const Config& c, std::ostream& os) {
  if (c.family.empty()) throw UsageError("enum needs --family");
  const auto& fams = enumerator_families();
  if (std::find(fams.begin(), fams.end(), c.family) == fams.end()) {
    throw UsageError("unknown family '" + c.family + "'");
  }
  auto ns = sizes(c);
  if (ns.back() > kEnumCap) {
    throw UsageError("enum is brute force; n above " + std::to_string(kEnumCap) + " is refused");
  }
  const bool objects = c.format != "csv";
  if (c.format == "json") {
    json arr = json::array();
    for (long n : ns) {
      auto e = enumerate(c.family, n, objects);
      json refined = json::object();
      for (const auto& [m, k] : e.refined) refined[std::to_string(m)] = k;
      arr.push_back({{"family", e.family},
                     {"n", n},
                     {"count", e.count},
                     {"refined", refined},
                     {"objects", e.objects}});
    }
    os << arr.dump(2) << "\n";
  } else if (c.format == "csv") {
    os << "family,n,m,count\n";
    for (long n : ns) {
      auto e = enumerate(c.family, n, false);
      os << e.family << "," << n << ",," << e.count << "\n";
      for (const auto& [m, k] : e.refined) os << e.family << "," << n << "," << m << "," << k << "\n";
    }
  } else {
    for (long n : ns) {
      auto e = enumerate(c.family, n, objects);
      os << e.family << " n=" << n << " count=" << e.count << "\n";
      if (!e.refined.empty()) {
        os << "  refined";
        for (const auto& [m, k] : e.refined) os << " m=" << m << ":" << k;
        os << "\n";
      }
      for (const auto& o : e.objects) os << "  " << o << "\n";
    }
  }
}

// ----- verify -----------------------------------------------------------------

json report_json(const VerificationReport& r) {
  json j{{"id", r.id},
         {"order", r.order},
         {"bivariate", r.bivariate},
         {"status", r.passed() ? "pass" : "fail"}};
  if (r.mismatch) {
    json m{{"q_exponent", r.mismatch->q_exponent}};
    if (r.mismatch->zeta_exponent) m["zeta_exponent"] = *r.mismatch->zeta_exponent;
    m["lhs"] = r.mismatch->lhs;
    m["rhs"] = r.mismatch->rhs;
    j["mismatch"] = m;
  }
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string report_line(const VerificationReport& r) {
  std::string s = std::string(r.passed() ? "PASS " : "FAIL ") + r.id + " order=" +
                  std::to_string(r.order);
  if (r.mismatch) {
    s += " mismatch at q^" + std::to_string(r.mismatch->q_exponent);
    if (r.mismatch->zeta_exponent) s += " zeta^" + std::to_string(*r.mismatch->zeta_exponent);
    s += ": lhs=" + r.mismatch->lhs + " rhs=" + r.mismatch->rhs;
  }
  if (!r.error.empty()) s += " error: " + r.error;
  return s;
}

bool cmd_verify(const Config& c, std::ostream& os) {
  if (c.all == !c.identity.empty()) throw UsageError("verify needs exactly one of --identity or --all");
  if (c.order) check_order(*c.order, "order");
  const auto& reg = default_registry();
  std::vector<VerificationReport> reports;
  if (c.all) {
    reports = c.order ? reg.verify_all(*c.order) : reg.verify_all(100, 60);
  } else {
    const IdentityCase* ic;
    try {
      ic = &reg.find(c.identity);
    } catch (const UnknownIdentity& e) {
      throw UsageError(e.what());
    }
    reports.push_back(run_case(*ic, c.order ? *c.order : ic->default_order));
  }
  const auto passed = std::count_if(reports.begin(), reports.end(),
                                    [](const VerificationReport& r) { return r.passed(); });
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    os << arr.dump(2) << "\n";
  } else if (c.format == "csv") {
    os << "id,order,bivariate,status,q_exponent,zeta_exponent,lhs,rhs,error\n";
    for (const auto& r : reports) {
      os << csv_field(r.id) << "," << r.order << "," << (r.bivariate ? "true" : "false") << ","
         << (r.passed() ? "pass" : "fail") << ",";
      if (r.mismatch) {
        os << r.mismatch->q_exponent << ","
           << (r.mismatch->zeta_exponent ? std::to_string(*r.mismatch->zeta_exponent) : "") << ","
           << csv_field(r.mismatch->lhs) << "," << csv_field(r.mismatch->rhs);
      } else {
        os << ",,,";
      }
      os << "," << csv_field(r.error) << "\n";
    }
  } else {
    for (const auto& r : reports) os << report_line(r) << "\n";
    if (c.all) os << "passed " << passed << "/" << reports.size() << "\n";
  }
  return passed == static_cast<long>(reports.size());
}

// ----- asympt -----------------------------------------------------------------

void cmd_asympt(const Config& c, std::ostream& os) {
  if (c.family.empty()) throw UsageError("asympt needs --family");
  if (c.family != "pod" && c.family != "pev" && c.family != "g") {
    throw UsageError("asympt families are pod, pev, g");
  }
  if (c.precision < 1 || c.precision > 18) throw UsageError("--precision must be 1..18");
  auto ns = sizes(c);
  if (ns.front() == 0) throw UsageError("n = 0 has no main term");
  auto rows = ratio_table(c.family, ns);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n},
                     {"b", r.coefficient},
                     {"main_term", real(r.main_term, c.precision)},
                     {"ratio", real(r.ratio, c.precision)}});
    }
    os << arr.dump(2) << "\n";
  } else {
    os << "n,b(n),main_term,ratio\n";
    for (const auto& r : rows) {
      os << r.n << "," << r.coefficient << "," << real(r.main_term, c.precision) << ","
         << real(r.ratio, c.precision) << "\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"exact q-series laboratory", "qlab"};
  app.set_help_flag();
  bool help = false;
  app.add_flag("-h,--help", help);
  app.add_option("command", c.command)->check(CLI::IsMember({"list", "coeffs", "enum", "verify", "asympt"}));
  app.add_option("--series", c.series);
  app.add_option("--family", c.family);
  app.add_option("--identity", c.identity);
  app.add_option("--order", c.order);
  app.add_option("--n", c.n);
  app.add_option("--n-range", c.n_range);
  app.add_option("--zeta", c.zeta);
  app.add_option("--format", c.format)->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--out", c.out_path);
  app.add_option("--precision", c.precision);
  app.add_flag("--all", c.all);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (help) {
      out << kGrammar;
      return kOk;
    }
    if (c.command.empty()) throw UsageError("missing command");

    std::ostringstream buf;
    bool ok = true;
    if (c.command == "list") {
      cmd_list(c, buf);
    } else if (c.command == "coeffs") {
      cmd_coeffs(c, buf);
    } else if (c.command == "enum") {
      cmd_enum(c, buf);
    } else if (c.command == "verify") {
      ok = cmd_verify(c, buf);
    } else {
      cmd_asympt(c, buf);
    }

    if (c.out_path.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(c.out_path, std::ios::binary);
      if (!f) {
        err << "qlab: cannot write " << c.out_path << "\n";
        return kUsage;
      }
      f << buf.str();
    }
    return ok ? kOk : kVerificationFailed;
  } catch (const CLI::ParseError& e) {
    err << "qlab: " << e.what() << "\n" << kGrammar;
    return kUsage;
  } catch (const UsageError& e) {
    err << "qlab: " << e.what() << "\n" << kGrammar;
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "qlab: " << e.what() << "\n" << kGrammar;
    return kUsage;
  } catch (const std::exception& e) {
    err << "qlab: computation failed: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace qlab
