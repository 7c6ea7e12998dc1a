// Command-line front end; talks to the engine only through ceforge.h.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "ceforge/ceforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CString {
  char* p = nullptr;
  ~CString() { cf_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct InstanceDeleter {
  void operator()(cf_instance* i) const { cf_instance_free(i); }
};
using Instance = std::unique_ptr<cf_instance, InstanceDeleter>;

struct SystemDeleter {
  void operator()(cf_ce_system* s) const { cf_ce_system_free(s); }
};
using System = std::unique_ptr<cf_ce_system, SystemDeleter>;

// Input and argument errors exit 2; refusals of a well-formed request exit 1.
int exit_code(cf_status st) {
  switch (st) {
    case CF_OK: return kExitOk;
    case CF_FAIL:
    case CF_UNDECIDED: return kExitFail;
    case CF_ERR_ARGUMENT:
    case CF_ERR_PARSE:
    case CF_ERR_VALIDATION:
    case CF_ERR_BOUND_EXCEEDED:
    case CF_ERR_NOT_A_POSET:
    case CF_ERR_NOT_A_DOWN_SET:
    case CF_ERR_NOT_CONVEX:
    case CF_ERR_NOT_NESTED:
    case CF_ERR_DIMENSION_MISMATCH:
    case CF_ERR_GRADING_MISMATCH:
    case CF_ERR_INTERNAL: return kExitUsage;
    default: return kExitFail;
  }
}

int report_error(cf_status st) {
  std::cerr << "error: " << cf_last_error() << "\n";
  return exit_code(st);
}

// Emits the report (if any) and maps the status to an exit code.
int finish(cf_status st, const CString& report) {
  std::cout << report.str();
  if (st != CF_OK && st != CF_FAIL && st != CF_UNDECIDED) return report_error(st);
  return exit_code(st);
}

cf_status load(const std::string& path, bool check, Instance& out) {
  cf_instance* raw = nullptr;
  cf_status st = cf_instance_load(path.c_str(), check ? 1 : 0, &raw);
  out.reset(raw);
  return st;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartan-Eilenberg systems of poset-graded differential groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cf_version()));

  std::string file, file2, convex, alpha, beta, ce_iso_path, emit_path, out_path, cert_path, mu;
  std::size_t max_downsets = 0;
  unsigned jobs = 1;
  std::uint64_t budget = 100000, seed = 0;

  auto* validate = app.add_subcommand("validate", "check d*d = 0, filtration and strictness");
  validate->add_option("file", file, "instance file")->required();

  auto* hom = app.add_subcommand("homology", "homology of the subquotient on a convex set");
  hom->add_option("file", file, "instance file")->required();
  hom->add_option("--convex", convex, "comma-separated elements of a convex set")->required();

  auto* ce = app.add_subcommand("ce", "E-term for a nested pair of down-sets");
  ce->add_option("file", file, "instance file")->required();
  ce->add_option("--alpha", alpha, "inner down-set")->required();
  ce->add_option("--beta", beta, "outer down-set")->required();

  auto* verify = app.add_subcommand("ce-verify", "run the Cartan-Eilenberg axiom suites");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("--max-downsets", max_downsets, "refuse posets with more down-sets (0 = no limit)");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  auto* compare = app.add_subcommand("compare", "decide whether two CE systems are isomorphic");
  compare->add_option("file", file, "first instance")->required();
  compare->add_option("other", file2, "second instance")->required();
  compare->add_option("--budget", budget, "candidate budget");
  compare->add_option("--seed", seed, "search order seed");
  compare->add_option("--emit", emit_path, "write a found isomorphism as a ceforge-ce-iso file");

  auto* build = app.add_subcommand("build-iso", "construct a filtered chain isomorphism from a CE isomorphism");
  build->add_option("file", file, "source instance")->required();
  build->add_option("other", file2, "target instance")->required();
  build->add_option("--ce-iso", ce_iso_path, "ceforge-ce-iso or ceforge-map file")->required();
  build->add_option("--seed", seed, "linear extension tie-break seed");
  build->add_option("--out", out_path, "write the map here instead of stdout");
  build->add_option("--certificate", cert_path, "write the certificate here instead of stdout");

  auto* connect = app.add_subcommand("connect", "reduce to a connection matrix (field coefficients)");
  connect->add_option("file", file, "instance file")->required();

  auto* morse = app.add_subcommand("morse-smale", "check Morse-Smale conditions or compare two differentials");
  morse->add_option("file", file, "instance file")->required();
  morse->add_option("other", file2, "second instance");
  morse->add_option("--mu", mu, "grading, e.g. a=0,b=0,c=1")->required();
  morse->add_option("--budget", budget, "candidate budget for the brute-force cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Instance inst, other;
    CString report;

    if (*validate) {
      if (cf_status st = load(file, false, inst); st != CF_OK) return report_error(st);
      return finish(cf_validate(inst.get(), report.out()), report);
    }
    if (cf_status st = load(file, true, inst); st != CF_OK) return report_error(st);

    if (*hom) return finish(cf_homology(inst.get(), convex.c_str(), report.out()), report);

    if (*ce || *verify) {
      cf_ce_system* raw = nullptr;
      if (cf_status st = cf_ce_system_new(inst.get(), &raw); st != CF_OK) return report_error(st);
      System sys(raw);
      if (*ce) return finish(cf_ce_term(sys.get(), alpha.c_str(), beta.c_str(), report.out()), report);
      return finish(cf_ce_verify(sys.get(), max_downsets, jobs, report.out()), report);
    }

    if (*connect) return finish(cf_connect(inst.get(), report.out()), report);

    if (*morse) {
      if (!file2.empty()) {
        if (cf_status st = load(file2, true, other); st != CF_OK) return report_error(st);
      }
      return finish(cf_morse_smale(inst.get(), mu.c_str(), other.get(), budget, report.out()), report);
    }

    if (cf_status st = load(file2, true, other); st != CF_OK) return report_error(st);

    if (*compare) {
      CString iso;
      cf_status st = cf_compare(inst.get(), other.get(), budget, seed, report.out(), emit_path.empty() ? nullptr : iso.out());
      if (!emit_path.empty() && iso.p && !write_file(emit_path, iso.str())) {
        std::cerr << "error: cannot write '" << emit_path << "'\n";
        return kExitUsage;
      }
      return finish(st, report);
    }

    if (*build) {
      std::ifstream in(ce_iso_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: ParseError: cannot read '" << ce_iso_path << "'\n";
        return kExitUsage;
      }
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      CString map, cert;
      cf_status st = cf_build_iso(inst.get(), other.get(), text.c_str(), seed, map.out(), cert.out());
      if (st != CF_OK) return report_error(st);
      if (!out_path.empty()) {
        if (!write_file(out_path, map.str())) {
          std::cerr << "error: cannot write '" << out_path << "'\n";
          return kExitUsage;
        }
      } else {
        std::cout << map.str();
      }
      if (!cert_path.empty()) {
        if (!write_file(cert_path, cert.str())) {
          std::cerr << "error: cannot write '" << cert_path << "'\n";
          return kExitUsage;
        }
      } else {
        std::istringstream lines(cert.str());
        for (std::string line; std::getline(lines, line);) std::cout << "# " << line << "\n";
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
