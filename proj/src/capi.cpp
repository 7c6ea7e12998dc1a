#include "ceforge/ceforge.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>

#include "ceforge/connection_matrix.hpp"
#include "ceforge/io.hpp"
#include "ceforge/iso_constructor.hpp"

struct cf_instance {
  ceforge::GradedDifferentialGroup c;
};

struct cf_ce_system {
  std::unique_ptr<ceforge::CESystem> sys;
};

namespace {

using namespace ceforge;

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cf_status fail_with(cf_status st, const std::string& msg) {
  last_error = msg;
  return st;
}

template <class F>
cf_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail_with(static_cast<cf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(CF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(CF_ERR_INTERNAL, std::string("Internal: ") + e.what());
  }
}

#define CF_REQUIRE(cond, what) \
  if (!(cond)) return fail_with(CF_ERR_ARGUMENT, what)

DownSet parse_down_set(const Poset& P, const char* text) { return P.down_set(P.parse_subset(text ? text : "")); }

std::string describe_pair(const CESystem& c, const CESystem& a, DownSet alpha, DownSet beta) {
  const Poset& P = c.poset();
  const ElementMask xi = beta.bits & ~alpha.bits;
  return "alpha=" + P.format(alpha.bits) + " beta=" + P.format(beta.bits) + ": " + c.group(xi).to_string() +
         " vs " + a.group(xi).to_string();
}

void check_same_shape(const GradedDifferentialGroup& c, const GradedDifferentialGroup& a) {
  if (c.poset() != a.poset()) throw Error(ErrorCode::DimensionMismatch, "instances use different posets");
  if (c.ring() != a.ring()) throw Error(ErrorCode::DimensionMismatch, "instances use different coefficients");
}

}  // namespace

extern "C" {

const char* cf_version(void) { return "0.1.0"; }

const char* cf_status_name(cf_status status) {
  switch (status) {
    case CF_OK: return "OK";
    case CF_FAIL: return "FAIL";
    case CF_UNDECIDED: return "UNDECIDED";
    case CF_ERR_ARGUMENT: return "InvalidArgument";
    default: return error_code_name(static_cast<ErrorCode>(status));
  }
}

const char* cf_last_error(void) { return last_error.c_str(); }

void cf_string_free(char* s) { std::free(s); }

cf_status cf_instance_parse(const char* text, int check_invariants, cf_instance** out) {
  CF_REQUIRE(text && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto inst = std::make_unique<cf_instance>();
    inst->c = parse_instance(text, check_invariants != 0);
    *out = inst.release();
    return CF_OK;
  });
}

cf_status cf_instance_load(const char* path, int check_invariants, cf_instance** out) {
  CF_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string text = read_text_file(path);
    try {
      auto inst = std::make_unique<cf_instance>();
      inst->c = parse_instance(text, check_invariants != 0);
      *out = inst.release();
      return CF_OK;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + (std::strchr(e.what(), ':') + 2));
    }
  });
}

void cf_instance_free(cf_instance* inst) { delete inst; }

cf_status cf_instance_serialize(const cf_instance* inst, char** out) {
  CF_REQUIRE(inst && out, "null argument");
  return guarded([&] {
    *out = dup(serialize_instance(inst->c));
    return CF_OK;
  });
}

size_t cf_instance_element_count(const cf_instance* inst) { return inst ? inst->c.poset().size() : 0; }

size_t cf_instance_total_rank(const cf_instance* inst) { return inst ? inst->c.total_rank() : 0; }

cf_status cf_validate(const cf_instance* inst, char** report) {
  CF_REQUIRE(inst && report, "null argument");
  return guarded([&] {
    const auto& c = inst->c;
    ValidationReport r = validate(c);
    std::ostringstream os;
    os << "instance: " << c.poset().size() << " elements, total rank " << c.total_rank() << ", coefficients "
       << c.ring().symbol() << "\n";
    os << "d_squared_zero: " << (r.d_squared_zero ? "PASS" : "FAIL") << "\n";
    os << "filtered: " << (r.filtered ? "PASS" : "FAIL") << "\n";
    bool ok = r.valid();
    if (c.strict_flag()) {
      os << "strict: " << (r.strict ? "PASS" : "FAIL") << "\n";
      ok = ok && r.strict;
    } else {
      os << "strict: " << (r.strict ? "yes" : "no") << "\n";
    }
    if (r.degree_consistent) os << "degree: " << (*r.degree_consistent ? "PASS" : "FAIL") << "\n";
    for (const auto& p : r.problems) os << "problem: " << p << "\n";
    os << (ok ? "VALID" : "INVALID") << "\n";
    *report = dup(os.str());
    return ok ? CF_OK : CF_FAIL;
  });
}

cf_status cf_homology(const cf_instance* inst, const char* convex, char** report) {
  CF_REQUIRE(inst && convex && report, "null argument");
  return guarded([&] {
    const Poset& P = inst->c.poset();
    ConvexSet xi = P.convex_set(P.parse_subset(convex));
    FgGroup g = homology(inst->c.restricted_differential(xi.bits)).group();
    *report = dup("H(" + P.format(xi.bits) + ") = " + g.to_string() + "\n");
    return CF_OK;
  });
}

cf_status cf_ce_system_new(const cf_instance* inst, cf_ce_system** out) {
  CF_REQUIRE(inst && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<cf_ce_system>();
    s->sys = std::make_unique<CESystem>(inst->c);
    *out = s.release();
    return CF_OK;
  });
}

void cf_ce_system_free(cf_ce_system* sys) { delete sys; }

cf_status cf_ce_term(const cf_ce_system* sys, const char* alpha, const char* beta, char** report) {
  CF_REQUIRE(sys && alpha && beta && report, "null argument");
  return guarded([&] {
    const Poset& P = sys->sys->poset();
    DownSet a = parse_down_set(P, alpha), b = parse_down_set(P, beta);
    FgGroup g = sys->sys->e_term(a, b);
    *report = dup("E(alpha=" + P.format(a.bits) + ", beta=" + P.format(b.bits) + ") on " +
                  P.format(b.bits & ~a.bits) + " = " + g.to_string() + "\n");
    return CF_OK;
  });
}

cf_status cf_ce_verify(const cf_ce_system* sys, size_t max_downsets, unsigned jobs, char** report) {
  CF_REQUIRE(sys && report, "null argument");
  return guarded([&] {
    std::ostringstream os;
    SuiteOptions opt;
    opt.max_downsets = max_downsets == 0 ? SIZE_MAX : max_downsets;
    opt.jobs = jobs;
    opt.on_check = [&os](const std::string& suite, const std::string& description, bool passed) {
      os << (passed ? "PASS " : "FAIL ") << description << " " << suite << "\n";
    };
    BraidReport r = verify_all(*sys->sys, opt);
    for (const auto& ax : r.axioms) {
      os << "suite " << ax.name << ": " << ax.checked << " checked, " << ax.failed << " failed";
      if (ax.failed) os << ", first " << ax.first_counterexample;
      os << "\n";
    }
    os << (r.passed() ? "ALL PASS" : "FAILURES") << "\n";
    *report = dup(os.str());
    return r.passed() ? CF_OK : CF_FAIL;
  });
}

cf_status cf_compare(const cf_instance* c, const cf_instance* a, uint64_t budget, uint64_t seed, char** report,
                     char** ce_iso) {
  CF_REQUIRE(c && a && report, "null argument");
  if (ce_iso) *ce_iso = nullptr;
  return guarded([&] {
    check_same_shape(c->c, a->c);
    CESystem sc(c->c), sa(a->c);
    CompareResult r = ce_isomorphic_bruteforce(sc, sa, budget, seed);
    std::ostringstream os;
    cf_status st = CF_OK;
    switch (r.outcome) {
      case CompareOutcome::Isomorphic:
        os << "ISOMORPHIC\n";
        if (ce_iso && r.iso) *ce_iso = dup(serialize_ce_iso(sc, sa, *r.iso));
        break;
      case CompareOutcome::NotIsomorphic:
        os << "NOT ISOMORPHIC\n";
        if (r.distinguishing) os << "distinguishing " << describe_pair(sc, sa, r.distinguishing->first, r.distinguishing->second) << "\n";
        st = CF_FAIL;
        break;
      case CompareOutcome::BudgetExceeded:
        os << "UNDECIDED\n";
        st = CF_UNDECIDED;
        break;
    }
    if (!r.reason.empty()) os << "reason: " << r.reason << "\n";
    os << "candidates tried: " << r.candidates_tried << "\n";
    *report = dup(os.str());
    return st;
  });
}

cf_status cf_build_iso(const cf_instance* c, const cf_instance* a, const char* ce_iso_text, uint64_t seed,
                       char** map_text, char** certificate) {
  CF_REQUIRE(c && a && ce_iso_text && map_text, "null argument");
  *map_text = nullptr;
  if (certificate) *certificate = nullptr;
  return guarded([&] {
    check_same_shape(c->c, a->c);
    CESystem sc(c->c), sa(a->c);
    CEIso h;
    const std::string kind = document_kind(ce_iso_text);
    if (kind == "ceforge-map") {
      MapDocument m = parse_map(ce_iso_text);
      if (m.poset != c->c.poset() || m.ring != c->c.ring() || m.source_ranks != c->c.ranks() ||
          m.target_ranks != a->c.ranks()) {
        throw Error(ErrorCode::DimensionMismatch, "map file does not match the two instances");
      }
      h = induced_ce_iso(sc, sa, m.matrix);
    } else if (kind == "ceforge-ce-iso") {
      h = parse_ce_iso(ce_iso_text, sc, sa);
    } else {
      throw Error(ErrorCode::ParseError, "line 1: expected 'ceforge-ce-iso' or 'ceforge-map', got '" + kind + "'");
    }
    BuildResult r = build_filtered_iso(sc, sa, h, seed);
    *map_text = dup(serialize_map(map_document("f", c->c, a->c, r.map.matrix)));
    if (certificate) {
      std::string cert;
      for (const auto& line : r.certificate) cert += line + "\n";
      *certificate = dup(cert);
    }
    return CF_OK;
  });
}

cf_status cf_connect(const cf_instance* inst, char** report) {
  CF_REQUIRE(inst && report, "null argument");
  return guarded([&] {
    const auto& d = inst->c;
    ReductionWitness w = reduce(d);
    if (!verify_witness(d, w)) throw Error(ErrorCode::Internal, "reduction witness failed verification");
    const Poset& P = d.poset();
    std::ostringstream os;
    os << "connection matrix over " << d.ring().symbol() << "\n";
    for (std::size_t p = 0; p < P.size(); ++p) {
      os << "rank " << P.label(p) << ": " << d.rank(p) << " -> " << w.a.rank(p) << "\n";
    }
    os << "cancellations: " << w.cancellations << "\n";
    os << "witness: g*f = id, f*g - id = h*d + d*h verified\n\n";
    os << serialize_instance(w.a) << "\n";
    os << serialize_map(map_document("f", w.a, d, w.f)) << "\n";
    os << serialize_map(map_document("g", d, w.a, w.g)) << "\n";
    os << serialize_map(map_document("h", d, d, w.h));
    *report = dup(os.str());
    return CF_OK;
  });
}

cf_status cf_morse_smale(const cf_instance* inst, const char* mu, const cf_instance* second, uint64_t budget,
                         char** report) {
  CF_REQUIRE(inst && mu && report, "null argument");
  return guarded([&] {
    const Poset& P = inst->c.poset();
    MorseSmaleGrading grading = parse_grading(P, mu);
    std::ostringstream os;
    if (!second) {
      MorseSmaleCheck m = check_morse_smale(inst->c, grading);
      for (const auto& r : m.reasons) os << "reason: " << r << "\n";
      os << (m.ok ? "MORSE-SMALE" : "NOT MORSE-SMALE") << "\n";
      *report = dup(os.str());
      return m.ok ? CF_OK : CF_FAIL;
    }
    UniquenessCertificate u = certify_unique_differential(inst->c, second->c, grading, budget);
    os << "differentials equal: " << (u.equal ? "yes" : "no") << "\n";
    os << "filtered degree-preserving chain isomorphisms: " << u.filtered_isomorphisms << "\n";
    os << "brute-force comparison: "
       << (u.bruteforce == CompareOutcome::Isomorphic      ? "isomorphic"
           : u.bruteforce == CompareOutcome::NotIsomorphic ? "not isomorphic"
                                                            : "undecided")
       << "\n";
    if (u.distinguishing) {
      CESystem s1(inst->c), s2(second->c);
      os << "distinguishing " << describe_pair(s1, s2, u.distinguishing->first, u.distinguishing->second) << "\n";
    }
    os << "agreement: " << (u.agree ? "yes" : "no") << "\n";
    os << (u.equal ? "UNIQUE: same differential" : "DISTINCT: differentials differ") << "\n";
    *report = dup(os.str());
    if (!u.agree && u.bruteforce != CompareOutcome::BudgetExceeded) {
      return fail_with(CF_ERR_INTERNAL, "certifier and brute-force comparison disagree");
    }
    return u.equal ? CF_OK : CF_FAIL;
  });
}

}  // extern "C"
