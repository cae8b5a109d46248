#include "divratio.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "core/construct.hpp"
#include "core/errors.hpp"
#include "core/jsonio.hpp"
#include "core/primality.hpp"
#include "core/selftest.hpp"
#include "core/witness.hpp"

struct dr_rational {
  divr::Rational v;
};

struct dr_sieve {
  divr::Sieve sieve;
  divr::Decomposer decomposer;

  explicit dr_sieve(divr::Sieve s)
      : sieve(std::move(s)), decomposer(sieve) {}
};

struct dr_word {
  divr::GenWord w;
};

struct dr_params {
  divr::SieveParams p;
};

struct dr_census {
  divr::RatioCensus c;
};

namespace {

thread_local std::string g_last_error;

dr_status status_from(divr::ErrorKind kind) {
  switch (kind) {
    case divr::ErrorKind::domain:
      return DR_EDOMAIN;
    case divr::ErrorKind::capacity:
      return DR_ECAPACITY;
    case divr::ErrorKind::bound:
      return DR_EBOUND;
    case divr::ErrorKind::precondition:
      return DR_EPRECONDITION;
    case divr::ErrorKind::counterexample:
      return DR_ECOUNTEREXAMPLE;
    case divr::ErrorKind::internal:
      return DR_EINTERNAL;
  }
  return DR_EINTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dr_status fail_invalid(const char* what) {
  g_last_error = what;
  return DR_EINVAL;
}

// Runs fn inside the exception barrier; fn returns the status for the
// success path (usually DR_OK).
template <typename Fn>
dr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const divr::Error& e) {
    g_last_error = e.what();
    return status_from(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DR_ENOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DR_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DR_EINTERNAL;
  }
}

const char* pair_literal(divr::Pair p) {
  switch (p) {
    case divr::Pair::p12:
      return "1-2";
    case divr::Pair::p23:
      return "2-3";
    case divr::Pair::p13:
      return "1-3";
  }
  return "?";
}

}  // namespace

extern "C" {

const char* dr_version(void) { return DR_VERSION_STRING; }

const char* dr_last_error(void) { return g_last_error.c_str(); }

void dr_string_free(char* s) { std::free(s); }

/* ---- exact rationals ---------------------------------------------------- */

dr_status dr_rational_parse(const char* text, dr_rational** out) {
  if (text == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = new dr_rational{divr::Rational::parse(text)};
    return DR_OK;
  });
}

dr_status dr_rational_format(const dr_rational* q, char** out) {
  if (q == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(q->v.str());
    return DR_OK;
  });
}

dr_status dr_rational_mul(const dr_rational* a, const dr_rational* b,
                          dr_rational** out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    *out = new dr_rational{a->v * b->v};
    return DR_OK;
  });
}

dr_status dr_rational_inverse(const dr_rational* q, dr_rational** out) {
  if (q == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = new dr_rational{q->v.inverse()};
    return DR_OK;
  });
}

int dr_rational_equal(const dr_rational* a, const dr_rational* b) {
  if (a == nullptr || b == nullptr) return 0;
  return a->v == b->v ? 1 : 0;
}

void dr_rational_free(dr_rational* q) { delete q; }

/* ---- sieve and factoring ------------------------------------------------ */

dr_status dr_sieve_create(uint64_t limit, dr_sieve** out) {
  if (out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = new dr_sieve(limit == 0 ? divr::Sieve::without_table()
                                   : divr::Sieve(limit));
    return DR_OK;
  });
}

void dr_sieve_free(dr_sieve* s) { delete s; }

dr_status dr_factorize(const dr_sieve* s, uint64_t n, char** out) {
  if (s == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(s->sieve.factorize(n).str());
    return DR_OK;
  });
}

dr_status dr_divisor_count(const dr_sieve* s, uint64_t n, uint64_t* out) {
  if (s == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = s->sieve.divisor_count(n);
    return DR_OK;
  });
}

int dr_is_prime(uint64_t n) { return divr::is_prime64(n) ? 1 : 0; }

dr_status dr_is_distinct_semiprime_above(const dr_sieve* s, uint64_t n,
                                         uint64_t bound, int* out) {
  if (s == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = s->sieve.is_distinct_semiprime_above(n, bound) ? 1 : 0;
    return DR_OK;
  });
}

dr_status dr_ratio_at(const dr_sieve* s, uint64_t n, char** out) {
  if (s == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(divr::ratio_at(n, s->sieve).str());
    return DR_OK;
  });
}

/* ---- generator words ---------------------------------------------------- */

dr_status dr_decompose(dr_sieve* s, const char* target, dr_word** out) {
  if (s == nullptr || target == nullptr || out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    *out = new dr_word{
        s->decomposer.decompose(divr::Rational::parse(target))};
    return DR_OK;
  });
}

dr_status dr_word_format(const dr_word* w, char** out) {
  if (w == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(w->w.str());
    return DR_OK;
  });
}

dr_status dr_word_value(const dr_word* w, char** out) {
  if (w == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(w->w.value().str());
    return DR_OK;
  });
}

dr_status dr_word_term_count(const dr_word* w, size_t* out) {
  if (w == nullptr || out == nullptr) return fail_invalid("NULL argument");
  *out = w->w.terms().size();
  return DR_OK;
}

dr_status dr_word_term(const dr_word* w, size_t index, uint64_t* x,
                       uint64_t* y, int64_t* exponent) {
  if (w == nullptr || x == nullptr || y == nullptr || exponent == nullptr) {
    return fail_invalid("NULL argument");
  }
  if (index >= w->w.terms().size()) {
    g_last_error = "term index out of range";
    return DR_EDOMAIN;
  }
  const divr::WordTerm& t = w->w.terms()[index];
  *x = t.gen.x;
  *y = t.gen.y;
  *exponent = t.exponent;
  return DR_OK;
}

void dr_word_free(dr_word* w) { delete w; }

dr_status dr_decompose_document(dr_sieve* s, const char* target,
                                char** json_out) {
  if (s == nullptr || target == nullptr || json_out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    divr::Rational q = divr::Rational::parse(target);
    divr::GenWord w = s->decomposer.decompose(q);
    *json_out = dup_string(divr::decompose_document(q, w).dump(2));
    return DR_OK;
  });
}

/* ---- instance construction ---------------------------------------------- */

dr_status dr_build(dr_sieve* s, const char* target, dr_params** out) {
  if (s == nullptr || target == nullptr || out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    divr::BuildResult build = divr::build_params(
        divr::Rational::parse(target), s->decomposer, s->sieve);
    *out = new dr_params{std::move(build.params)};
    return DR_OK;
  });
}

dr_status dr_params_to_json(const dr_params* p, char** out) {
  if (p == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(divr::params_to_json(p->p).dump(2));
    return DR_OK;
  });
}

dr_status dr_params_from_json(const char* json, dr_params** out) {
  if (json == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    divr::ordered_json doc =
        divr::ordered_json::parse(json, nullptr, false);
    if (doc.is_discarded()) {
      divr::raise(divr::ErrorKind::domain, "malformed JSON instance");
    }
    *out = new dr_params{divr::params_from_json(doc)};
    return DR_OK;
  });
}

dr_status dr_params_validate(const dr_params* p, char** violation_out) {
  if (p == nullptr || violation_out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    if (auto v = divr::validate_params(p->p)) {
      *violation_out = dup_string(v->condition + ": " + v->detail);
    } else {
      *violation_out = nullptr;
    }
    return DR_OK;
  });
}

dr_status dr_predicted_ratios(const dr_params* p, char** out) {
  if (p == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    divr::RatioTriple t = divr::predicted_ratios(p->p);
    divr::ordered_json doc;
    doc["1-2"] = t.pair12.str();
    doc["2-3"] = t.pair23.str();
    doc["1-3"] = t.pair13.str();
    *out = dup_string(doc.dump(2));
    return DR_OK;
  });
}

dr_status dr_group_value(const dr_params* p, char** out) {
  if (p == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(divr::predicted_group_value(p->p).str());
    return DR_OK;
  });
}

dr_status dr_build_document(dr_sieve* s, const char* target, char** json_out) {
  if (s == nullptr || target == nullptr || json_out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    divr::BuildResult build = divr::build_params(
        divr::Rational::parse(target), s->decomposer, s->sieve);
    *json_out = dup_string(divr::build_document(build, s->sieve).dump(2));
    return DR_OK;
  });
}

void dr_params_free(dr_params* p) { delete p; }

/* ---- witness scanning --------------------------------------------------- */

dr_status dr_witness_scan(const dr_sieve* s, const dr_params* p,
                          uint64_t x_lo, uint64_t x_hi, uint32_t threads,
                          dr_hit_callback cb, void* user,
                          dr_scan_summary* summary_out) {
  if (s == nullptr || p == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    divr::ScanResult result =
        divr::scan_witnesses(p->p, x_lo, x_hi, s->sieve, threads);
    if (summary_out != nullptr) {
      summary_out->x_lo = result.summary.x_lo;
      summary_out->x_hi = result.summary.x_hi;
      for (std::size_t k = 0; k < 3; ++k) {
        summary_out->hits[k] = result.summary.pairs[k].hits;
        summary_out->x_top[k] = result.summary.pairs[k].x_top;
        summary_out->capped[k] = result.summary.pairs[k].capped ? 1 : 0;
      }
      summary_out->total_hits = result.summary.total_hits;
      summary_out->conclusive = result.summary.total_hits > 0 ? 1 : 0;
    }
    if (cb != nullptr) {
      for (const divr::WitnessHit& h : result.hits) {
        std::string ratio = h.ratio.str();
        std::string predicted = h.predicted.str();
        dr_hit hit{h.x,    pair_literal(h.pair), h.n,
                   h.d_n,  h.d_n1,               ratio.c_str(),
                   predicted.c_str(),            h.matched ? 1 : 0};
        if (cb(&hit, user) != 0) break;
      }
    }
    return DR_OK;
  });
}

/* ---- ratio census ------------------------------------------------------- */

dr_status dr_ratio_scan(const dr_sieve* s, const char* target, uint64_t n_max,
                        uint64_t sample_cap, uint32_t threads,
                        dr_census** out) {
  if (s == nullptr || target == nullptr || out == nullptr) {
    return fail_invalid("NULL argument");
  }
  return guarded([&] {
    *out = new dr_census{divr::scan_ratio_hits(divr::Rational::parse(target),
                                               n_max, s->sieve, sample_cap,
                                               threads)};
    return DR_OK;
  });
}

dr_status dr_census_count(const dr_census* c, uint64_t* out) {
  if (c == nullptr || out == nullptr) return fail_invalid("NULL argument");
  *out = c->c.count;
  return DR_OK;
}

dr_status dr_census_first(const dr_census* c, int* has_first,
                          uint64_t* first) {
  if (c == nullptr || has_first == nullptr || first == nullptr) {
    return fail_invalid("NULL argument");
  }
  *has_first = c->c.first_n.has_value() ? 1 : 0;
  *first = c->c.first_n.value_or(0);
  return DR_OK;
}

dr_status dr_census_sample_count(const dr_census* c, size_t* out) {
  if (c == nullptr || out == nullptr) return fail_invalid("NULL argument");
  *out = c->c.sample.size();
  return DR_OK;
}

dr_status dr_census_sample_at(const dr_census* c, size_t index,
                              uint64_t* out) {
  if (c == nullptr || out == nullptr) return fail_invalid("NULL argument");
  if (index >= c->c.sample.size()) {
    g_last_error = "sample index out of range";
    return DR_EDOMAIN;
  }
  *out = c->c.sample[index];
  return DR_OK;
}

dr_status dr_census_to_json(const dr_census* c, char** out) {
  if (c == nullptr || out == nullptr) return fail_invalid("NULL argument");
  return guarded([&] {
    *out = dup_string(divr::census_to_json(c->c).dump(2));
    return DR_OK;
  });
}

void dr_census_free(dr_census* c) { delete c; }

/* ---- self test ----------------------------------------------------------- */

dr_status dr_selftest(int corrupt_spf_entry, char** json_report,
                      int* all_passed) {
  return guarded([&] {
    divr::SelfTestReport report = divr::run_selftest(corrupt_spf_entry != 0);
    if (all_passed != nullptr) *all_passed = report.all_passed() ? 1 : 0;
    if (json_report != nullptr) {
      divr::ordered_json doc;
      doc["command"] = "selftest";
      divr::ordered_json checks = divr::ordered_json::array();
      for (const divr::SelfTestCheck& c : report.checks) {
        divr::ordered_json one;
        one["name"] = c.name;
        one["passed"] = c.passed;
        one["detail"] = c.detail;
        checks.push_back(std::move(one));
      }
      doc["checks"] = std::move(checks);
      doc["all_passed"] = report.all_passed();
      *json_report = dup_string(doc.dump(2));
    }
    return DR_OK;
  });
}

} /* extern "C" */
