#include "bdl.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "database.hpp"
#include "proof.hpp"
#include "query.hpp"

struct bdl_database {
  bdl::Database db;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(int code, const std::string& message) {
  t_last_error = message;
  return code;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const bdl::ParseError& e) {
    std::string message = e.what();
    if (e.position > 0)
      message += " (at offset " + std::to_string(e.position) + ")";
    return fail(BDL_PARSE_ERROR, message);
  } catch (const bdl::ResourceLimitError& e) {
    return fail(BDL_RESOURCE_LIMIT, e.what());
  } catch (const bdl::ValidationError& e) {
    return fail(BDL_VALIDATION_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(BDL_VALIDATION_ERROR, e.what());
  }
}

const bdl::Query* find_query(const bdl::Database& db, const char* name) {
  auto it = db.queries.find(name ? name : "");
  return it == db.queries.end() ? nullptr : &it->second;
}

bool tuple_has_nil(const bdl::AnswerTuple& t) {
  for (const auto& c : t)
    if (c == bdl::kNil) return true;
  return false;
}

}  // namespace

extern "C" {

const char* bdl_last_error(void) { return t_last_error.c_str(); }

void bdl_string_free(char* s) { std::free(s); }

int bdl_database_load(const char* path, bdl_database** out) {
  if (!path || !out) return fail(BDL_VALIDATION_ERROR, "null argument");
  return guarded([&] {
    auto handle = new bdl_database{bdl::load_database_file(path)};
    *out = handle;
    return BDL_OK;
  });
}

int bdl_database_parse(const char* text, bdl_database** out) {
  if (!text || !out) return fail(BDL_VALIDATION_ERROR, "null argument");
  return guarded([&] {
    auto handle = new bdl_database{bdl::parse_database_text(text)};
    *out = handle;
    return BDL_OK;
  });
}

void bdl_database_free(bdl_database* db) { delete db; }

int bdl_database_set_limits(bdl_database* db, uint64_t max_structures,
                            uint32_t max_basis, uint32_t max_additions) {
  if (!db) return fail(BDL_VALIDATION_ERROR, "null database");
  if (max_structures) db->db.limits.max_structures = max_structures;
  // Subset enumerations walk 2^max_basis masks; cap the exponent.
  if (max_basis) db->db.limits.max_basis = max_basis > 30 ? 30 : max_basis;
  if (max_additions) db->db.limits.max_additions = max_additions;
  return BDL_OK;
}

int bdl_database_check(bdl_database* db, int* consistent, char** report) {
  if (!db) return fail(BDL_VALIDATION_ERROR, "null database");
  return guarded([&] {
    bdl::ConsistencyReport r;
    bool ok = bdl::is_consistent_db(db->db, &r);
    if (consistent) *consistent = ok ? 1 : 0;
    if (report) {
      std::ostringstream out;
      out << (ok ? "consistent" : "inconsistent") << "\n";
      if (!ok) {
        if (r.needs_additions) {
          out << "conflict: the constraints cannot be met by any sub-base\n";
        } else if (!r.conflict.empty()) {
          out << "conflict:";
          for (const auto& f : r.conflict) out << ' ' << bdl::print_fact(f);
          out << "\n";
        }
        if (r.constraints_unsatisfiable_with_theory)
          out << "note: the constraints hold in no model of the relational "
                 "theory; a purely proof-theoretic consistency check would "
                 "be vacuous here\n";
      }
      *report = dup_string(out.str());
    }
    return BDL_OK;
  });
}

int bdl_database_answer(bdl_database* db, const char* query_name, int mode,
                        int include_nulls, char** report, char** notes) {
  if (!db) return fail(BDL_VALIDATION_ERROR, "null database");
  return guarded([&] {
    // Either the name of a query from the database file, or a whole inline
    // declaration "name(x1,...,xn) :- <formula>".
    bdl::Query inline_query;
    const bdl::Query* q = nullptr;
    if (query_name && std::strstr(query_name, ":-")) {
      inline_query = bdl::parse_query_declaration(db->db.lang.signature(),
                                                  query_name);
      q = &inline_query;
    } else {
      q = find_query(db->db, query_name);
    }
    if (!q)
      return fail(BDL_VALIDATION_ERROR,
                  std::string("unknown query '") +
                      (query_name ? query_name : "") + "'");
    std::vector<bdl::AnswerTuple> tuples;
    std::string note_text;
    switch (mode) {
      case BDL_MODE_PLAIN:
        tuples = bdl::answers(db->db, *q);
        break;
      case BDL_MODE_CONSISTENT:
        tuples = bdl::consistent_answers(db->db, *q);
        break;
      case BDL_MODE_STRONG: {
        bdl::StrongAnswerResult r = bdl::strongly_consistent_answers(db->db, *q);
        tuples = std::move(r.tuples);
        if (r.vacuous)
          note_text +=
              "note: no repairs exist; every tuple qualifies vacuously\n";
        if (r.vacuous && r.additions_capped)
          note_text +=
              "note: the repair search adds at most the configured number of "
              "atoms (--max-additions)\n";
        break;
      }
      default:
        return fail(BDL_VALIDATION_ERROR, "unknown answer mode");
    }
    std::ostringstream out;
    for (const auto& tuple : tuples) {
      if (!include_nulls && tuple_has_nil(tuple)) continue;
      out << bdl::print_answer_tuple(tuple) << "\n";
    }
    if (report) *report = dup_string(out.str());
    if (notes) *notes = note_text.empty() ? nullptr : dup_string(note_text);
    return BDL_OK;
  });
}

int bdl_database_repairs(bdl_database* db, char** report, char** notes) {
  if (!db) return fail(BDL_VALIDATION_ERROR, "null database");
  return guarded([&] {
    bdl::RepairResult r = bdl::repairs(db->db);
    std::ostringstream out;
    for (const auto& base : r.repairs) {
      out << "repair:";
      for (const auto& f : base) out << ' ' << bdl::print_fact(f);
      out << "\n";
    }
    std::string note_text;
    if (r.repairs.empty()) {
      note_text = "note: no repairs found";
      if (r.additions_capped)
        note_text += " within the addition budget (--max-additions)";
      note_text += "\n";
    }
    if (report) *report = dup_string(out.str());
    if (notes) *notes = note_text.empty() ? nullptr : dup_string(note_text);
    return BDL_OK;
  });
}

int bdl_database_eval(bdl_database* db, const char* formula, char** report) {
  if (!db) return fail(BDL_VALIDATION_ERROR, "null database");
  if (!formula) return fail(BDL_VALIDATION_ERROR, "null formula");
  return guarded([&] {
    bdl::Formula f = bdl::parse_formula(formula, db->db.lang.signature());
    if (!bdl::free_vars(f).empty())
      return fail(BDL_VALIDATION_ERROR,
                  "eval expects a closed formula (no free variables)");
    std::size_t n = db->db.basis.size();
    if (n > db->db.limits.max_basis)
      return fail(BDL_RESOURCE_LIMIT, "basis too large for model enumeration");
    std::ostringstream out;
    bdl::Assignment empty;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      bdl::Structure s = bdl::canonical_structure(db->db.lang, db->db.basis, mask);
      out << "model " << mask << ": "
          << bdl::tv_letter(s.eval_formula(empty, f)) << "\n";
    }
    if (report) *report = dup_string(out.str());
    return BDL_OK;
  });
}

int bdl_proof_check_file(const char* path, int system, char** report) {
  if (!path) return fail(BDL_VALIDATION_ERROR, "null path");
  return guarded([&] {
    bdl::RuleSystem rule_system;
    switch (system) {
      case BDL_SYSTEM_BD:
        rule_system = bdl::RuleSystem::BD;
        break;
      case BDL_SYSTEM_PBD:
        rule_system = bdl::RuleSystem::PBD;
        break;
      case BDL_SYSTEM_FOCL:
        rule_system = bdl::RuleSystem::FOCL;
        break;
      case BDL_SYSTEM_LP:
        rule_system = bdl::RuleSystem::LPish;
        break;
      case BDL_SYSTEM_K3:
        rule_system = bdl::RuleSystem::K3ish;
        break;
      default:
        return fail(BDL_VALIDATION_ERROR, "unknown proof system");
    }
    std::ifstream in(path);
    if (!in)
      return fail(BDL_VALIDATION_ERROR,
                  std::string("cannot open proof file '") + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    bdl::ProofFile file = bdl::parse_proof_file(buffer.str());
    bdl::CheckResult result =
        bdl::check_derivation(rule_system, file.derivation, file.hypotheses);
    if (result.ok) {
      if (report) *report = dup_string("valid\n");
      return BDL_OK;
    }
    std::ostringstream out;
    out << "invalid at step " << result.failed_step << ": " << result.reason
        << "\n";
    if (report) *report = dup_string(out.str());
    t_last_error = out.str();
    return BDL_INVALID;
  });
}

}  // extern "C"
