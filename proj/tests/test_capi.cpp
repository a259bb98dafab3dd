#include "doctest.h"

#include <cstring>
#include <string>

#include "bdl.h"

extern std::string g_data_dir;

namespace {

std::string take(char* s) {
  if (!s) return {};
  std::string out = s;
  bdl_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("c api: database lifecycle and answers") {
  std::string path = g_data_dir + "/trio_eq.db";
  bdl_database* db = nullptr;
  REQUIRE(bdl_database_load(path.c_str(), &db) == BDL_OK);

  char* report = nullptr;
  char* notes = nullptr;
  CHECK(bdl_database_answer(db, "q", BDL_MODE_PLAIN, 1, &report, &notes) ==
        BDL_OK);
  CHECK(take(report) == "a\n");
  CHECK(notes == nullptr);

  CHECK(bdl_database_answer(db, "q", BDL_MODE_CONSISTENT, 1, &report, &notes) ==
        BDL_OK);
  CHECK(take(report).empty());

  int consistent = 1;
  CHECK(bdl_database_check(db, &consistent, &report) == BDL_OK);
  CHECK(consistent == 0);
  std::string check_report = take(report);
  CHECK(check_report.find("inconsistent") == 0);
  CHECK(check_report.find("conflict:") != std::string::npos);

  CHECK(bdl_database_repairs(db, &report, &notes) == BDL_OK);
  std::string repair_report = take(report);
  CHECK(repair_report ==
        "repair: P(a,b,nil) P(b,c,d)\n"
        "repair: P(a,nil,c) P(b,c,d)\n"
        "repair: P(a,nil,d) P(b,c,d)\n");

  CHECK(bdl_database_eval(db, "P(a,b,nil)", &report) == BDL_OK);
  std::string eval_report = take(report);
  CHECK(eval_report.find("model 0: t") == 0);

  CHECK(bdl_database_answer(db, "nope", BDL_MODE_PLAIN, 1, &report, &notes) ==
        BDL_VALIDATION_ERROR);
  CHECK(std::string(bdl_last_error()).find("unknown query") !=
        std::string::npos);

  bdl_database_free(db);
}

TEST_CASE("c api: inline queries") {
  std::string path = g_data_dir + "/trio_eq.db";
  bdl_database* db = nullptr;
  REQUIRE(bdl_database_load(path.c_str(), &db) == BDL_OK);
  char* report = nullptr;
  CHECK(bdl_database_answer(db, "firsts(x) :- exists y,z. P(x,y,z)",
                            BDL_MODE_PLAIN, 1, &report, nullptr) == BDL_OK);
  CHECK(take(report) == "a\nb\n");
  CHECK(bdl_database_answer(db, "broken(x) :- P(x)", BDL_MODE_PLAIN, 1,
                            &report, nullptr) == BDL_PARSE_ERROR);
  bdl_database_free(db);
}

TEST_CASE("c api: null filtering") {
  bdl_database* db = nullptr;
  REQUIRE(bdl_database_parse(
              "const a\npred P/1\nfact P(nil)\nfact P(a)\nquery all(x) :- P(x)\n",
              &db) == BDL_OK);
  char* report = nullptr;
  CHECK(bdl_database_answer(db, "all", BDL_MODE_PLAIN, 1, &report, nullptr) ==
        BDL_OK);
  CHECK(take(report) == "a\nnil\n");
  CHECK(bdl_database_answer(db, "all", BDL_MODE_PLAIN, 0, &report, nullptr) ==
        BDL_OK);
  CHECK(take(report) == "a\n");
  bdl_database_free(db);
}

TEST_CASE("c api: proof checking") {
  std::string good = g_data_dir + "/proofs/p01_id.proof";
  char* report = nullptr;
  CHECK(bdl_proof_check_file(good.c_str(), BDL_SYSTEM_BD, &report) == BDL_OK);
  CHECK(take(report) == "valid\n");

  std::string focl_only = g_data_dir + "/proofs/p21_focl_notr.proof";
  CHECK(bdl_proof_check_file(focl_only.c_str(), BDL_SYSTEM_FOCL, &report) ==
        BDL_OK);
  CHECK(take(report) == "valid\n");
  CHECK(bdl_proof_check_file(focl_only.c_str(), BDL_SYSTEM_BD, &report) ==
        BDL_INVALID);
  std::string text = take(report);
  CHECK(text.find("invalid at step 2") == 0);

  CHECK(bdl_proof_check_file("/nonexistent.proof", BDL_SYSTEM_BD, &report) ==
        BDL_VALIDATION_ERROR);
}

TEST_CASE("c api: parse errors carry the right status") {
  bdl_database* db = nullptr;
  CHECK(bdl_database_parse("const a\npred P/1\nfact P(\n", &db) ==
        BDL_PARSE_ERROR);
}
