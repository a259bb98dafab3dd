/* Command-line front end. Links only the public C API. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "bdl.h"

static void usage(FILE* out) {
  fputs(
      "usage:\n"
      "  bdl check <file> [limits]\n"
      "  bdl answer <file> --query <name> --mode plain|consistent|strong\n"
      "             [--no-nulls] [limits]\n"
      "             (--query also accepts an inline \"name(x) :- <formula>\")\n"
      "  bdl repairs <file> [limits]\n"
      "  bdl prove <file> --system bd|pbd|focl|lp|k3\n"
      "  bdl eval <file> --formula \"<text>\" [limits]\n"
      "limits:\n"
      "  --max-structures N   generic model enumeration ceiling\n"
      "  --max-universe N     fact-base subset enumeration ceiling (bits)\n"
      "  --max-additions N    atoms a repair search may add\n"
      "exit codes: 0 ok, 1 invalid proof, 2 parse error, 3 validation error,\n"
      "            4 resource ceiling exceeded\n",
      out);
}

struct options {
  const char* file;
  const char* query;
  const char* mode;
  const char* system;
  const char* formula;
  int no_nulls;
  unsigned long long max_structures;
  unsigned long max_universe;
  unsigned long max_additions;
};

static int parse_options(int argc, char** argv, struct options* opt) {
  memset(opt, 0, sizeof(*opt));
  for (int i = 0; i < argc; ++i) {
    const char* arg = argv[i];
    if (strcmp(arg, "--no-nulls") == 0) {
      opt->no_nulls = 1;
    } else if (strcmp(arg, "--query") == 0 && i + 1 < argc) {
      opt->query = argv[++i];
    } else if (strcmp(arg, "--mode") == 0 && i + 1 < argc) {
      opt->mode = argv[++i];
    } else if (strcmp(arg, "--system") == 0 && i + 1 < argc) {
      opt->system = argv[++i];
    } else if (strcmp(arg, "--formula") == 0 && i + 1 < argc) {
      opt->formula = argv[++i];
    } else if (strcmp(arg, "--max-structures") == 0 && i + 1 < argc) {
      opt->max_structures = strtoull(argv[++i], NULL, 10);
    } else if (strcmp(arg, "--max-universe") == 0 && i + 1 < argc) {
      opt->max_universe = strtoul(argv[++i], NULL, 10);
    } else if (strcmp(arg, "--max-additions") == 0 && i + 1 < argc) {
      opt->max_additions = strtoul(argv[++i], NULL, 10);
    } else if (arg[0] == '-') {
      fprintf(stderr, "bdl: unknown option '%s'\n", arg);
      return 0;
    } else if (!opt->file) {
      opt->file = arg;
    } else {
      fprintf(stderr, "bdl: unexpected argument '%s'\n", arg);
      return 0;
    }
  }
  return 1;
}

static int open_database(const struct options* opt, bdl_database** db) {
  int status;
  if (!opt->file) {
    fprintf(stderr, "bdl: missing database file\n");
    return BDL_VALIDATION_ERROR;
  }
  status = bdl_database_load(opt->file, db);
  if (status != BDL_OK) {
    fprintf(stderr, "bdl: %s\n", bdl_last_error());
    return status;
  }
  bdl_database_set_limits(*db, opt->max_structures,
                          (uint32_t)opt->max_universe,
                          (uint32_t)opt->max_additions);
  return BDL_OK;
}

static void emit(char* report, FILE* out) {
  if (report) {
    fputs(report, out);
    bdl_string_free(report);
  }
}

static int cmd_check(const struct options* opt) {
  bdl_database* db = NULL;
  char* report = NULL;
  int consistent = 0;
  int status = open_database(opt, &db);
  if (status != BDL_OK) return status;
  status = bdl_database_check(db, &consistent, &report);
  if (status != BDL_OK) fprintf(stderr, "bdl: %s\n", bdl_last_error());
  emit(report, stdout);
  bdl_database_free(db);
  return status;
}

static int cmd_answer(const struct options* opt) {
  bdl_database* db = NULL;
  char* report = NULL;
  char* notes = NULL;
  int mode;
  int status;
  if (!opt->query || !opt->mode) {
    fprintf(stderr, "bdl: answer needs --query and --mode\n");
    return BDL_VALIDATION_ERROR;
  }
  if (strcmp(opt->mode, "plain") == 0)
    mode = BDL_MODE_PLAIN;
  else if (strcmp(opt->mode, "consistent") == 0)
    mode = BDL_MODE_CONSISTENT;
  else if (strcmp(opt->mode, "strong") == 0)
    mode = BDL_MODE_STRONG;
  else {
    fprintf(stderr, "bdl: unknown mode '%s'\n", opt->mode);
    return BDL_VALIDATION_ERROR;
  }
  status = open_database(opt, &db);
  if (status != BDL_OK) return status;
  status = bdl_database_answer(db, opt->query, mode, !opt->no_nulls, &report,
                               &notes);
  if (status != BDL_OK) fprintf(stderr, "bdl: %s\n", bdl_last_error());
  emit(notes, stderr);
  emit(report, stdout);
  bdl_database_free(db);
  return status;
}

static int cmd_repairs(const struct options* opt) {
  bdl_database* db = NULL;
  char* report = NULL;
  char* notes = NULL;
  int status = open_database(opt, &db);
  if (status != BDL_OK) return status;
  status = bdl_database_repairs(db, &report, &notes);
  if (status != BDL_OK) fprintf(stderr, "bdl: %s\n", bdl_last_error());
  emit(notes, stderr);
  emit(report, stdout);
  bdl_database_free(db);
  return status;
}

static int cmd_prove(const struct options* opt) {
  char* report = NULL;
  int system;
  int status;
  if (!opt->file) {
    fprintf(stderr, "bdl: missing proof file\n");
    return BDL_VALIDATION_ERROR;
  }
  if (!opt->system) {
    fprintf(stderr, "bdl: prove needs --system\n");
    return BDL_VALIDATION_ERROR;
  }
  if (strcmp(opt->system, "bd") == 0)
    system = BDL_SYSTEM_BD;
  else if (strcmp(opt->system, "pbd") == 0)
    system = BDL_SYSTEM_PBD;
  else if (strcmp(opt->system, "focl") == 0)
    system = BDL_SYSTEM_FOCL;
  else if (strcmp(opt->system, "lp") == 0)
    system = BDL_SYSTEM_LP;
  else if (strcmp(opt->system, "k3") == 0)
    system = BDL_SYSTEM_K3;
  else {
    fprintf(stderr, "bdl: unknown system '%s'\n", opt->system);
    return BDL_VALIDATION_ERROR;
  }
  status = bdl_proof_check_file(opt->file, system, &report);
  if (status != BDL_OK && status != BDL_INVALID)
    fprintf(stderr, "bdl: %s\n", bdl_last_error());
  emit(report, stdout);
  return status;
}

static int cmd_eval(const struct options* opt) {
  bdl_database* db = NULL;
  char* report = NULL;
  int status;
  if (!opt->formula) {
    fprintf(stderr, "bdl: eval needs --formula\n");
    return BDL_VALIDATION_ERROR;
  }
  status = open_database(opt, &db);
  if (status != BDL_OK) return status;
  status = bdl_database_eval(db, opt->formula, &report);
  if (status != BDL_OK) fprintf(stderr, "bdl: %s\n", bdl_last_error());
  emit(report, stdout);
  bdl_database_free(db);
  return status;
}

int main(int argc, char** argv) {
  struct options opt;
  if (argc < 2) {
    usage(stderr);
    return BDL_VALIDATION_ERROR;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0 ||
      strcmp(argv[1], "help") == 0) {
    usage(stdout);
    return 0;
  }
  if (!parse_options(argc - 2, argv + 2, &opt)) return BDL_VALIDATION_ERROR;
  if (strcmp(argv[1], "check") == 0) return cmd_check(&opt);
  if (strcmp(argv[1], "answer") == 0) return cmd_answer(&opt);
  if (strcmp(argv[1], "repairs") == 0) return cmd_repairs(&opt);
  if (strcmp(argv[1], "prove") == 0) return cmd_prove(&opt);
  if (strcmp(argv[1], "eval") == 0) return cmd_eval(&opt);
  fprintf(stderr, "bdl: unknown command '%s'\n", argv[1]);
  usage(stderr);
  return BDL_VALIDATION_ERROR;
}
