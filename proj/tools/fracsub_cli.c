/* Command line front end for the fracsub shared library.
 *
 *   fracsub run  --config <path> [--out <dir>] [--threads <k>]
 *   fracsub emit --config <path> [--out <dir>] [--threads <k>]
 *
 * Exit codes: 0 all enabled checks pass, 1 configuration error,
 * 2 assumption violation, 3 non-convergence, 4 check failure.
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fracsub.h"

static void usage(FILE* to) {
  fprintf(to,
          "usage: fracsub <run|emit> --config PATH [--out DIR] [--threads K]\n"
          "\n"
          "  run    execute the enabled checks, write per-check CSVs and report.txt\n"
          "  emit   write plot data (decay shells, ladder gaps, trajectory) only\n");
}

int main(int argc, char** argv) {
  const char* config = NULL;
  const char* out = ".";
  int threads = 1;
  int emit = 0;

  if (argc < 2) {
    usage(stderr);
    return 1;
  }
  if (strcmp(argv[1], "run") == 0) {
    emit = 0;
  } else if (strcmp(argv[1], "emit") == 0) {
    emit = 1;
  } else if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(stdout);
    return 0;
  } else {
    fprintf(stderr, "fracsub: unknown subcommand '%s'\n", argv[1]);
    usage(stderr);
    return 1;
  }

  for (int i = 2; i < argc; ++i) {
    if (strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
      config = argv[++i];
    } else if (strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out = argv[++i];
    } else if (strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      threads = atoi(argv[++i]);
    } else if (strcmp(argv[i], "--help") == 0 || strcmp(argv[i], "-h") == 0) {
      usage(stdout);
      return 0;
    } else {
      fprintf(stderr, "fracsub: unknown or incomplete option '%s'\n", argv[i]);
      usage(stderr);
      return 1;
    }
  }
  if (config == NULL) {
    fprintf(stderr, "fracsub: --config is required\n");
    return 1;
  }
  if (threads < 1) {
    fprintf(stderr, "fracsub: --threads must be at least 1\n");
    return 1;
  }

  int exit_class = 0;
  fracsub_status st = emit ? fracsub_emit(config, out, threads, &exit_class)
                           : fracsub_run(config, out, threads, &exit_class);
  if (st != FRACSUB_OK) {
    fprintf(stderr, "fracsub: %s\n", fracsub_last_error());
  }
  return exit_class;
}
