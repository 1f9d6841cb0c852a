// urlvr-lab: experiment front end over the urlvr C API.
//
//   urlvr-lab run <config>        execute an experiment config
//   urlvr-lab validate <config>   parse-only check
//   urlvr-lab version             print the library version
//
// Exit codes: 0 success, 1 usage, 2 config parse error, 3 runtime failure.

#include <urlvr/urlvr.h>

#include <cstdio>
#include <cstring>

namespace {

void print_usage() {
  std::fprintf(stderr,
               "Usage: urlvr-lab <command> [args]\n"
               "Commands:\n"
               "  run <config>       run an experiment; writes trace.csv, summary.txt\n"
               "                     and optional plot.svg to the configured out_dir\n"
               "                     (URLVR_LAB_OUT overrides it)\n"
               "  validate <config>  parse the config and report problems\n"
               "  version            print the version\n");
}

int status_to_exit(urlvr_status status, const char* err) {
  switch (status) {
    case URLVR_OK:
      return 0;
    case URLVR_ERR_PARSE:
      std::fprintf(stderr, "config error: %s\n", err);
      return 2;
    case URLVR_ERR_INVALID_ARGUMENT:
    case URLVR_ERR_RUNTIME:
      std::fprintf(stderr, "error: %s\n", err);
      return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage();
    return 1;
  }
  const char* command = argv[1];
  char err[512] = {0};

  if (std::strcmp(command, "version") == 0) {
    std::printf("urlvr-lab %s\n", urlvr_version());
    return 0;
  }
  if (std::strcmp(command, "run") == 0 || std::strcmp(command, "validate") == 0) {
    if (argc != 3) {
      print_usage();
      return 1;
    }
    const bool run = std::strcmp(command, "run") == 0;
    const urlvr_status status = run ? urlvr_run_config(argv[2], err, sizeof(err))
                                    : urlvr_validate_config(argv[2], err, sizeof(err));
    if (status == URLVR_OK && !run) std::printf("ok\n");
    return status_to_exit(status, err);
  }

  std::fprintf(stderr, "unknown command: %s\n", command);
  print_usage();
  return 1;
}
