// hlr: exact constructions and checks for hom-Lie-Rinehart algebras given
// by structure constants.
//
// Usage:
//   hlr <command> <file> [key=value ...]
//   hlr fixtures <dir>
//
// Commands: check center perfect uce h2 ext-check ext-central split
//           compose tensor lift-aut lift-der compare-uce-tensor fixtures
//
// Exit codes: 0 ok, 1 violations found, 2 precondition refused,
//             3 parse/shape/usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hlr/cli.hpp"

namespace {

const char* usage =
    "usage: hlr <command> <file> [key=value ...]\n"
    "       hlr fixtures <dir>\n"
    "commands: check center perfect uce h2 ext-check ext-central split\n"
    "          compose tensor lift-aut lift-der compare-uce-tensor fixtures\n"
    "options:  name=<block>  module=<block>  n=<degree>  e1=<ext> e2=<ext>\n"
    "          self=<hlr>  lm=<action> ml=<action>  extension=<ext>\n"
    "          morphism=<block>  derivation=<block>\n";

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fputs(usage, stderr);
    return 3;
  }
  std::string command = argv[1];

  if (command == "fixtures") {
    std::ostringstream os;
    os << "command: fixtures\n";
    try {
      hlr::cli::cmd_fixtures(argv[2], os);
    } catch (const std::exception& e) {
      os << "status: refused\nreason: " << e.what() << '\n';
      std::fputs(os.str().c_str(), stdout);
      return 2;
    }
    std::fputs(os.str().c_str(), stdout);
    return 0;
  }

  std::ifstream in(argv[2], std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "hlr: cannot read %s\n", argv[2]);
    return 3;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  hlr::cli::Options opts;
  for (int i = 3; i < argc; ++i) {
    std::string arg = argv[i];
    auto eq = arg.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "hlr: bad option '%s' (expected key=value)\n%s", arg.c_str(), usage);
      return 3;
    }
    opts[arg.substr(0, eq)] = arg.substr(eq + 1);
  }

  hlr::cli::RunResult r = hlr::cli::run(command, buf.str(), opts);
  std::fputs(r.report.c_str(), stdout);
  return r.exit_code;
}
