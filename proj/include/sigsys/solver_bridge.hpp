#ifndef SIGSYS_SOLVER_BRIDGE_HPP
#define SIGSYS_SOLVER_BRIDGE_HPP

// Runs an external QDIMACS solver. The command template receives the
// instance path in place of "{file}".

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace sigsys {

class SolverBridgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverRun {
  bool valid = false;
  int exit_status = 0;
  std::string output;
};

// Verdict from solver output: an "s cnf 0|1" line, else a SAT/UNSAT style
// token, else the exit status 10 (true) / 20 (false).
inline std::optional<bool> interpret_solver_output(const std::string& output, int exit_status) {
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string s, cnf;
    int v = -1;
    if (row >> s >> cnf >> v && s == "s" && cnf == "cnf" && (v == 0 || v == 1)) return v == 1;
  }
  std::istringstream words(output);
  std::string w;
  while (words >> w) {
    for (auto& ch : w) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (w == "SAT" || w == "SATISFIABLE" || w == "TRUE" || w == "VALID") return true;
    if (w == "UNSAT" || w == "UNSATISFIABLE" || w == "FALSE" || w == "INVALID") return false;
  }
  if (exit_status == 10) return true;
  if (exit_status == 20) return false;
  return std::nullopt;
}

inline SolverRun run_external_solver(const std::string& qdimacs, const std::string& command_template) {
  const auto at = command_template.find("{file}");
  if (at == std::string::npos) throw SolverBridgeError("solver command must contain {file}");

  std::string path = (std::filesystem::temp_directory_path() / "sigsys-XXXXXX.qdimacs").string();
  const int fd = ::mkstemps(path.data(), 8);
  if (fd < 0) throw SolverBridgeError("cannot create temporary instance file");
  ::close(fd);
  struct Cleanup {
    std::string p;
    ~Cleanup() { std::filesystem::remove(p); }
  } cleanup{path};
  {
    std::ofstream out(path, std::ios::binary);
    out << qdimacs;
    if (!out) throw SolverBridgeError("cannot write temporary instance file");
  }

  std::string command = command_template;
  command.replace(at, 6, "'" + path + "'");
  command += " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw SolverBridgeError("cannot launch solver: " + command_template);
  SolverRun run;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) run.output.append(buf, n);
  const int status = ::pclose(pipe);
  if (status == -1) throw SolverBridgeError("solver did not terminate normally");
  run.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (run.exit_status == 127) throw SolverBridgeError("solver command not found: " + command_template);
  const auto verdict = interpret_solver_output(run.output, run.exit_status);
  if (!verdict) throw SolverBridgeError("unrecognized solver output (exit status " + std::to_string(run.exit_status) + ")");
  run.valid = *verdict;
  return run;
}

}  // namespace sigsys

#endif  // SIGSYS_SOLVER_BRIDGE_HPP
