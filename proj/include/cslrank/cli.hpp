#ifndef CSLRANK_CLI_HPP
#define CSLRANK_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace cslrank {

// Exit codes shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;  // refutation or violation, with evidence
inline constexpr int kExitInput = 2;    // unreadable or invalid input

struct Options {
  std::size_t trials = 64;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_rank;  // default min(4, n)
  std::string out;                      // empty: stdout
  bool parallel = false;
};

int run_analyze(const std::string& lattice_file, const Options& opt, std::ostream& out, std::ostream& err);
int run_classify(const std::string& map_file, const Options& opt, std::ostream& out, std::ostream& err);
int run_reconstruct(const std::string& map_file, const Options& opt, std::ostream& out, std::ostream& err);
int run_verify(const std::string& map_file, const std::string& impl_file, const Options& opt, std::ostream& out,
               std::ostream& err);
// name may be "all".
int run_demo(const std::string& name, const Options& opt, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to the verbs above.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cslrank

#endif  // CSLRANK_CLI_HPP
