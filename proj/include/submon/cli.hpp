#ifndef SUBMON_CLI_HPP_
#define SUBMON_CLI_HPP_

#include <string>
#include <vector>

namespace submon {

  namespace exit_code {
    constexpr int yes     = 0;  // member, or true
    constexpr int no      = 1;  // non-member, or false
    constexpr int unknown = 2;
    constexpr int error   = 3;  // usage, precondition or parse error
  }  // namespace exit_code

  struct CliResult {
    int         code = exit_code::error;
    std::string out;  // results
    std::string err;  // traces and diagnostics
  };

  // args excludes the program name: {"member", "--group", "S2", ...}.
  CliResult run(std::vector<std::string> const& args);

}  // namespace submon

#endif  // SUBMON_CLI_HPP_
