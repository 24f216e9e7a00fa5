#include "submon/verdict.hpp"

namespace submon {

  std::string to_string(Outcome o) {
    switch (o) {
      case Outcome::member:
        return "member";
      case Outcome::non_member:
        return "non-member";
      case Outcome::unknown:
        return "unknown";
    }
    return "unknown";
  }

  std::string Verdict::witness_text() const {
    std::string out;
    for (std::size_t i : witness) {
      out += '(' + generators.at(i) + ')';
    }
    return out.empty() ? "1" : out;
  }

  std::string certified(std::string const& what) {
    return what + " [certified-complete]";
  }

  std::string semi_decision(std::string const& what, std::size_t budget) {
    return what + " [semi-decision @" + std::to_string(budget) + "]";
  }

}  // namespace submon
